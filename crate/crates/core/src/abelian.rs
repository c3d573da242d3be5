//! Finitely generated abelian groups in invariant-factor form.
//!
//! Every computation in this crate reports its answer as an [`AbelianGroup`]:
//! a free rank plus a divisor chain `d_1 | d_2 | … | d_r` with every `d_i ≥ 2`.
//! The form is canonical, so two groups are isomorphic exactly when they
//! compare equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{coprime_base, factor_u64, split_power};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z_order`; the trivial group when `order` is 1.
    pub fn cyclic(order: impl Into<BigUint>) -> Result<Self> {
        let order: BigUint = order.into();
        Self::canonicalize([BigInt::from(order)])
    }

    /// Invariant-factor form of `Z_{c_1} ⊕ … ⊕ Z_{c_k}`.
    ///
    /// The cyclic orders are split over a pairwise coprime base (gcd
    /// refinement), each base element contributes a partition of exponents, and
    /// the sorted partitions are zipped column-wise into the divisor chain.
    /// Orders equal to 1 vanish; zero or negative orders are rejected.
    pub fn canonicalize<I, T>(cyclic_orders: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut orders = Vec::new();
        for c in cyclic_orders {
            let c: BigInt = c.into();
            match c.sign() {
                Sign::Plus => orders.push(c.magnitude().clone()),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "cyclic order must be positive, got {c}"
                    )))
                }
            }
        }
        Ok(Self::with_free_rank(0, &orders))
    }

    /// Same as [`canonicalize`](Self::canonicalize) for inputs already known
    /// to be positive, with an explicit free rank.
    pub(crate) fn with_free_rank(free_rank: usize, orders: &[BigUint]) -> Self {
        let base = coprime_base(orders);
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(base.len());
        let mut width = 0;
        for b in &base {
            let mut exps: Vec<u32> = orders
                .iter()
                .map(|c| split_power(c, b).0)
                .filter(|&e| e > 0)
                .collect();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            width = width.max(exps.len());
            columns.push(exps);
        }
        // column i of every base element lands in factor (width - 1 - i)
        let mut factors = vec![BigUint::one(); width];
        for (b, exps) in base.iter().zip(&columns) {
            for (i, &e) in exps.iter().enumerate() {
                factors[width - 1 - i] *= b.pow(e);
            }
        }
        Self {
            free_rank,
            invariant_factors: factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of elements; fails for groups with a free part.
    pub fn order(&self) -> Result<BigUint> {
        if self.free_rank > 0 {
            return Err(Error::InfiniteOrder);
        }
        Ok(self.invariant_factors.iter().product())
    }

    /// Largest element order of the torsion part (1 for a torsion-free group).
    pub fn exponent(&self) -> BigUint {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigUint::one)
    }

    /// The torsion subgroup, i.e. the group with its free rank dropped.
    pub fn torsion(&self) -> Self {
        Self {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigUint> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        Self::with_free_rank(self.free_rank + other.free_rank, &orders)
    }

    /// Number of elements of each order, computed from the invariant factors.
    ///
    /// The count of elements whose order divides `t` is `∏ gcd(d_i, t)`; exact
    /// orders follow by Möbius inversion over the divisors of the exponent.
    pub fn order_statistics(&self) -> Result<BTreeMap<u64, u64>> {
        if self.free_rank > 0 {
            return Err(Error::InfiniteOrder);
        }
        let factors: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidArgument("invariant factor exceeds 64 bits".into()))?;
        let exponent = factors.last().copied().unwrap_or(1);
        let primes = factor_u64(exponent);
        let dividing = |t: u64| -> u64 { factors.iter().map(|&d| d.gcd(&t)).product() };
        let mut out = BTreeMap::new();
        for t in divisors(&primes) {
            // μ-weighted sum over the squarefree divisors of t's radical
            let tp: Vec<u64> = primes
                .iter()
                .map(|&(p, _)| p)
                .filter(|p| t % p == 0)
                .collect();
            let mut exact: i128 = 0;
            for mask in 0u32..(1 << tp.len()) {
                let mut q = 1;
                for (i, p) in tp.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        q *= p;
                    }
                }
                let term = dividing(t / q) as i128;
                exact += if mask.count_ones() % 2 == 0 {
                    term
                } else {
                    -term
                };
            }
            if exact > 0 {
                out.insert(t, exact as u64);
            }
        }
        Ok(out)
    }

    /// Rebuilds the unique finite abelian group with the given element-order
    /// counts.
    ///
    /// For each prime `p` the number `N_k` of elements of order dividing `p^k`
    /// equals `p^{Σ_i min(λ_i, k)}` where `λ` is the `p`-part partition, so the
    /// conjugate partition is read off successive differences of `log_p N_k`.
    pub fn from_order_statistics(counts: &BTreeMap<u64, u64>) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedStatistics(m));
        if counts.get(&1) != Some(&1) {
            return bad("exactly one element of order 1 is required".into());
        }
        if counts.contains_key(&0) {
            return bad("order 0 is not an element order".into());
        }
        let total: u64 = counts.values().sum();
        let mut orders = Vec::new();
        for (p, _) in factor_u64(total) {
            let mut prev_exp = 0u32;
            let mut conjugate = Vec::new();
            for k in 1.. {
                let pk = match p.checked_pow(k) {
                    Some(v) => v,
                    None => break,
                };
                let n_k: u64 = counts
                    .iter()
                    .filter(|(&o, _)| pk % o == 0)
                    .map(|(_, &c)| c)
                    .sum();
                let exp = match exact_log(n_k, p) {
                    Some(e) => e,
                    None => {
                        return bad(format!(
                            "{n_k} elements of {p}-power order is not a power of {p}"
                        ))
                    }
                };
                if exp == prev_exp {
                    break;
                }
                conjugate.push(exp - prev_exp);
                prev_exp = exp;
            }
            if conjugate.windows(2).any(|w| w[1] > w[0]) {
                return bad(format!("{p}-primary counts do not form a partition"));
            }
            // conjugate[k-1] = number of parts >= k
            let parts = conjugate.first().copied().unwrap_or(0);
            for i in 0..parts {
                let len = conjugate.iter().filter(|&&c| c > i).count() as u32;
                orders.push(BigUint::from(p).pow(len));
            }
        }
        let group = Self::with_free_rank(0, &orders);
        if group.order_statistics()? != *counts {
            return bad("no abelian group has these element-order counts".into());
        }
        Ok(group)
    }
}

fn exact_log(mut n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

fn divisors(primes: &[(u64, u32)]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for &d in &out {
            let mut q = d;
            for _ in 0..=e {
                next.push(q);
                q *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

impl fmt::Display for AbelianGroup {
    /// `0` for the trivial group, otherwise e.g. `Z^2 ⊕ Z_2 ⊕ Z_12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..]
                .iter()
                .take_while(|x| *x == d)
                .count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    free_rank: usize,
    invariant_factors: Vec<String>,
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson {
            free_rank: self.free_rank,
            invariant_factors: self
                .invariant_factors
                .iter()
                .map(|d| d.to_string())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GroupJson::deserialize(d)?;
        let factors = raw
            .invariant_factors
            .iter()
            .map(|s| s.parse::<BigUint>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let chain_ok = factors.iter().all(|x| *x >= BigUint::from(2u32))
            && factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        if !chain_ok {
            return Err(D::Error::custom(
                "invariant factors must form a divisor chain of values >= 2",
            ));
        }
        Ok(Self {
            free_rank: raw.free_rank,
            invariant_factors: factors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(g: &AbelianGroup) -> Vec<u64> {
        g.invariant_factors()
            .iter()
            .map(|d| d.to_u64().unwrap())
            .collect()
    }

    fn group(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::canonicalize(orders.iter().copied()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(factors(&group(&[2, 3])), vec![6]);
        assert!(group(&[1, 1]).is_trivial());
        assert_eq!(factors(&group(&[8, 2, 3])), vec![2, 24]);
        assert_eq!(factors(&group(&[4, 6, 10])), vec![2, 2, 60]);
    }

    #[test]
    fn canonicalize_rejects_nonpositive() {
        assert!(matches!(
            AbelianGroup::canonicalize([3i64, 0]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(AbelianGroup::canonicalize([-2i64]).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(AbelianGroup::trivial().order().unwrap(), BigUint::one());
        assert_eq!(group(&[2, 4]).order().unwrap(), BigUint::from(8u32));
        let g = AbelianGroup::free(1).direct_sum(&group(&[3]));
        assert_eq!(g.order(), Err(Error::InfiniteOrder));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(
            AbelianGroup::trivial().direct_sum(&group(&[5])),
            group(&[5])
        );
        assert_eq!(factors(&group(&[2]).direct_sum(&group(&[4]))), vec![2, 4]);
        assert_eq!(factors(&group(&[6]).direct_sum(&group(&[4]))), vec![2, 12]);
        let g = AbelianGroup::free(2).direct_sum(&AbelianGroup::free(1));
        assert_eq!(g.free_rank(), 3);
    }

    #[test]
    fn from_order_statistics_examples() {
        let stats = |pairs: &[(u64, u64)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
        assert!(AbelianGroup::from_order_statistics(&stats(&[(1, 1)]))
            .unwrap()
            .is_trivial());
        assert_eq!(
            factors(
                &AbelianGroup::from_order_statistics(&stats(&[(1, 1), (2, 3), (4, 4)])).unwrap()
            ),
            vec![2, 4]
        );
        assert_eq!(
            factors(&AbelianGroup::from_order_statistics(&stats(&[(1, 1), (2, 3)])).unwrap()),
            vec![2, 2]
        );
    }

    #[test]
    fn from_order_statistics_rejects_inconsistent() {
        let stats = |pairs: &[(u64, u64)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
        for bad in [
            stats(&[(2, 1)]),
            stats(&[(1, 1), (2, 2)]),
            stats(&[(1, 1), (4, 3)]),
            stats(&[(1, 2), (2, 2)]),
            stats(&[(1, 1), (2, 1), (3, 2)]),
        ] {
            assert!(
                matches!(
                    AbelianGroup::from_order_statistics(&bad),
                    Err(Error::MalformedStatistics(_))
                ),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn display_and_json() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(group(&[2, 2, 2, 3]).to_string(), "Z_2^2 ⊕ Z_6");
        let g = AbelianGroup::free(1).direct_sum(&group(&[4]));
        assert_eq!(g.to_string(), "Z ⊕ Z_4");
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"free_rank":1,"invariant_factors":["4"]}"#);
        assert_eq!(serde_json::from_str::<AbelianGroup>(&json).unwrap(), g);
        assert!(serde_json::from_str::<AbelianGroup>(
            r#"{"free_rank":0,"invariant_factors":["4","6"]}"#
        )
        .is_err());
    }

    #[test]
    fn large_factors_survive_canonicalization() {
        // 9^62 - 1 is far beyond 128 bits; no factorization is needed
        let big = BigUint::from(9u32).pow(62) - BigUint::one();
        let g = AbelianGroup::canonicalize([BigInt::from(big.clone()), BigInt::from(big.clone())])
            .unwrap();
        assert_eq!(g.invariant_factors(), &[big.clone(), big]);
    }
}
