//! Invertible circulant matrices over `F_p`.
//!
//! An `n × n` circulant over `F_p` is a polynomial in the cyclic shift, so the
//! group `C(n, p)` of invertible circulants is the unit group of
//! `R = F_p[x]/(x^n − 1)`. Writing `n = m·p^s` with `p ∤ m`,
//! `x^n − 1 = (x^m − 1)^{p^s}` and each irreducible factor of `x^m − 1` has the
//! degree `r` of a `p`-cyclotomic coset of `Z_m`. The matching component of `R`
//! is `F_{p^r}[t]/(t^{p^s})`, whose units are
//! `Z_{p^r − 1} ⊕ ⨁_{1 ≤ i < p^s, p ∤ i} (Z_{p^{⌈log_p(p^s / i)⌉}})^r`.
//!
//! `C′(n, p)` keeps the circulants fixing the all-ones vector (`a(1) = 1`), and
//! the shift `x` generates a cyclic subgroup of order `n` inside it.
//!
//! The brute-force routines enumerate the whole ring and are independent of
//! the decomposition above; they exist to check it.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::abelian::AbelianGroup;
use crate::error::{invalid, Error, Result};
use crate::numtheory::{factor_u64, is_prime};

/// Largest ring enumerated by the brute-force oracles unless overridden.
pub const DEFAULT_BRUTE_CAP: u64 = 1 << 20;

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        invalid(format!("{p} is not prime"))
    }
}

/// Orbits `{i, ip, ip², …}` of multiplication by `p` on `Z_m`.
pub fn cyclotomic_cosets(m: u64, p: u64) -> Result<Vec<Vec<u64>>> {
    if m == 0 {
        return invalid("modulus must be positive");
    }
    if p < 2 || m.is_multiple_of(p) && m > 1 {
        return invalid(format!("{p} must be coprime to the modulus {m}"));
    }
    let mut seen = vec![false; m as usize];
    let mut cosets = Vec::new();
    for i in 0..m {
        if seen[i as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = i;
        while !seen[x as usize] {
            seen[x as usize] = true;
            coset.push(x);
            x = ((x as u128 * p as u128) % m as u128) as u64;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

/// Contribution of one irreducible factor of `x^m − 1` to `C(n, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetFactor {
    pub coset: Vec<u64>,
    pub degree: usize,
    /// `p^r − 1`, the multiplicative group of the residue field.
    #[serde(serialize_with = "decimal")]
    pub teichmuller_order: BigUint,
    pub one_unit_part: AbelianGroup,
}

fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitGroupStructure {
    pub n: u64,
    pub p: u64,
    /// `n = m·p^s` with `p ∤ m`.
    pub m: u64,
    pub s: u32,
    pub group: AbelianGroup,
    pub factors: Vec<CosetFactor>,
}

/// Units of `F_{p^r}[t]/(t^{p^s})` congruent to 1 mod `t`.
fn one_unit_group(p: u64, s: u32, r: usize) -> AbelianGroup {
    let ps = p.pow(s);
    let mut orders = Vec::new();
    for i in (1..ps).filter(|i| i % p != 0) {
        let mut e = 0;
        while i * p.pow(e) < ps {
            e += 1;
        }
        orders.extend(std::iter::repeat_n(BigUint::from(p).pow(e), r));
    }
    AbelianGroup::with_free_rank(0, &orders)
}

/// Structure of `C(n, p)` read off the cyclotomic cosets of `Z_m`.
pub fn circulant_group(n: u64, p: u64) -> Result<UnitGroupStructure> {
    require_prime(p)?;
    if n == 0 {
        return invalid("n must be positive");
    }
    let (mut m, mut s) = (n, 0u32);
    while m % p == 0 {
        m /= p;
        s += 1;
    }
    let mut factors = Vec::new();
    let mut group = AbelianGroup::trivial();
    for coset in cyclotomic_cosets(m, p)? {
        let r = coset.len();
        let teich = BigUint::from(p).pow(r as u32) - 1u32;
        let one_units = one_unit_group(p, s, r);
        group = group
            .direct_sum(&AbelianGroup::with_free_rank(
                0,
                std::slice::from_ref(&teich),
            ))
            .direct_sum(&one_units);
        factors.push(CosetFactor {
            coset,
            degree: r,
            teichmuller_order: teich,
            one_unit_part: one_units,
        });
    }
    let structure = UnitGroupStructure {
        n,
        p,
        m,
        s,
        group,
        factors,
    };
    structure.check()?;
    Ok(structure)
}

impl UnitGroupStructure {
    fn check(&self) -> Result<()> {
        let degrees: usize = self.factors.iter().map(|f| f.degree).sum();
        let expected: BigUint = self
            .factors
            .iter()
            .map(|f| &f.teichmuller_order * f.one_unit_part.order().unwrap())
            .product();
        let ps = self.p.pow(self.s) as usize;
        if degrees as u64 != self.m
            || degrees * ps != self.n as usize
            || self.group.order()? != expected
        {
            return Err(Error::Logic(format!(
                "inconsistent decomposition of C({}, {})",
                self.n, self.p
            )));
        }
        Ok(())
    }

    pub fn order(&self) -> BigUint {
        self.group.order().expect("unit groups are finite")
    }
}

/// `C′(n, p)`: `C(n, p)` with the scalar factor `Z_{p−1}` of the `x − 1`
/// component removed.
pub fn circulant_group_fixing_ones(n: u64, p: u64) -> Result<AbelianGroup> {
    let full = circulant_group(n, p)?;
    let mut group = AbelianGroup::trivial();
    for f in &full.factors {
        if f.coset != [0] {
            group = group.direct_sum(&AbelianGroup::with_free_rank(
                0,
                std::slice::from_ref(&f.teichmuller_order),
            ));
        }
        group = group.direct_sum(&f.one_unit_part);
    }
    Ok(group)
}

/// Number of normal elements of `F_{p^n}` over `F_p`, i.e. `|C(n, p)|`.
pub fn count_normal_elements(p: u64, n: u64) -> Result<BigUint> {
    Ok(circulant_group(n, p)?.order())
}

/// Dense polynomials over `F_p`, little-endian coefficients, trimmed.
mod fp {
    pub type Poly = Vec<u64>;

    pub fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        // p is prime and a is nonzero mod p
        let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    /// Remainder of `a` modulo a nonzero `b`.
    pub fn rem(mut a: Poly, b: &Poly, p: u64) -> Poly {
        trim(&mut a);
        let lead_inv = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = a.last().unwrap() * lead_inv % p;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - q * c % p) % p;
            }
            trim(&mut a);
        }
        a
    }

    pub fn gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(a: &Poly, b: &Poly, h: &Poly, p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(out, h, p)
    }

    pub fn pow_mod(a: &Poly, mut e: u64, h: &Poly, p: u64) -> Poly {
        let mut result = rem(vec![1], h, p);
        let mut base = rem(a.clone(), h, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, h, p);
            }
            base = mul_mod(&base, &base, h, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    /// Rank of a matrix over `F_p`, rows consumed.
    pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let lead_inv = inv(rows[rank][c], p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let f = rows[r][c] * lead_inv % p;
                    for k in c..cols {
                        rows[r][k] = (rows[r][k] + p - f * rows[rank][k] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// `F_p[x]/(x^n − 1)` with elements encoded as base-`p` digit strings
/// (digit `i` is the coefficient of `x^i`).
struct CyclicRing {
    p: u64,
    n: usize,
    size: usize,
}

impl CyclicRing {
    fn new(n: u64, p: u64, cap: u64) -> Result<Self> {
        require_prime(p)?;
        if n == 0 {
            return invalid("n must be positive");
        }
        let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        let limit = cap.min(u32::MAX as u64) as u128;
        if size > limit {
            return Err(Error::ResourceLimit {
                size,
                cap: cap as u128,
            });
        }
        Ok(Self {
            p,
            n: n as usize,
            size: size as usize,
        })
    }

    fn decode(&self, mut x: u32, out: &mut [u64]) {
        for o in out.iter_mut().take(self.n) {
            *o = x as u64 % self.p;
            x /= self.p as u32;
        }
    }

    fn encode(&self, digits: &[u64]) -> u32 {
        digits[..self.n]
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p as u32 + d as u32)
    }

    fn one(&self) -> u32 {
        1
    }

    /// The shift `x`; equal to 1 when `n = 1`.
    fn shift(&self) -> u32 {
        if self.n == 1 {
            1
        } else {
            self.p as u32
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let n = self.n;
        if self.p == 2 {
            // carry-less product with rotation
            let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
            let mut out = 0u32;
            let mut bits = a;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rot = if i == 0 {
                    b
                } else {
                    ((b << i) | (b >> (n - i))) & mask
                };
                out ^= rot;
            }
            return out;
        }
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let mut dc = [0u64; 32];
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                let k = if i + j >= n { i + j - n } else { i + j };
                dc[k] += da[i] * db[j];
            }
        }
        for c in dc.iter_mut().take(n) {
            *c %= self.p;
        }
        self.encode(&dc)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `a` is a unit iff `gcd(a(x), x^n − 1)` is a nonzero constant.
    fn is_unit(&self, a: u32) -> bool {
        let mut digits = vec![0u64; self.n];
        self.decode(a, &mut digits);
        let mut modulus = vec![0u64; self.n + 1];
        modulus[0] = self.p - 1;
        modulus[self.n] = 1;
        fp::gcd(modulus, digits, self.p).len() == 1
    }

    /// `a(1)`, the eigenvalue on the all-ones vector.
    fn augmentation(&self, a: u32) -> u64 {
        let mut digits = [0u64; 32];
        self.decode(a, &mut digits);
        digits[..self.n].iter().sum::<u64>() % self.p
    }

    fn is_monomial(&self, a: u32) -> bool {
        let mut x = a;
        while x > 1 && x.is_multiple_of(self.p as u32) {
            x /= self.p as u32;
        }
        x == 1
    }

    fn units(&self) -> Vec<u32> {
        (0..self.size as u32).filter(|&a| self.is_unit(a)).collect()
    }
}

/// Element-order statistics in `G / H` for a finite abelian group `G` listed in
/// `elements`, where `in_h` recognizes the subgroup `H` and `quotient_order`
/// is `|G/H|`. Every element of `G` is counted, so each coset appears `|H|`
/// times.
///
/// For each prime `q | |G/H|` a table of `a ↦ a^q` is built once; the
/// `q`-part of the order of `aH` is then found by raising `a` to the cofactor
/// of `q` through table lookups and counting further `q`-th powers until the
/// result lands in `H`.
fn quotient_order_counts(
    ring: &CyclicRing,
    elements: &[u32],
    quotient_order: u64,
    in_h: impl Fn(u32) -> bool,
) -> BTreeMap<u64, u64> {
    const ABSENT: u32 = u32::MAX;
    let mut position = vec![ABSENT; ring.size];
    for (i, &a) in elements.iter().enumerate() {
        position[a as usize] = i as u32;
    }
    let primes = factor_u64(quotient_order);
    let tables: Vec<Vec<u32>> = primes
        .iter()
        .map(|&(q, _)| {
            elements
                .iter()
                .map(|&a| position[ring.pow(a, q) as usize])
                .collect()
        })
        .collect();
    let mut counts = BTreeMap::new();
    for (start, _) in elements.iter().enumerate() {
        let mut order = 1u64;
        for (qi, &(q, _)) in primes.iter().enumerate() {
            let mut b = start as u32;
            for (qj, &(_, e)) in primes.iter().enumerate() {
                if qj != qi {
                    for _ in 0..e {
                        b = tables[qj][b as usize];
                    }
                }
            }
            while !in_h(elements[b as usize]) {
                b = tables[qi][b as usize];
                order *= q;
            }
        }
        *counts.entry(order).or_insert(0) += 1;
    }
    counts
}

/// `C(n, p)` by enumerating `F_p[x]/(x^n − 1)`: units are found by polynomial
/// gcd, each unit's order is computed, and the group is rebuilt from the order
/// statistics.
pub fn bruteforce_unit_group(n: u64, p: u64, cap: u64) -> Result<AbelianGroup> {
    let ring = CyclicRing::new(n, p, cap)?;
    let units = ring.units();
    let one = ring.one();
    let counts = quotient_order_counts(&ring, &units, units.len() as u64, |a| a == one);
    AbelianGroup::from_order_statistics(&counts)
}

/// `C′(n, p) / ⟨x⟩` by enumeration.
pub fn quotient_by_shift(n: u64, p: u64, cap: u64) -> Result<AbelianGroup> {
    let ring = CyclicRing::new(n, p, cap)?;
    let fixing: Vec<u32> = ring
        .units()
        .into_iter()
        .filter(|&a| ring.augmentation(a) == 1)
        .collect();
    let shift = ring.shift();
    let shift_order = (1..=n)
        .find(|&k| ring.pow(shift, k) == ring.one())
        .unwrap_or(0);
    if shift_order != n || !ring.is_unit(shift) || ring.augmentation(shift) != 1 {
        return Err(Error::Logic(format!(
            "the shift does not have order {n} in C'({n}, {p})"
        )));
    }
    let index = fixing.len() as u64 / n;
    let counts = quotient_order_counts(&ring, &fixing, index, |a| ring.is_monomial(a));
    let mut per_coset = BTreeMap::new();
    for (order, c) in counts {
        if c % n != 0 {
            return Err(Error::Logic("coset sizes are not all equal to n".into()));
        }
        per_coset.insert(order, c / n);
    }
    AbelianGroup::from_order_statistics(&per_coset)
}

/// Smallest monic irreducible polynomial of degree `n` over `F_p` in base-`p`
/// order of its lower coefficients.
fn find_irreducible(p: u64, n: usize) -> Result<fp::Poly> {
    let y = vec![0, 1];
    let prime_divisors: Vec<u64> = factor_u64(n as u64).into_iter().map(|(r, _)| r).collect();
    let count = (p as u128).pow(n as u32);
    for code in 0..count {
        let mut h = vec![0u64; n + 1];
        let mut c = code;
        for coeff in h.iter_mut().take(n) {
            *coeff = (c % p as u128) as u64;
            c /= p as u128;
        }
        h[n] = 1;
        if n > 1 && h[0] == 0 {
            continue;
        }
        // y^{p^n} = y mod h and gcd(y^{p^{n/r}} - y, h) = 1 for each prime r | n
        let frob = |k: usize| (0..k).fold(y.clone(), |acc, _| fp::pow_mod(&acc, p, &h, p));
        if fp::sub(&frob(n), &fp::rem(y.clone(), &h, p), p).is_empty()
            && prime_divisors.iter().all(|&r| {
                let g = fp::gcd(h.clone(), fp::sub(&frob(n / r as usize), &y, p), p);
                g.len() == 1
            })
        {
            return Ok(h);
        }
    }
    Err(Error::Logic(format!(
        "no irreducible polynomial of degree {n} over F_{p}"
    )))
}

/// Normal elements of `F_{p^n}` counted by enumeration: `θ` is normal when
/// `θ, θ^p, …, θ^{p^{n−1}}` are linearly independent over `F_p`.
pub fn bruteforce_count_normal(p: u64, n: u64, cap: u64) -> Result<BigUint> {
    require_prime(p)?;
    if n == 0 {
        return invalid("n must be positive");
    }
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::ResourceLimit {
            size,
            cap: cap as u128,
        });
    }
    let n = n as usize;
    let h = find_irreducible(p, n)?;
    // column j of the Frobenius matrix holds (y^j)^p mod h
    let mut frob = vec![vec![0u64; n]; n];
    for j in 0..n {
        let mut basis = vec![0u64; j + 1];
        basis[j] = 1;
        let img = fp::pow_mod(&basis, p, &h, p);
        for (i, &c) in img.iter().enumerate() {
            frob[i][j] = c;
        }
    }
    let apply = |v: &[u64]| -> Vec<u64> {
        (0..n)
            .map(|i| (0..n).map(|j| frob[i][j] * v[j]).sum::<u64>() % p)
            .collect()
    };
    let mut count = 0u64;
    let mut theta = vec![0u64; n];
    for code in 0..size as u64 {
        let mut c = code;
        for t in theta.iter_mut() {
            *t = c % p;
            c /= p;
        }
        let mut rows = Vec::with_capacity(n);
        let mut cur = theta.clone();
        for _ in 0..n {
            let next = apply(&cur);
            rows.push(cur);
            cur = next;
        }
        if fp::rank(rows, p) == n {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Per-instance summary: `C`, `C′`, `C′/⟨x⟩` (when small enough to enumerate)
/// and the number of normal elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantReport {
    pub n: u64,
    pub p: u64,
    #[serde(rename = "C")]
    pub c: AbelianGroup,
    #[serde(rename = "C_prime")]
    pub c_prime: AbelianGroup,
    pub quotient_by_shift: Option<AbelianGroup>,
    #[serde(serialize_with = "decimal")]
    pub normal_elements: BigUint,
}

pub fn report(n: u64, p: u64, cap: u64) -> Result<CirculantReport> {
    let c = circulant_group(n, p)?;
    let quotient = match quotient_by_shift(n, p, cap) {
        Ok(q) => Some(q),
        Err(Error::ResourceLimit { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CirculantReport {
        n,
        p,
        normal_elements: c.order(),
        c_prime: circulant_group_fixing_ones(n, p)?,
        c: c.group,
        quotient_by_shift: quotient,
    })
}

impl CirculantReport {
    /// `|C(n, p)| = (p − 1)·|C′(n, p)|`.
    pub fn scalar_split_holds(&self) -> bool {
        match (self.c.order(), self.c_prime.order()) {
            (Ok(c), Ok(cp)) => c == cp * BigUint::from(self.p - 1),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn factors(g: &AbelianGroup) -> Vec<u64> {
        g.invariant_factors()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn coset_examples() {
        assert_eq!(
            cyclotomic_cosets(7, 2).unwrap(),
            vec![vec![0], vec![1, 2, 4], vec![3, 6, 5]]
        );
        assert_eq!(cyclotomic_cosets(1, 5).unwrap(), vec![vec![0]]);
        assert_eq!(
            cyclotomic_cosets(4, 3).unwrap(),
            vec![vec![0], vec![1, 3], vec![2]]
        );
        assert!(cyclotomic_cosets(6, 3).is_err());
    }

    #[test]
    fn circulant_group_examples() {
        let c = circulant_group(7, 2).unwrap();
        assert_eq!(factors(&c.group), vec![7, 7]);
        assert_eq!(
            c.factors.iter().map(|f| f.degree).collect::<Vec<_>>(),
            vec![1, 3, 3]
        );
        assert_eq!(factors(&circulant_group(4, 2).unwrap().group), vec![2, 4]);
        let c = circulant_group(6, 2).unwrap();
        assert_eq!(factors(&c.group), vec![2, 2, 6]);
        assert_eq!((c.m, c.s), (3, 1));
        assert!(circulant_group(5, 4).is_err());
    }

    #[test]
    fn fixing_ones_examples() {
        assert_eq!(
            factors(&circulant_group_fixing_ones(7, 2).unwrap()),
            vec![7, 7]
        );
        assert_eq!(
            factors(&circulant_group_fixing_ones(4, 2).unwrap()),
            vec![2, 4]
        );
        assert_eq!(
            factors(&circulant_group_fixing_ones(3, 3).unwrap()),
            vec![3, 3]
        );
        assert_eq!(factors(&circulant_group(3, 3).unwrap().group), vec![3, 6]);
    }

    #[test]
    fn bruteforce_unit_examples() {
        assert_eq!(
            factors(&bruteforce_unit_group(3, 2, DEFAULT_BRUTE_CAP).unwrap()),
            vec![3]
        );
        assert_eq!(
            factors(&bruteforce_unit_group(1, 7, DEFAULT_BRUTE_CAP).unwrap()),
            vec![6]
        );
        assert_eq!(
            factors(&bruteforce_unit_group(4, 2, DEFAULT_BRUTE_CAP).unwrap()),
            vec![2, 4]
        );
        assert_eq!(
            factors(&bruteforce_unit_group(3, 3, DEFAULT_BRUTE_CAP).unwrap()),
            vec![3, 6]
        );
        assert!(matches!(
            bruteforce_unit_group(21, 2, DEFAULT_BRUTE_CAP),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn quotient_examples() {
        assert!(quotient_by_shift(3, 2, DEFAULT_BRUTE_CAP)
            .unwrap()
            .is_trivial());
        assert_eq!(
            factors(&quotient_by_shift(4, 2, DEFAULT_BRUTE_CAP).unwrap()),
            vec![2]
        );
        assert_eq!(
            factors(&quotient_by_shift(7, 2, DEFAULT_BRUTE_CAP).unwrap()),
            vec![7]
        );
        assert!(quotient_by_shift(1, 3, DEFAULT_BRUTE_CAP)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn normal_count_examples() {
        let count = |p, n| count_normal_elements(p, n).unwrap().to_u64().unwrap();
        assert_eq!((count(2, 3), count(2, 7), count(2, 2)), (3, 49, 2));
        let brute = |p, n| {
            bruteforce_count_normal(p, n, DEFAULT_BRUTE_CAP)
                .unwrap()
                .to_u64()
                .unwrap()
        };
        assert_eq!((brute(2, 3), brute(2, 1), brute(2, 4)), (3, 1, 8));
        assert_eq!(brute(3, 2), count(3, 2));
        assert!(bruteforce_count_normal(4, 2, DEFAULT_BRUTE_CAP).is_err());
    }

    #[test]
    fn irreducible_search() {
        assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn report_json() {
        let r = report(7, 2, DEFAULT_BRUTE_CAP).unwrap();
        assert!(r.scalar_split_holds());
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["normal_elements"], "49");
        assert_eq!(
            j["quotient_by_shift"]["invariant_factors"],
            serde_json::json!(["7"])
        );
        let r = report(30, 2, DEFAULT_BRUTE_CAP).unwrap();
        assert!(r.quotient_by_shift.is_none());
    }
}
