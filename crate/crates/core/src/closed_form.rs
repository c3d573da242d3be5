//! Closed formulas for the sandpile groups of `DB(n, d)` and `Kautz(n, d)`.
//!
//! Everything is driven by two pieces of arithmetic:
//!
//! * the `d`-sequence `n = n_0 > n_1 > … > n_k = m`, with `n_{i+1} = n_i / g_i`
//!   and `g_i = gcd(n_i, d)`, stopping once `gcd(m, d) = 1`;
//! * the orbits of `x ↦ dx` (or `x ↦ −dx` for Kautz) on the nonzero residues
//!   of `Z_m`.
//!
//! The sand dune group `Σ(n, d)` is the quotient of the lattice spanned by
//! `e_v = x^v − 1` (`v ≠ 0`, polynomials mod `x^n − 1`) by the relations
//! `ε_v = d·e_v − e_{dv}`. It contains the de Bruijn sandpile group `S(n, d)`
//! with index `n`; [`membership_in_sandpile`] decides which elements lie in it.
//!
//! For the Kautz family the cyclic factor attached to an orbit of size `o` is
//! `|(−d)^o − 1|`, i.e. `d^o − 1` for even `o` and `d^o + 1` for odd `o`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::AbelianGroup;
use crate::error::{invalid, Error, Result};
use crate::graphs::Family;
use crate::linalg::IntegerMatrix;
use crate::numtheory::{factor_u64, prime_power_part};

/// The chain `n_0 > n_1 > … > n_k` with `g_i = gcd(n_i, d) > 1` for `i < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSequence {
    d: u64,
    chain: Vec<u64>,
    gcds: Vec<u64>,
}

impl DSequence {
    pub fn chain(&self) -> &[u64] {
        &self.chain
    }

    pub fn gcds(&self) -> &[u64] {
        &self.gcds
    }

    /// Index at which the chain stabilizes.
    pub fn k(&self) -> usize {
        self.gcds.len()
    }

    /// `n_k`, the part of `n` coprime to `d`.
    pub fn m(&self) -> u64 {
        *self.chain.last().expect("chain is never empty")
    }

    /// `g_0 ⋯ g_{k−1} = n / m`.
    pub fn g(&self) -> u64 {
        self.gcds.iter().product()
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `n_i − 2n_{i+1} + n_{i+2}` for `i < k`, reading `n_{k+1} = n_{k+2} = n_k`.
    pub fn exponent(&self, i: usize) -> u64 {
        let at = |j: usize| self.chain[j.min(self.chain.len() - 1)];
        at(i) + at(i + 2) - 2 * at(i + 1)
    }
}

pub fn d_sequence(n: u64, d: u64) -> Result<DSequence> {
    if n == 0 {
        return invalid("n must be positive");
    }
    if d <= 1 {
        return invalid(format!("d must be at least 2, got {d}"));
    }
    let mut chain = vec![n];
    let mut gcds = Vec::new();
    loop {
        let last = *chain.last().unwrap();
        let g = last.gcd(&d);
        if g == 1 {
            break;
        }
        gcds.push(g);
        chain.push(last / g);
    }
    let seq = DSequence { d, chain, gcds };
    // n_i - 2n_{i+1} + n_{i+2} = n_{i+2}((g_i - 2) g_{i+1} + 1) >= 1
    for i in 0..seq.k() {
        let at = |j: usize| seq.chain[j.min(seq.chain.len() - 1)];
        if at(i) + at(i + 2) < 2 * at(i + 1) + 1 {
            return Err(Error::Logic(format!(
                "exponent {i} of the {d}-sequence of {n} is not positive"
            )));
        }
    }
    Ok(seq)
}

/// Orbits of `x ↦ multiplier·x` on `Z_m \ {0}` with chosen representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    modulus: u64,
    multiplier: i64,
    orbits: Vec<Vec<u64>>,
    representatives: Vec<u64>,
}

impl OrbitData {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    /// Each orbit listed as `v, av, a²v, …` starting from its smallest element.
    pub fn orbits(&self) -> &[Vec<u64>] {
        &self.orbits
    }

    /// One representative per orbit, aligned with [`orbits`](Self::orbits).
    pub fn representatives(&self) -> &[u64] {
        &self.representatives
    }

    pub fn is_representative(&self, v: u64) -> bool {
        self.representatives.contains(&v)
    }

    /// Size of the orbit containing `v`, if `v` is a nonzero residue.
    pub fn orbit_size(&self, v: u64) -> Option<usize> {
        self.orbits.iter().find(|o| o.contains(&v)).map(Vec::len)
    }

    /// `(representative, orbit size)` pairs.
    pub fn sized_representatives(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.representatives
            .iter()
            .zip(&self.orbits)
            .map(|(&v, o)| (v, o.len()))
    }
}

/// Partitions `Z_m \ {0}` into orbits of `x ↦ multiplier·x mod m`.
///
/// Representatives are the smallest orbit elements, except that every
/// `m / p^j` (`p | m`, `1 ≤ j ≤ v_p(m)`) represents its own orbit. Those
/// integers have distinct `p`-adic valuations, so no two share an orbit.
pub fn orbits(m: u64, multiplier: i64) -> Result<OrbitData> {
    if m == 0 {
        return invalid("modulus must be positive");
    }
    if (multiplier.unsigned_abs()).gcd(&m) != 1 {
        return invalid(format!("multiplier {multiplier} is not a unit mod {m}"));
    }
    let a = multiplier.rem_euclid(m as i64) as u64;
    let mut seen = vec![false; m as usize];
    let mut orbit_list = Vec::new();
    for v in 1..m {
        if seen[v as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = v;
        while !seen[x as usize] {
            seen[x as usize] = true;
            orbit.push(x);
            x = ((x as u128 * a as u128) % m as u128) as u64;
        }
        orbit_list.push(orbit);
    }
    let mut forced = Vec::new();
    for (p, e) in factor_u64(m) {
        let mut q = m;
        for _ in 0..e {
            q /= p;
            forced.push(q);
        }
    }
    let representatives = orbit_list
        .iter()
        .map(|o| {
            let mut hits = o.iter().filter(|x| forced.contains(x));
            match (hits.next(), hits.next()) {
                (Some(&f), None) => Ok(f),
                (None, _) => Ok(o[0]),
                (Some(_), Some(_)) => Err(Error::Logic(format!(
                    "orbit {o:?} holds two forced representatives"
                ))),
            }
        })
        .collect::<Result<_>>()?;
    Ok(OrbitData {
        modulus: m,
        multiplier,
        orbits: orbit_list,
        representatives,
    })
}

/// Tail length `f` and cycle length `e` of `v` under `x ↦ dx mod n`.
pub fn d_type(v: u64, n: u64, d: u64) -> Result<(usize, usize)> {
    if v >= n {
        return invalid(format!("{v} is not a residue mod {n}"));
    }
    let mut first_seen: BTreeMap<u64, usize> = BTreeMap::new();
    let mut x = v;
    for step in 0.. {
        if let Some(&start) = first_seen.get(&x) {
            return Ok((start, step - start));
        }
        first_seen.insert(x, step);
        x = ((x as u128 * d as u128) % n as u128) as u64;
    }
    unreachable!()
}

fn multiplier(family: Family, d: u64) -> i64 {
    match family {
        Family::DeBruijn => d as i64,
        Family::Kautz => -(d as i64),
    }
}

/// The correction `c(v)` (de Bruijn) or `c′(v)` (Kautz) for a representative.
///
/// With `a = ±d`, `c(m/π_p(m)) = π_p(m)` unless `p = 2`, `a ≡ 3 mod 4` and
/// `4 | m`; in that case `c(m/π_2(m)) = π_2(m)/2` and `c(m/2) = 2`. Every other
/// representative has `c = 1`.
pub fn c_value(v: u64, m: u64, d: u64, family: Family) -> Result<u64> {
    let data = orbits(m, multiplier(family, d))?;
    if !data.is_representative(v) {
        return invalid(format!("{v} is not an orbit representative mod {m}"));
    }
    Ok(c_value_unchecked(v, m, d, family))
}

fn c_value_unchecked(v: u64, m: u64, d: u64, family: Family) -> u64 {
    let a = multiplier(family, d).rem_euclid(4);
    let exceptional = a == 3 && m.is_multiple_of(4);
    if exceptional && v == m / 2 {
        return 2;
    }
    for (p, _) in factor_u64(m) {
        let (pi, _) = prime_power_part(m, p);
        if v == m / pi {
            return if p == 2 && exceptional { pi / 2 } else { pi };
        }
    }
    1
}

fn pow(base: u64, e: usize) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

/// Cyclic order `|a^o − 1|` attached to an orbit of size `o`, `a = ±d`.
fn orbit_cyclic_order(family: Family, d: u64, o: usize) -> BigUint {
    let p = pow(d, o);
    match family {
        Family::Kautz if o % 2 == 1 => p + 1u32,
        _ => p - 1u32,
    }
}

/// Cyclic orders of the dune-group decomposition, family-aware.
fn dune_orders(family: Family, n: u64, d: u64) -> Result<Vec<BigUint>> {
    let seq = d_sequence(n, d)?;
    let mut orders = Vec::new();
    for i in 0..seq.k() {
        let q = pow(d, i + 1);
        orders.extend(std::iter::repeat_n(q, seq.exponent(i) as usize));
    }
    let orb = orbits(seq.m(), multiplier(family, d))?;
    for (_, o) in orb.sized_representatives() {
        orders.push(orbit_cyclic_order(family, d, o));
    }
    Ok(orders)
}

fn sandpile_orders(family: Family, n: u64, d: u64) -> Result<Vec<BigUint>> {
    let seq = d_sequence(n, d)?;
    let mut orders = Vec::new();
    for i in 0..seq.k() {
        let q = pow(d, i + 1);
        orders.push(&q / seq.gcds()[i]);
        orders.extend(std::iter::repeat_n(q, seq.exponent(i) as usize - 1));
    }
    let m = seq.m();
    let orb = orbits(m, multiplier(family, d))?;
    for (v, o) in orb.sized_representatives() {
        let full = orbit_cyclic_order(family, d, o);
        let c = c_value_unchecked(v, m, d, family);
        let (q, r) = full.div_rem(&BigUint::from(c));
        if !r.is_zero() {
            return Err(Error::Logic(format!(
                "c({v}) = {c} does not divide the cyclic order {full}"
            )));
        }
        orders.push(q);
    }
    Ok(orders)
}

fn checked_sandpile(family: Family, n: u64, d: u64) -> Result<AbelianGroup> {
    let dune = AbelianGroup::with_free_rank(0, &dune_orders(family, n, d)?);
    let sandpile = AbelianGroup::with_free_rank(0, &sandpile_orders(family, n, d)?);
    let (big, small) = (dune.order()?, sandpile.order()?);
    if big != small * BigUint::from(n) {
        return Err(Error::Logic(format!(
            "{family}({n}, {d}): sand dune order {big} is not {n} times the sandpile order"
        )));
    }
    Ok(sandpile)
}

/// `Σ(n, d)` from the `d`-sequence and the orbits of `x ↦ dx` on `Z_m`.
pub fn sand_dune_group(n: u64, d: u64) -> Result<AbelianGroup> {
    Ok(AbelianGroup::with_free_rank(
        0,
        &dune_orders(Family::DeBruijn, n, d)?,
    ))
}

/// Sandpile group of `DB(n, d)`; also verifies `|Σ(n, d)| = n·|S(n, d)|`.
pub fn sandpile_group_db(n: u64, d: u64) -> Result<AbelianGroup> {
    checked_sandpile(Family::DeBruijn, n, d)
}

/// Sandpile group of `Kautz(n, d)`, with orbits of `x ↦ −dx` and cyclic orders
/// `|(−d)^o − 1| / c′(v)`.
pub fn sandpile_group_kautz(n: u64, d: u64) -> Result<AbelianGroup> {
    checked_sandpile(Family::Kautz, n, d)
}

pub fn sandpile_group(family: Family, n: u64, d: u64) -> Result<AbelianGroup> {
    checked_sandpile(family, n, d)
}

/// The relations `ε_v = d·e_v − e_{dv}` written in the basis
/// `e_1, …, e_{n−1}` (row `v − 1` for `ε_v`, with `e_0 = 0`).
pub fn epsilon_relation_matrix(n: u64, d: u64) -> Result<IntegerMatrix> {
    if n < 2 || d < 2 {
        return invalid(format!(
            "relation matrix needs n >= 2 and d >= 2, got n={n}, d={d}"
        ));
    }
    let size = (n - 1) as usize;
    let mut m = IntegerMatrix::zeros(size, size);
    for v in 1..n {
        let r = (v - 1) as usize;
        m[(r, r)] += d;
        let w = ((v as u128 * d as u128) % n as u128) as u64;
        if w != 0 {
            m[(r, (w - 1) as usize)] -= 1;
        }
    }
    Ok(m)
}

/// Exact coordinates of an element of the `e_v` lattice in the `ε_v` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonCoordinates {
    n: u64,
    d: u64,
    coefficients: BTreeMap<u64, BigRational>,
}

impl EpsilonCoordinates {
    pub fn coefficient(&self, w: u64) -> BigRational {
        self.coefficients
            .get(&w)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coefficients.iter().map(|(&w, c)| (w, c))
    }

    /// Smallest positive multiple making every coefficient integral, which is
    /// the order of the element in `Σ(n, d)`.
    pub fn order(&self) -> BigUint {
        self.coefficients
            .values()
            .fold(BigUint::one(), |acc, c| acc.lcm(c.denom().magnitude()))
    }

    /// Expands back into the `e_w` basis using `ε_w = d·e_w − e_{dw}`.
    pub fn to_e_basis(&self) -> BTreeMap<u64, BigRational> {
        let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
        let d = BigRational::from_integer(BigInt::from(self.d));
        for (&w, c) in &self.coefficients {
            *out.entry(w).or_insert_with(BigRational::zero) += c * &d;
            let dw = ((w as u128 * self.d as u128) % self.n as u128) as u64;
            if dw != 0 {
                *out.entry(dw).or_insert_with(BigRational::zero) -= c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Writes `e_v` in the `ε` basis.
///
/// With `v` of `d`-type `(f, e)` and `u = d^f·v` on the cycle,
/// `e_v = Σ_{i<f} d^{−i−1} ε_{d^i v} + d^{−f} Σ_{j<e} d^{e−1−j} (d^e − 1)^{−1} ε_{d^j u}`.
/// The first sum telescopes to `e_v − d^{−f} e_u`; the second is `d^{−f} e_u`.
/// Terms at `ε_0 = 0` are dropped, which happens when the orbit falls into 0.
pub fn epsilon_coordinates_of_ev(v: u64, n: u64, d: u64) -> Result<EpsilonCoordinates> {
    if v == 0 {
        return invalid("e_0 is zero and has no coordinates");
    }
    if d < 2 {
        return invalid(format!("d must be at least 2, got {d}"));
    }
    let (f, e) = d_type(v, n, d)?;
    let step = |x: u64| ((x as u128 * d as u128) % n as u128) as u64;
    let big_d = BigInt::from(d);
    let mut coefficients = BTreeMap::new();
    let mut x = v;
    for i in 0..f {
        let denom = num_traits::pow(big_d.clone(), i + 1);
        coefficients.insert(x, BigRational::new(BigInt::one(), denom));
        x = step(x);
    }
    if x != 0 {
        let cycle_denom: BigInt =
            (num_traits::pow(big_d.clone(), e) - 1) * num_traits::pow(big_d.clone(), f);
        for j in 0..e {
            let numer = num_traits::pow(big_d.clone(), e - 1 - j);
            coefficients.insert(x, BigRational::new(numer, cycle_denom.clone()));
            x = step(x);
        }
    }
    Ok(EpsilonCoordinates { n, d, coefficients })
}

/// Order of `e_v` in `Σ(n, d)`: `d^f(d^e − 1)` in general, but only `d^f`
/// when the forward orbit of `v` reaches 0.
pub fn order_of_ev(v: u64, n: u64, d: u64) -> Result<BigUint> {
    Ok(epsilon_coordinates_of_ev(v, n, d)?.order())
}

/// Whether `Σ a_v e_v ∈ Σ(n, d)` lies in the embedded sandpile group, i.e.
/// `Σ v·a_v ≡ 0 mod n`.
pub fn membership_in_sandpile(coefficients: &BTreeMap<u64, BigInt>, n: u64) -> bool {
    let total: BigInt = coefficients.iter().map(|(&v, a)| BigInt::from(v) * a).sum();
    (total % BigInt::from(n)).is_zero()
}

/// Whether the relation `ε_v` maps to zero under `Σ a_w e_w ↦ Σ w·a_w mod n`,
/// so that [`membership_in_sandpile`] is well defined on the quotient.
pub fn relation_is_in_kernel(v: u64, n: u64, d: u64) -> bool {
    let dv = ((v as u128 * d as u128) % n as u128) as u64;
    let mut coefficients: BTreeMap<u64, BigInt> = BTreeMap::new();
    *coefficients.entry(v).or_default() += d;
    *coefficients.entry(dv).or_default() -= 1;
    membership_in_sandpile(&coefficients, n)
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

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn d_sequence_examples() {
        let s = d_sequence(12, 2).unwrap();
        assert_eq!((s.chain(), s.k(), s.m(), s.g()), (&[12, 6, 3][..], 2, 3, 4));
        let s = d_sequence(7, 3).unwrap();
        assert_eq!((s.chain(), s.k(), s.m(), s.g()), (&[7][..], 0, 7, 1));
        let s = d_sequence(9, 3).unwrap();
        assert_eq!((s.chain(), s.k(), s.m(), s.g()), (&[9, 3, 1][..], 2, 1, 9));
        assert_eq!((s.exponent(0), s.exponent(1)), (4, 2));
        assert!(d_sequence(5, 1).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o = orbits(7, 2).unwrap();
        assert_eq!(o.orbits(), &[vec![1, 2, 4], vec![3, 6, 5]]);
        assert_eq!(o.representatives(), &[1, 3]);
        let o = orbits(3, -2).unwrap();
        assert_eq!(o.orbits(), &[vec![1], vec![2]]);
        assert_eq!(o.representatives(), &[1, 2]);
        assert!(orbits(1, 5).unwrap().orbits().is_empty());
        assert!(orbits(6, 2).is_err());
        // 12/2 = 6, 12/4 = 3 and 12/3 = 4 are all forced representatives
        let o = orbits(12, 5).unwrap();
        for f in [6, 3, 4] {
            assert!(o.is_representative(f));
        }
    }

    #[test]
    fn d_type_examples() {
        assert_eq!(d_type(1, 7, 2).unwrap(), (0, 3));
        assert_eq!(d_type(1, 4, 2).unwrap(), (2, 1));
        assert_eq!(d_type(0, 10, 3).unwrap(), (0, 1));
        assert!(d_type(4, 4, 2).is_err());
    }

    #[test]
    fn c_value_examples() {
        assert_eq!(c_value(1, 7, 2, Family::DeBruijn).unwrap(), 7);
        assert_eq!(c_value(3, 7, 2, Family::DeBruijn).unwrap(), 1);
        assert_eq!(c_value(1, 4, 3, Family::DeBruijn).unwrap(), 2);
        assert_eq!(c_value(2, 4, 3, Family::DeBruijn).unwrap(), 2);
        // d = 5 ≡ 1 mod 4: the ordinary branch for de Bruijn, exceptional for Kautz
        assert_eq!(c_value(1, 8, 5, Family::DeBruijn).unwrap(), 8);
        assert_eq!(c_value(1, 8, 5, Family::Kautz).unwrap(), 4);
        assert_eq!(c_value(4, 8, 5, Family::Kautz).unwrap(), 2);
        assert_eq!(c_value(1, 3, 2, Family::Kautz).unwrap(), 3);
        assert_eq!(c_value(2, 3, 2, Family::Kautz).unwrap(), 1);
        assert!(c_value(6, 7, 2, Family::DeBruijn).is_err());
    }

    #[test]
    fn sand_dune_examples() {
        assert_eq!(factors(&sand_dune_group(4, 2).unwrap()), vec![2, 4]);
        assert_eq!(factors(&sand_dune_group(7, 2).unwrap()), vec![7, 7]);
        let g = sand_dune_group(6, 2).unwrap();
        assert_eq!(factors(&g), vec![2, 2, 6]);
        assert_eq!(g.order().unwrap(), BigUint::from(24u32));
        assert!(sand_dune_group(6, 1).is_err());
    }

    #[test]
    fn sandpile_db_examples() {
        assert_eq!(factors(&sandpile_group_db(4, 3).unwrap()), vec![4]);
        assert_eq!(factors(&sandpile_group_db(7, 2).unwrap()), vec![7]);
        assert!(sandpile_group_db(2, 2).unwrap().is_trivial());
        assert!(sandpile_group_db(3, 2).unwrap().is_trivial());
    }

    #[test]
    fn sandpile_kautz_examples() {
        assert_eq!(factors(&sandpile_group_kautz(3, 2).unwrap()), vec![3]);
        assert_eq!(factors(&sandpile_group_kautz(5, 2).unwrap()), vec![3]);
        assert!(sandpile_group_kautz(2, 2).unwrap().is_trivial());
        assert!(sandpile_group_kautz(3, 1).is_err());
    }

    #[test]
    fn relation_matrix_examples() {
        let m = epsilon_relation_matrix(3, 2).unwrap();
        assert_eq!(
            m,
            IntegerMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap()
        );
        let m = epsilon_relation_matrix(4, 2).unwrap();
        assert_eq!(
            m,
            IntegerMatrix::from_rows(&[vec![2, -1, 0], vec![0, 2, 0], vec![0, -1, 2]]).unwrap()
        );
        let m = epsilon_relation_matrix(5, 6).unwrap();
        assert_eq!(m, IntegerMatrix::diagonal_matrix(&[5, 5, 5, 5]));
        assert_eq!(factors(&m.finite_part(4).unwrap()), vec![5, 5, 5, 5]);
    }

    #[test]
    fn epsilon_coordinate_examples() {
        let c = epsilon_coordinates_of_ev(1, 4, 2).unwrap();
        assert_eq!(
            c.iter().collect::<Vec<_>>(),
            vec![(1, &rat(1, 2)), (2, &rat(1, 4))]
        );
        let c = epsilon_coordinates_of_ev(1, 7, 2).unwrap();
        assert_eq!(
            c.iter().collect::<Vec<_>>(),
            vec![(1, &rat(4, 7)), (2, &rat(2, 7)), (4, &rat(1, 7))]
        );
        let c = epsilon_coordinates_of_ev(1, 3, 2).unwrap();
        assert_eq!((c.coefficient(1), c.coefficient(2)), (rat(2, 3), rat(1, 3)));
        assert!(epsilon_coordinates_of_ev(0, 3, 2).is_err());
    }

    #[test]
    fn epsilon_coordinates_expand_back_to_ev() {
        for n in 2..=24u64 {
            for d in 2..=6u64 {
                for v in 1..n {
                    let back = epsilon_coordinates_of_ev(v, n, d).unwrap().to_e_basis();
                    let expect: BTreeMap<u64, BigRational> = [(v, BigRational::one())].into();
                    assert_eq!(back, expect, "n={n} d={d} v={v}");
                }
            }
        }
    }

    #[test]
    fn order_of_ev_examples() {
        assert_eq!(order_of_ev(1, 4, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(order_of_ev(1, 7, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(order_of_ev(1, 6, 2).unwrap(), BigUint::from(6u32));
        // the orbit of 1 in Z_9 under 3 reaches 0 after two steps
        assert_eq!(order_of_ev(1, 9, 3).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn membership_examples() {
        let el = |pairs: &[(u64, i64)]| {
            pairs
                .iter()
                .map(|&(v, a)| (v, BigInt::from(a)))
                .collect::<BTreeMap<_, _>>()
        };
        assert!(!membership_in_sandpile(&el(&[(1, 1)]), 4));
        assert!(membership_in_sandpile(&el(&[(1, 1), (3, 1)]), 4));
        for v in 1..9 {
            assert!(membership_in_sandpile(&el(&[(v, 9)]), 9));
        }
        for n in 2..40 {
            for d in 2..10 {
                assert!((1..n).all(|v| relation_is_in_kernel(v, n, d)));
            }
        }
    }
}
