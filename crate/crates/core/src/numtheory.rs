//! Small integer helpers shared by the group and graph modules.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Prime factorization by trial division, ascending primes with exponents.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && factor_u64(n) == [(n, 1)]
}

/// Refines a multiset of integers `> 1` into a pairwise coprime base such that
/// every input is a product of powers of base elements.
pub(crate) fn coprime_base(inputs: &[BigUint]) -> Vec<BigUint> {
    let one = BigUint::one();
    let mut base: Vec<BigUint> = Vec::new();
    let mut work: Vec<BigUint> = inputs.iter().filter(|x| **x > one).cloned().collect();
    while let Some(x) = work.pop() {
        if x <= one {
            continue;
        }
        let hit = base.iter().enumerate().find_map(|(i, b)| {
            let g = x.gcd(b);
            (g > one).then_some((i, g))
        });
        match hit {
            Some((i, g)) => {
                let b = base.swap_remove(i);
                work.push(&b / &g);
                work.push(&x / &g);
                work.push(g);
            }
            None => base.push(x),
        }
    }
    base.sort();
    base
}

/// Multiplicity of `b` in `x`, returning the exponent and the cofactor.
pub(crate) fn split_power(x: &BigUint, b: &BigUint) -> (u32, BigUint) {
    let mut e = 0;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(b);
        if r != BigUint::default() {
            return (e, rest);
        }
        rest = q;
        e += 1;
    }
}

/// Largest power of `p` dividing `n` together with its exponent.
pub(crate) fn prime_power_part(n: u64, p: u64) -> (u64, u32) {
    let mut pi = 1;
    let mut e = 0;
    let mut r = n;
    while r.is_multiple_of(p) {
        r /= p;
        pi *= p;
        e += 1;
    }
    (pi, e)
}
