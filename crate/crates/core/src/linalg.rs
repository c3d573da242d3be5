//! Exact dense integer linear algebra: Smith Normal Form with unimodular
//! transforms, Bareiss determinants, Smith groups and cokernel element orders.
//!
//! Groups are read with the row convention: an `m × n` matrix `M` presents
//! `Z^n / (row span of M)`.
//!
//! Elimination first runs on checked `i128` arithmetic and restarts on
//! [`BigInt`] if any intermediate value overflows, so results are always exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::AbelianGroup;
use crate::error::{invalid, Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal in divisor-chain
/// order (nonnegative, zeros last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            ));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged rows");
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn diagonal_matrix<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Removes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                entries.push(self[(i, j)].clone());
            }
        }
        Self {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Full Smith Normal Form with transforms.
    pub fn smith_normal_form(&self) -> SnfResult {
        let mut e = Elimination::<BigInt>::new(self.rows, self.cols, big_entries(self), true);
        e.diagonalize().expect("BigInt elimination cannot overflow");
        e.fix_divisor_chain();
        let (u, v) = (e.u.take().unwrap(), e.v.take().unwrap());
        SnfResult {
            u: IntegerMatrix::new(self.rows, self.rows, u).unwrap(),
            s: IntegerMatrix::new(self.rows, self.cols, e.a).unwrap(),
            v: IntegerMatrix::new(self.cols, self.cols, v).unwrap(),
        }
    }

    /// Nonzero invariant factors `d_1 | d_2 | …`, including any leading 1s.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let mut diag: Vec<BigUint> = pivots(self)
            .into_iter()
            .map(|x| x.magnitude().clone())
            .collect();
        divisor_chain(&mut diag);
        diag
    }

    pub fn rank(&self) -> usize {
        pivots(self).len()
    }

    /// `Z^n / (row span)` as a finitely generated abelian group.
    pub fn smith_group(&self, ambient_dim: usize) -> Result<AbelianGroup> {
        if self.cols != ambient_dim {
            return invalid(format!(
                "matrix has {} columns but the ambient lattice is Z^{ambient_dim}",
                self.cols
            ));
        }
        let diag: Vec<BigUint> = pivots(self)
            .into_iter()
            .map(|x| x.magnitude().clone())
            .collect();
        Ok(AbelianGroup::with_free_rank(
            ambient_dim - diag.len(),
            &diag,
        ))
    }

    /// Torsion part of [`smith_group`](Self::smith_group).
    pub fn finite_part(&self, ambient_dim: usize) -> Result<AbelianGroup> {
        Ok(self.smith_group(ambient_dim)?.torsion())
    }

    /// Exact determinant.
    ///
    /// Fraction-free (Bareiss) elimination on `i128` when the Hadamard bound
    /// is small enough; otherwise the determinant is recovered from its
    /// residues modulo 31-bit primes whose product exceeds twice that bound.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return invalid(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            ));
        }
        let Some(small) = small_entries(self).filter(|a| a.iter().all(|x| x.abs() < 1 << 60))
        else {
            return self.determinant_bareiss();
        };
        let bits = hadamard_bits(self.rows, &small);
        // Bareiss intermediates are minors, so products stay below H².
        if bits < 63 {
            if let Some(d) = bareiss(self.rows, small.clone()) {
                return Ok(BigInt::from(d));
            }
        }
        Ok(modular_determinant(self.rows, &small, bits))
    }

    /// Bareiss elimination carried out entirely in arbitrary precision.
    pub fn determinant_bareiss(&self) -> Result<BigInt> {
        if !self.is_square() {
            return invalid(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            ));
        }
        Ok(bareiss(self.rows, big_entries(self)).expect("BigInt elimination cannot overflow"))
    }

    /// Order of `v` in `Z^n / (row span)`.
    ///
    /// With `U·M·V = S`, the row span of `M` is the row span of `S·V⁻¹`, so in
    /// the coordinates `w = v·V` membership is `s_i | w_i` for every `i`.
    pub fn cokernel_element_order(&self, v: &[BigInt]) -> Result<BigUint> {
        self.check_vector(v)?;
        if v.iter().all(Zero::is_zero) {
            return Ok(BigUint::one());
        }
        element_order(&self.smith_normal_form(), v)
    }

    /// Orders of several vectors, sharing one Smith decomposition.
    pub fn cokernel_element_orders(&self, vs: &[Vec<BigInt>]) -> Result<Vec<BigUint>> {
        for v in vs {
            self.check_vector(v)?;
        }
        let snf = self.smith_normal_form();
        vs.iter().map(|v| element_order(&snf, v)).collect()
    }

    fn check_vector(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.cols {
            return invalid(format!(
                "vector has length {} but the matrix has {} columns",
                v.len(),
                self.cols
            ));
        }
        Ok(())
    }

    /// Text form: a `rows cols` header line, then one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for IntegerMatrix {
    type Err = Error;

    /// Parses the text form; blank lines are skipped and errors carry the
    /// 1-based line number.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line, message: String| Error::Parse { line, message };
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(hline, format!("bad header: {e}")))?;
        let [rows, cols] = dims[..] else {
            return Err(parse_err(hline, "header must be `rows cols`".into()));
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (ln, line) = lines.next().ok_or_else(|| {
                parse_err(hline + r + 1, format!("expected {rows} rows, found {r}"))
            })?;
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(BigInt::from_str)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| parse_err(ln, format!("bad integer: {e}")))?;
            if row.len() != cols {
                return Err(parse_err(
                    ln,
                    format!("expected {cols} entries, found {}", row.len()),
                ));
            }
            entries.extend(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing data after the last row".into()));
        }
        Self::new(rows, cols, entries)
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", line.join(", "))?;
        }
        Ok(())
    }
}

/// In-place gcd/lcm passes turning a list of nonzero values into a divisor
/// chain with the same product.
pub(crate) fn divisor_chain(diag: &mut [BigUint]) {
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = &diag[i] / &g * &diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
}

fn big_entries(m: &IntegerMatrix) -> Vec<BigInt> {
    m.entries.clone()
}

fn small_entries(m: &IntegerMatrix) -> Option<Vec<i128>> {
    m.entries.iter().map(ToPrimitive::to_i128).collect()
}

fn element_order(snf: &SnfResult, v: &[BigInt]) -> Result<BigUint> {
    let cols = snf.v.cols;
    let mut order = BigUint::one();
    for j in 0..cols {
        let w: BigInt = (0..cols).map(|i| &v[i] * &snf.v[(i, j)]).sum();
        let s = if j < snf.s.rows {
            snf.s[(j, j)].magnitude().clone()
        } else {
            BigUint::zero()
        };
        if s.is_zero() {
            if !w.is_zero() {
                return Err(Error::InfiniteElementOrder);
            }
            continue;
        }
        let local = &s / s.gcd(w.magnitude());
        order = order.lcm(&local);
    }
    Ok(order)
}

/// Hadamard bound `∏ ‖row‖₂`, rounded up, as a bit count. Entries must be
/// below `2^60` in magnitude.
fn hadamard_bits(n: usize, a: &[i128]) -> u64 {
    let mut bits = 0u64;
    for row in a.chunks_exact(n.max(1)).take(n) {
        let norm2: BigUint = row.iter().map(|&x| BigUint::from((x * x) as u128)).sum();
        if norm2.is_zero() {
            return 0;
        }
        // ceil(log2 sqrt(norm2)) <= ceil(bits(norm2) / 2)
        bits += norm2.bits().div_ceil(2);
    }
    bits
}

const MODULUS_START: u64 = 1 << 31;

fn next_prime_below(mut p: u64) -> u64 {
    loop {
        p -= 1;
        if crate::numtheory::is_prime(p) {
            return p;
        }
    }
}

/// Residue arithmetic modulo a prime below 2^31 with Barrett reduction.
#[derive(Clone, Copy)]
struct Barrett {
    p: u64,
    mu: u64,
}

impl Barrett {
    fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 31);
        Barrett {
            p,
            mu: (u128::from(u64::MAX) / u128::from(p)) as u64,
        }
    }

    /// `x mod p` for `x < 2^62`.
    #[inline]
    fn reduce(self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.mu)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }
}

fn det_mod(n: usize, entries: &[i128], p: u64) -> u64 {
    let f = Barrett::new(p);
    let mut a: Vec<u64> = entries
        .iter()
        .map(|&x| x.rem_euclid(p as i128) as u64)
        .collect();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = (p - det) % p;
        }
        let lead = a[k * n + k];
        det = f.mul(det, lead);
        let inv = pow_mod(lead, p - 2, p);
        let (top, rest) = a.split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n + k + 1..k * n + n];
        for row in rest.chunks_exact_mut(n) {
            let c = f.mul(row[k], inv);
            if c == 0 {
                continue;
            }
            let c = p - c;
            for (x, &y) in row[k + 1..].iter_mut().zip(pivot_row) {
                *x = f.reduce(*x + c * y);
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Determinant by Chinese remaindering over enough 31-bit primes to cover
/// `[-H, H]` for the Hadamard bound `H`.
fn modular_determinant(n: usize, entries: &[i128], hadamard_bits: u64) -> BigInt {
    let needed = hadamard_bits + 2;
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    let mut p = MODULUS_START;
    while modulus.bits() <= needed {
        p = next_prime_below(p);
        let r = BigInt::from(det_mod(n, entries, p));
        // value' ≡ value (mod modulus), value' ≡ r (mod p)
        let pb = BigInt::from(p);
        let diff = (&r - &value).mod_floor(&pb);
        let inv = BigInt::from(pow_mod(modulus.mod_floor(&pb).to_u64().unwrap(), p - 2, p));
        let t = (diff * inv).mod_floor(&pb);
        value += &modulus * t;
        modulus *= pb;
    }
    if &value * 2 > modulus {
        value - modulus
    } else {
        value
    }
}

/// Nonzero diagonal entries after diagonalization (not yet a divisor chain).
fn pivots(m: &IntegerMatrix) -> Vec<BigInt> {
    if let Some(small) = small_entries(m) {
        let mut e = Elimination::<i128>::new(m.rows, m.cols, small, false);
        if let Some(r) = e.diagonalize() {
            return (0..r).map(|i| BigInt::from(e.a[i * m.cols + i])).collect();
        }
    }
    let mut e = Elimination::<BigInt>::new(m.rows, m.cols, big_entries(m), false);
    let r = e.diagonalize().expect("BigInt elimination cannot overflow");
    (0..r).map(|i| e.a[i * m.cols + i].clone()).collect()
}

/// Integer scalar for elimination; checked operations return `None` on
/// overflow so the caller can retry with arbitrary precision.
trait Scalar: Clone + PartialEq + fmt::Debug + Zero + One {
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn is_neg(&self) -> bool;
    fn checked_negate(&self) -> Option<Self>;
    /// Truncating quotient.
    fn quot(&self, d: &Self) -> Self;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// `(self * a - b * c) / d`, exact.
    fn bareiss_step(&self, a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
}

impl Scalar for i128 {
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn checked_negate(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn bareiss_step(&self, a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        let num = self.checked_mul(*a)?.checked_sub(b.checked_mul(*c)?)?;
        Some(num / d)
    }
}

impl Scalar for BigInt {
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn is_neg(&self) -> bool {
        self.sign() == Sign::Minus
    }
    fn checked_negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn bareiss_step(&self, a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some((self * a - b * c) / d)
    }
}

fn bareiss<R: Scalar>(n: usize, mut a: Vec<R>) -> Option<R> {
    if n == 0 {
        return Some(R::one());
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Some(R::zero());
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i * n + j].bareiss_step(
                    &a[k * n + k],
                    &a[i * n + k],
                    &a[k * n + j],
                    &prev,
                )?;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if negate {
        det.checked_negate()
    } else {
        Some(det)
    }
}

/// Row/column elimination state, optionally tracking `U` and `V`.
struct Elimination<R> {
    rows: usize,
    cols: usize,
    a: Vec<R>,
    u: Option<Vec<R>>,
    v: Option<Vec<R>>,
    rank: usize,
}

fn identity_vec<R: Scalar>(n: usize) -> Vec<R> {
    let mut m = vec![R::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = R::one();
    }
    m
}

impl<R: Scalar> Elimination<R> {
    fn new(rows: usize, cols: usize, a: Vec<R>, track: bool) -> Self {
        Self {
            rows,
            cols,
            a,
            u: track.then(|| identity_vec(rows)),
            v: track.then(|| identity_vec(cols)),
            rank: 0,
        }
    }

    fn at(&self, i: usize, j: usize) -> &R {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
        if let Some(u) = &mut self.u {
            for c in 0..self.rows {
                u.swap(i * self.rows + c, j * self.rows + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
        if let Some(v) = &mut self.v {
            for r in 0..self.cols {
                v.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// `row[dst] -= q * row[src]`; columns before `from` are known zero in
    /// both rows.
    fn row_sub(&mut self, dst: usize, src: usize, q: &R, from: usize) -> Option<()> {
        let c = self.cols;
        for j in from..c {
            let s = &self.a[src * c + j];
            if !s.is_zero() {
                self.a[dst * c + j] = self.a[dst * c + j].sub_mul(q, s)?;
            }
        }
        if let Some(u) = &mut self.u {
            let n = self.rows;
            for j in 0..n {
                let s = &u[src * n + j];
                if !s.is_zero() {
                    u[dst * n + j] = u[dst * n + j].sub_mul(q, s)?;
                }
            }
        }
        Some(())
    }

    /// `col[dst] -= q * col[src]`; rows before `from` are known zero in both
    /// columns.
    fn col_sub(&mut self, dst: usize, src: usize, q: &R, from: usize) -> Option<()> {
        let c = self.cols;
        for i in from..self.rows {
            let s = &self.a[i * c + src];
            if !s.is_zero() {
                self.a[i * c + dst] = self.a[i * c + dst].sub_mul(q, s)?;
            }
        }
        if let Some(v) = &mut self.v {
            for i in 0..c {
                let s = &v[i * c + src];
                if !s.is_zero() {
                    v[i * c + dst] = v[i * c + dst].sub_mul(q, s)?;
                }
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            let k = i * self.cols + j;
            self.a[k] = self.a[k].checked_negate()?;
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.rows {
                let k = i * self.rows + j;
                u[k] = u[k].checked_negate()?;
            }
        }
        Some(())
    }

    /// Diagonalizes in place and returns the rank. Pivots are the smallest
    /// nonzero entries in absolute value; diagonal entries end up positive.
    fn diagonalize(&mut self) -> Option<usize> {
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.min_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.at(i, t).quot(self.at(t, t));
                    if !q.is_zero() {
                        self.row_sub(i, t, &q, t)?;
                    }
                    dirty |= !self.at(i, t).is_zero();
                }
                for j in t + 1..self.cols {
                    if self.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.at(t, j).quot(self.at(t, t));
                    if !q.is_zero() {
                        self.col_sub(j, t, &q, t)?;
                    }
                    dirty |= !self.at(t, j).is_zero();
                }
                if !dirty {
                    break;
                }
                // a remainder smaller than the pivot is left in row or column t
                let mut best: Option<(bool, usize)> = None;
                let mut best_val: Option<R> = None;
                for i in t + 1..self.rows {
                    let x = self.at(i, t);
                    if !x.is_zero()
                        && best_val
                            .as_ref()
                            .is_none_or(|b| x.cmp_abs(b) == Ordering::Less)
                    {
                        best = Some((true, i));
                        best_val = Some(x.clone());
                    }
                }
                for j in t + 1..self.cols {
                    let x = self.at(t, j);
                    if !x.is_zero()
                        && best_val
                            .as_ref()
                            .is_none_or(|b| x.cmp_abs(b) == Ordering::Less)
                    {
                        best = Some((false, j));
                        best_val = Some(x.clone());
                    }
                }
                match best {
                    Some((true, i)) => self.swap_rows(t, i),
                    Some((false, j)) => self.swap_cols(t, j),
                    None => unreachable!("dirty implies a nonzero remainder"),
                }
            }
            if self.at(t, t).is_neg() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        self.rank = t;
        Some(t)
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.cmp_abs(self.at(bi, bj)) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                    if x.cmp_abs(&R::one()) == Ordering::Equal {
                        return best;
                    }
                }
            }
        }
        best
    }
}

impl Elimination<BigInt> {
    /// Turns the positive diagonal into a divisor chain with unimodular 2×2
    /// moves: for `g = s·a + t·b`,
    /// `[[s, t], [-b/g, a/g]] · diag(a, b) · [[1, -t·b/g], [1, s·a/g]] = diag(g, ab/g)`.
    fn fix_divisor_chain(&mut self) {
        let r = self.rank;
        let c = self.cols;
        for i in 0..r {
            for j in i + 1..r {
                let a = self.a[i * c + i].clone();
                let b = self.a[j * c + j].clone();
                if (&b % &a).is_zero() {
                    continue;
                }
                let eg = a.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let (ag, bg) = (&a / &g, &b / &g);
                self.a[i * c + i] = g.clone();
                self.a[j * c + j] = &a * &bg;
                if let Some(u) = &mut self.u {
                    let n = self.rows;
                    for k in 0..n {
                        let (ui, uj) = (u[i * n + k].clone(), u[j * n + k].clone());
                        u[i * n + k] = &s * &ui + &t * &uj;
                        u[j * n + k] = -&bg * &ui + &ag * &uj;
                    }
                }
                if let Some(v) = &mut self.v {
                    for k in 0..c {
                        let (vi, vj) = (v[k * c + i].clone(), v[k * c + j].clone());
                        v[k * c + i] = &vi + &vj;
                        v[k * c + j] = -(&t * &bg) * &vi + (&s * &ag) * &vj;
                    }
                }
            }
        }
    }
}
