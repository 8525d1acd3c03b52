//! Exact linear algebra over the integers and the rationals.
//!
//! Everything here is exact. Integer ranks use fraction-free (Bareiss)
//! elimination in `i128`, falling back to arbitrary precision when an
//! intermediate minor overflows. Rational routines work on
//! [`BigRational`] and are meant for the small systems that appear in the
//! Clebsch–Gordan and semigroup code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense square matrix with `i64` entries.
///
/// The Lie algebra code works in the defining representation where every
/// matrix of interest has small integer entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a diagonal matrix.
    pub fn diagonal(diag: &[i64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds a matrix from its rows. Panics if the rows do not form a square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend_from_slice(row);
        }
        IntMatrix { n, data }
    }

    /// Builds a matrix from a sparse list of `(row, col, value)` entries.
    pub fn from_entries(n: usize, entries: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zeros(n);
        for &(i, j, v) in entries {
            m.add_at(i, j, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] += v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if v != 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn scale(&self, c: i64) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    /// Matrix commutator `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &IntMatrix) -> IntMatrix {
        &(self * other) - &(other * self)
    }

    /// Returns `Some(c)` when `other = c · self`, with `self` nonzero.
    pub fn proportionality(&self, other: &IntMatrix) -> Option<Rational> {
        let (i, &a) = self.data.iter().enumerate().find(|(_, &x)| x != 0)?;
        let b = other.data[i];
        let ok = self
            .data
            .iter()
            .zip(&other.data)
            .all(|(&x, &y)| (x as i128) * (b as i128) == (y as i128) * (a as i128));
        ok.then(|| frac(b, a))
    }

    /// Matrix power with nonnegative exponent.
    pub fn pow(&self, k: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact rank of the matrix.
    pub fn rank(&self) -> usize {
        rank_i64(&self.rows())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({}x{})", self.n, self.n)?;
        for row in self.data.chunks(self.n) {
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b != 0 {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(-1)
    }
}

/// Fraction-free elimination in `i128`. Returns `None` on overflow.
fn bareiss_rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = m[0].len();
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c];
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let lead = row[c];
            for j in c + 1..cols {
                let a = row[j].checked_mul(piv)?;
                let b = lead.checked_mul(pivot_row[j])?;
                row[j] = a.checked_sub(b)? / prev;
            }
            row[c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

/// Fraction-free elimination over arbitrary precision integers.
fn bareiss_rank_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = &row[j] * &piv - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Exact rank of an integer matrix given by rows.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let fast: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(r) = bareiss_rank_i128(fast) {
        return r;
    }
    let big = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank_big(big)
}

/// Exact rank of a rational matrix given by rows.
pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let small: Option<Vec<Vec<i64>>> = big
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64()).collect())
        .collect();
    match small {
        Some(s) => rank_i64(&s),
        None => bareiss_rank_big(big),
    }
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

/// Rank of an integer matrix over the prime field `F_p`.
///
/// This is a lower bound for the rank over the rationals of any rational
/// matrix whose reduction modulo `p` is the given one.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % p).collect())
        .collect();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in &mut m[r][c..cols] {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    add_mod(a, p - b % p, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce_mod(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Reduced row echelon form. Returns the reduced rows and the pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let nrows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of the right kernel `{x : A x = 0}` of a matrix with `ncols` columns.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b`, returning one solution (free variables set to zero)
/// or `None` when the system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Outcome of [`maximize`].
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Unbounded,
}

/// Outcome of [`optimize`].
#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Optimal { value: Rational, x: Vec<Rational> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    z: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.z.len() - 1
    }

    fn pivot(&mut self, li: usize, enter: usize) {
        let inv = self.rows[li][enter].recip();
        for x in self.rows[li].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.rows[li].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == li || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
        if !self.z[enter].is_zero() {
            let f = self.z[enter].clone();
            for (x, y) in self.z.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
        self.basis[li] = enter;
    }

    /// Runs Bland's rule over the first `cols` columns; false when unbounded.
    fn run(&mut self, cols: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(enter) = (0..cols).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[rhs] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((li, _)) = leave else {
                return false;
            };
            self.pivot(li, enter);
        }
    }

    /// Sets the objective `max c·x` and prices out the basic columns.
    fn set_objective(&mut self, c: &[Rational]) {
        self.z.iter_mut().for_each(|x| *x = Rational::zero());
        for (j, cj) in c.iter().enumerate() {
            self.z[j] = -cj.clone();
        }
        for i in 0..self.rows.len() {
            let bv = self.basis[i];
            if !self.z[bv].is_zero() {
                let f = self.z[bv].clone();
                for (x, y) in self.z.iter_mut().zip(&self.rows[i]) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
}

/// Exact two-phase simplex method for `max c·x` subject to `A x ≤ b`,
/// `x ≥ 0`, with no sign condition on `b`. Uses Bland's rule.
pub fn optimize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpResult {
    let m = a.len();
    let n = c.len();
    let art: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let cols = n + m + art.len();
    let width = cols + 1;
    let mut basis = Vec::with_capacity(m);
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rational::one();
            row[width - 1] = b[i].clone();
            if let Some(k) = art.iter().position(|&r| r == i) {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                row[n + m + k] = Rational::one();
                basis.push(n + m + k);
            } else {
                basis.push(n + i);
            }
            row
        })
        .collect();
    let mut tab = Tableau {
        rows,
        z: vec![Rational::zero(); width],
        basis,
    };
    if !art.is_empty() {
        let mut phase1 = vec![Rational::zero(); cols];
        for x in phase1.iter_mut().skip(n + m) {
            *x = -Rational::one();
        }
        tab.set_objective(&phase1);
        tab.run(cols);
        if !tab.z[width - 1].is_zero() {
            return LpResult::Infeasible;
        }
        // Drive the remaining artificial variables out of the basis.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= n + m {
                match (0..n + m).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
    tab.set_objective(c);
    if !tab.run(n + m) {
        return LpResult::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.rows[i][width - 1].clone();
        }
    }
    LpResult::Optimal {
        value: tab.z[width - 1].clone(),
        x,
    }
}

/// Exact simplex method for `max c·x` subject to `A x ≤ b`, `x ≥ 0`,
/// with `b ≥ 0` so that the origin is feasible.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    assert!(
        b.iter().all(|x| !x.is_negative()),
        "origin must be feasible"
    );
    match optimize(c, a, b) {
        LpResult::Optimal { value, x } => LpOutcome::Optimal { value, x },
        LpResult::Unbounded => LpOutcome::Unbounded,
        LpResult::Infeasible => unreachable!("origin is feasible"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qrows(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![1, 2], vec![3, 4]]), 2);
        assert_eq!(rank_i64(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 1]]), 2);
    }

    #[test]
    fn rank_falls_back_on_overflow() {
        let big = 1i64 << 62;
        let rows = vec![
            vec![big, big - 1, 3],
            vec![big - 3, big, 7],
            vec![5, big - 11, big],
        ];
        let exact = bareiss_rank_big(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        assert_eq!(rank_i64(&rows), exact);
        assert_eq!(exact, 3);
    }

    #[test]
    fn modular_rank_bounds_rational_rank() {
        let rows = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
        let p = (1u64 << 61) - 1;
        let modrows: Vec<Vec<u64>> = rows
            .iter()
            .map(|r: &Vec<i64>| r.iter().map(|&x| reduce_mod(x, p)).collect())
            .collect();
        assert_eq!(rank_mod_p(&modrows, p), 2);
        assert_eq!(rank_i64(&rows), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let a = qrows(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![rat(1), rat(-1), rat(1)]);
        let x = solve(&a, &[rat(2), rat(3)]).unwrap();
        assert_eq!(&x[0] + &x[1], rat(2));
        assert!(solve(&qrows(&[&[1, 1], &[1, 1]]), &[rat(1), rat(2)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = qrows(&[&[2, -1], &[-1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(
            inv,
            vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]]
        );
        assert!(inverse(&qrows(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn simplex_small_lp() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let c = vec![rat(1), rat(1)];
        let a = qrows(&[&[1, 2], &[3, 1]]);
        let b = vec![rat(4), rat(6)];
        match maximize(&c, &a, &b) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, frac(14, 5));
                assert_eq!(x, vec![frac(8, 5), frac(6, 5)]);
            }
            LpOutcome::Unbounded => panic!("bounded LP"),
        }
        let unb = maximize(&[rat(1)], &qrows(&[&[-1]]), &[rat(0)]);
        assert_eq!(unb, LpOutcome::Unbounded);
    }

    #[test]
    fn two_phase_simplex() {
        // max −x − y s.t. x + y ≥ 2, x ≤ 3, y ≤ 1
        let c = vec![rat(-1), rat(-1)];
        let a = qrows(&[&[-1, -1], &[1, 0], &[0, 1]]);
        let b = vec![rat(-2), rat(3), rat(1)];
        match optimize(&c, &a, &b) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(-2)),
            other => panic!("unexpected {other:?}"),
        }
        // x ≥ 2 and x ≤ 1
        let a = qrows(&[&[-1], &[1]]);
        assert_eq!(
            optimize(&[rat(1)], &a, &[rat(-2), rat(1)]),
            LpResult::Infeasible
        );
        // min x s.t. x ≥ 3/2 via max −x; redundant equal rows
        let a = qrows(&[&[-2], &[-2]]);
        match optimize(&[rat(-1)], &a, &[rat(-3), rat(-3)]) {
            LpResult::Optimal { value, x } => {
                assert_eq!(value, frac(-3, 2));
                assert_eq!(x, vec![frac(3, 2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let a = qrows(&[&[-1, 0]]);
        assert_eq!(
            optimize(&[rat(0), rat(1)], &a, &[rat(-1)]),
            LpResult::Unbounded
        );
    }

    #[test]
    fn bracket_and_proportionality() {
        let e = IntMatrix::from_entries(2, &[(0, 1, 1)]);
        let f = IntMatrix::from_entries(2, &[(1, 0, 1)]);
        let h = e.bracket(&f);
        assert_eq!(h, IntMatrix::diagonal(&[1, -1]));
        assert_eq!(e.proportionality(&h.bracket(&e)), Some(rat(2)));
        assert_eq!(e.proportionality(&f), None);
    }
}
