//! The `SL(2)³` tensor semigroup and the product criterion in the
//! invariant ring `C[SL(2)³]^{diag SL(2)}`.
//!
//! `V(m)` has the basis `v_0, …, v_m`, ordered from highest to lowest
//! weight, with `H v_i = (m − 2i) v_i`, `F v_i = v_{i+1}` and
//! `E v_i = i(m − i + 1) v_{i−1}`. Tensor products use row-major indices:
//! `v_i ⊗ w_j` sits at `i·(n + 1) + j`.

use crate::error::{Error, Result};
use crate::linalg::{kernel, rat, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Highest weights `(m, m′, m″)` of the three factors of `SL(2)³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TTriple {
    pub m: u32,
    pub m1: u32,
    pub m2: u32,
}

impl TTriple {
    pub fn new(m: u32, m1: u32, m2: u32) -> Self {
        TTriple { m, m1, m2 }
    }

    pub fn entries(&self) -> [u32; 3] {
        [self.m, self.m1, self.m2]
    }

    pub fn add(&self, other: &TTriple) -> TTriple {
        TTriple::new(self.m + other.m, self.m1 + other.m1, self.m2 + other.m2)
    }

    /// `self ≥ other`: all differences are nonnegative and even.
    pub fn dominates(&self, other: &TTriple) -> bool {
        self.entries()
            .iter()
            .zip(other.entries())
            .all(|(&a, b)| a >= b && (a - b) % 2 == 0)
    }
}

impl fmt::Display for TTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.m1, self.m2)
    }
}

/// Clebsch–Gordan rule: `V(c) ⊂ V(a) ⊗ V(b)`.
pub fn cg_allowed(a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a.abs_diff(b) <= c && c <= a + b
}

/// Membership in the tensor semigroup `T`.
pub fn in_tensor_semigroup(t: &TTriple) -> bool {
    cg_allowed(t.m, t.m1, t.m2)
}

/// Every element of `T` with entries at most `max_entry`, sorted.
pub fn tensor_semigroup_upto(max_entry: u32) -> Vec<TTriple> {
    let mut out = Vec::new();
    for m in 0..=max_entry {
        for m1 in 0..=max_entry {
            for m2 in 0..=max_entry {
                let t = TTriple::new(m, m1, m2);
                if in_tensor_semigroup(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn e_coeff(m: u32, i: u32) -> i64 {
    (i as i64) * (m as i64 - i as i64 + 1)
}

/// Normalized equivariant projection `V(m) ⊗ V(n) → V(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CgProjection {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    /// `(k + 1) × (m + 1)(n + 1)` matrix in the weight bases.
    pub matrix: Vec<Vec<Rational>>,
}

fn normalize(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x = &*x / &first;
        }
    }
}

type Cache<K, V> = OnceLock<Mutex<HashMap<K, Arc<V>>>>;

fn cache<K: std::hash::Hash + Eq + Copy, V>(
    cell: &'static Cache<K, V>,
    key: K,
    build: impl FnOnce() -> V,
) -> Arc<V> {
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("cache poisoned").get(&key) {
        return v.clone();
    }
    let value = Arc::new(build());
    map.lock()
        .expect("cache poisoned")
        .entry(key)
        .or_insert(value)
        .clone()
}

/// The equivariant projection `π_{m,n}^k`, obtained by solving
/// `P (X ⊗ 1 + 1 ⊗ X) = X P` for `X = E, F` exactly and normalizing the
/// first nonzero entry (row-major) to 1.
pub fn cg_projection(m: u32, n: u32, k: u32) -> Result<Arc<CgProjection>> {
    if !cg_allowed(m, n, k) {
        return Err(Error::NotInTensorSemigroup(m, n, k));
    }
    static CACHE: Cache<(u32, u32, u32), CgProjection> = OnceLock::new();
    Ok(cache(&CACHE, (m, n, k), || build_projection(m, n, k)))
}

fn build_projection(m: u32, n: u32, k: u32) -> CgProjection {
    let w = (n + 1) as usize;
    let cols = ((m + 1) * (n + 1)) as usize;
    // Unknowns: entries P[c][i,j] with matching weights.
    let mut index = HashMap::new();
    let mut unknowns = Vec::new();
    for c in 0..=k {
        for i in 0..=m {
            for j in 0..=n {
                if (k as i64 - 2 * c as i64)
                    == (m as i64 - 2 * i as i64) + (n as i64 - 2 * j as i64)
                {
                    index.insert((c, i, j), unknowns.len());
                    unknowns.push((c, i, j));
                }
            }
        }
    }
    let nvars = unknowns.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // Entry (c, (i, j)) of P·X_{mn} − X_k·P for X = F and X = E.
    for c in 0..=k {
        for i in 0..=m {
            for j in 0..=n {
                let mut f_row = vec![Rational::zero(); nvars];
                let mut e_row = vec![Rational::zero(); nvars];
                // (P F)[c, (i,j)] = P[c, (i+1, j)] + P[c, (i, j+1)]
                if let Some(&u) = index.get(&(c, i + 1, j)) {
                    f_row[u] += Rational::one();
                }
                if let Some(&u) = index.get(&(c, i, j + 1)) {
                    f_row[u] += Rational::one();
                }
                // (F P)[c, (i,j)] = P[c−1, (i,j)]
                if c > 0 {
                    if let Some(&u) = index.get(&(c - 1, i, j)) {
                        f_row[u] -= Rational::one();
                    }
                }
                // (P E)[c, (i,j)] = e(m,i) P[c, (i−1, j)] + e(n,j) P[c, (i, j−1)]
                if i > 0 {
                    if let Some(&u) = index.get(&(c, i - 1, j)) {
                        e_row[u] += rat(e_coeff(m, i));
                    }
                }
                if j > 0 {
                    if let Some(&u) = index.get(&(c, i, j - 1)) {
                        e_row[u] += rat(e_coeff(n, j));
                    }
                }
                // (E P)[c, (i,j)] = e(k, c+1) P[c+1, (i,j)]
                if let Some(&u) = index.get(&(c + 1, i, j)) {
                    e_row[u] -= rat(e_coeff(k, c + 1));
                }
                for row in [f_row, e_row] {
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let ker = kernel(&rows, nvars);
    assert_eq!(ker.len(), 1, "V({k}) occurs once in V({m}) ⊗ V({n})");
    let mut matrix = vec![vec![Rational::zero(); cols]; (k + 1) as usize];
    for (u, &(c, i, j)) in unknowns.iter().enumerate() {
        matrix[c as usize][i as usize * w + j as usize] = ker[0][u].clone();
    }
    let mut flat: Vec<Rational> = matrix.concat();
    normalize(&mut flat);
    let matrix = flat.chunks(cols).map(|r| r.to_vec()).collect();
    CgProjection { m, n, k, matrix }
}

/// Injection `V(k) → V(m) ⊗ V(n)` as a `(m + 1)(n + 1) × (k + 1)` matrix.
type Injection = Vec<Vec<Rational>>;

/// Injection built from the highest weight vector: the kernel of `E` in
/// the weight-`k` space, pushed down by `F`.
fn injection_highest_weight(m: u32, n: u32, k: u32) -> Arc<Injection> {
    static CACHE: Cache<(u32, u32, u32), Injection> = OnceLock::new();
    cache(&CACHE, (m, n, k), || {
        let w = (n + 1) as usize;
        let dim = ((m + 1) * (n + 1)) as usize;
        let support: Vec<(u32, u32)> = (0..=m)
            .flat_map(|i| (0..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| (m as i64 - 2 * i as i64) + (n as i64 - 2 * j as i64) == k as i64)
            .collect();
        // E u = 0: the coefficient of v_a ⊗ w_b in E u.
        let mut rows = Vec::new();
        for a in 0..=m {
            for b in 0..=n {
                let mut row = vec![Rational::zero(); support.len()];
                for (u, &(i, j)) in support.iter().enumerate() {
                    if i == a + 1 && j == b {
                        row[u] += rat(e_coeff(m, i));
                    }
                    if i == a && j == b + 1 {
                        row[u] += rat(e_coeff(n, j));
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let ker = kernel(&rows, support.len());
        assert_eq!(ker.len(), 1, "one highest weight vector of weight {k}");
        let mut top = vec![Rational::zero(); dim];
        for (u, &(i, j)) in support.iter().enumerate() {
            top[i as usize * w + j as usize] = ker[0][u].clone();
        }
        normalize(&mut top);
        let mut columns = vec![top];
        for _ in 0..k {
            let prev = columns.last().expect("nonempty");
            let mut next = vec![Rational::zero(); dim];
            for i in 0..=m as usize {
                for j in 0..=n as usize {
                    let x = &prev[i * w + j];
                    if x.is_zero() {
                        continue;
                    }
                    if i < m as usize {
                        next[(i + 1) * w + j] += x;
                    }
                    if j < n as usize {
                        next[i * w + j + 1] += x;
                    }
                }
            }
            columns.push(next);
        }
        transpose(&columns)
    })
}

/// Invariant form on `V(k)`: `⟨v_i, v_{k−i}⟩ = (−1)^i`.
fn form_sign(i: u32) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Injection obtained as the adjoint of `π_{m,n}^k` for the invariant
/// forms, i.e. the transpose of the projection read through the
/// identifications `v ↦ ψ_v`.
fn injection_transpose(m: u32, n: u32, k: u32) -> Result<Arc<Injection>> {
    static CACHE: Cache<(u32, u32, u32), Injection> = OnceLock::new();
    let p = cg_projection(m, n, k)?;
    Ok(cache(&CACHE, (m, n, k), || {
        let w = (n + 1) as usize;
        let dim = ((m + 1) * (n + 1)) as usize;
        // ι = B_{mn}^{-1} Pᵀ B_k with B the (antidiagonal, ±1) forms.
        let mut iota = vec![vec![Rational::zero(); (k + 1) as usize]; dim];
        for c in 0..=k {
            let c_dual = (k - c) as usize;
            let sk = form_sign(c);
            for i in 0..=m {
                for j in 0..=n {
                    let x = &p.matrix[c_dual][i as usize * w + j as usize];
                    if x.is_zero() {
                        continue;
                    }
                    let (id, jd) = ((m - i) as usize, (n - j) as usize);
                    let s = sk * form_sign(m - i) * form_sign(n - j);
                    iota[id * w + jd][c as usize] = x * rat(s);
                }
            }
        }
        iota
    }))
}

fn transpose(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Which realization of the injections `ι` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InjectionKind {
    HighestWeight,
    Transpose,
}

fn injection(kind: InjectionKind, m: u32, n: u32, k: u32) -> Result<Arc<Injection>> {
    match kind {
        InjectionKind::HighestWeight => Ok(injection_highest_weight(m, n, k)),
        InjectionKind::Transpose => injection_transpose(m, n, k),
    }
}

/// Whether `V(k) ⊂ V(m) ⊗ V(n)` componentwise with all three in `T`.
pub fn tensor_contains(k: &TTriple, m: &TTriple, n: &TTriple) -> bool {
    [k, m, n].iter().all(|t| in_tensor_semigroup(t))
        && (0..3).all(|i| cg_allowed(m.entries()[i], n.entries()[i], k.entries()[i]))
}

/// The composite `π_{m″,n″}^{k″} ∘ (π_{m,m′}^{m″} ⊗ π_{n,n′}^{n″}) ∘
/// (ι^{m,n}_k ⊗ ι^{m′,n′}_{k′})` applied to the vectors `x` of
/// `V(k) ⊗ V(k′)`; returns `F(x) ∈ V(k″)`.
fn apply_composite(
    kind: InjectionKind,
    k: &TTriple,
    m: &TTriple,
    n: &TTriple,
    x: &[Rational],
) -> Result<Vec<Rational>> {
    let i1 = injection(kind, m.m, n.m, k.m)?;
    let i2 = injection(kind, m.m1, n.m1, k.m1)?;
    let p1 = cg_projection(m.m, m.m1, m.m2)?;
    let p2 = cg_projection(n.m, n.m1, n.m2)?;
    let p3 = cg_projection(m.m2, n.m2, k.m2)?;
    let (dm, dn, dm1, dn1) = (m.m + 1, n.m + 1, m.m1 + 1, n.m1 + 1);
    let dk1 = (k.m1 + 1) as usize;
    // y in V(m) ⊗ V(n) ⊗ V(m′) ⊗ V(n′), indexed [i][j][i′][j′].
    let dim_y = (dm * dn * dm1 * dn1) as usize;
    let mut y = vec![Rational::zero(); dim_y];
    for (ab, xv) in x.iter().enumerate() {
        if xv.is_zero() {
            continue;
        }
        let (a, b) = (ab / dk1, ab % dk1);
        for (ij, u) in i1.iter().enumerate() {
            let u = &u[a];
            if u.is_zero() {
                continue;
            }
            let xu = xv * u;
            for (ij1, v) in i2.iter().enumerate() {
                let v = &v[b];
                if v.is_zero() {
                    continue;
                }
                y[ij * (dm1 * dn1) as usize + ij1] += &xu * v;
            }
        }
    }
    // z in V(m″) ⊗ V(n″).
    let dn2 = (n.m2 + 1) as usize;
    let mut z = vec![Rational::zero(); (m.m2 as usize + 1) * dn2];
    for (idx, yv) in y.iter().enumerate() {
        if yv.is_zero() {
            continue;
        }
        let ij = idx / (dm1 * dn1) as usize;
        let ij1 = idx % (dm1 * dn1) as usize;
        let (i, j) = (ij / dn as usize, ij % dn as usize);
        let (i1x, j1x) = (ij1 / dn1 as usize, ij1 % dn1 as usize);
        let col_m = i * dm1 as usize + i1x;
        let col_n = j * dn1 as usize + j1x;
        for (s, prow) in p1.matrix.iter().enumerate() {
            let a = &prow[col_m];
            if a.is_zero() {
                continue;
            }
            let ay = a * yv;
            for (t, qrow) in p2.matrix.iter().enumerate() {
                let b = &qrow[col_n];
                if !b.is_zero() {
                    z[s * dn2 + t] += &ay * b;
                }
            }
        }
    }
    Ok(p3
        .matrix
        .iter()
        .map(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum())
        .collect())
}

/// Full matrix of the composite map `V(k) ⊗ V(k′) → V(k″)` of the
/// product criterion, or `None` when `V(k) ⊄ V(m) ⊗ V(n)`.
pub fn product_map(k: &TTriple, m: &TTriple, n: &TTriple) -> Option<Vec<Vec<Rational>>> {
    if !tensor_contains(k, m, n) {
        return None;
    }
    let dim = ((k.m + 1) * (k.m1 + 1)) as usize;
    let cols: Vec<Vec<Rational>> = (0..dim)
        .map(|e| {
            let mut x = vec![Rational::zero(); dim];
            x[e] = Rational::one();
            apply_composite(InjectionKind::HighestWeight, k, m, n, &x).expect("valid triples")
        })
        .collect();
    Some(transpose(&cols))
}

/// The product criterion evaluated with one choice of injections.
///
/// The composite is equivariant `V(k) ⊗ V(k′) → V(k″)`, hence a multiple
/// of `π_{k,k′}^{k″}`; it is nonzero iff it is nonzero on the image of a
/// highest weight vector of `V(k″)`.
pub fn product_criterion(kind: InjectionKind, k: &TTriple, m: &TTriple, n: &TTriple) -> bool {
    if !tensor_contains(k, m, n) {
        return false;
    }
    let top = injection_highest_weight(k.m, k.m1, k.m2);
    let x: Vec<Rational> = top.iter().map(|row| row[0].clone()).collect();
    let out = apply_composite(kind, k, m, n, &x).expect("valid triples");
    !out[0].is_zero()
}

/// `V(k) ⊂ V(m)·V(n)` inside the invariant ring. False whenever
/// `V(k) ⊄ V(m) ⊗ V(n)`.
pub fn product_contains(k: &TTriple, m: &TTriple, n: &TTriple) -> bool {
    let a = product_criterion(InjectionKind::HighestWeight, k, m, n);
    let b = product_criterion(InjectionKind::Transpose, k, m, n);
    assert_eq!(
        a, b,
        "product criterion depends on the normalization of ι for {k} {m} {n}"
    );
    a
}

/// `Γ(m)`: every `n ∈ T` with `n ≤ m`, sorted descending.
pub fn gamma_module(m: &TTriple) -> Result<Vec<TTriple>> {
    if !in_tensor_semigroup(m) {
        return Err(Error::NotInTensorSemigroup(m.m, m.m1, m.m2));
    }
    let mut out = Vec::new();
    for a in (m.m % 2..=m.m).step_by(2) {
        for b in (m.m1 % 2..=m.m1).step_by(2) {
            for c in (m.m2 % 2..=m.m2).step_by(2) {
                let t = TTriple::new(a, b, c);
                if in_tensor_semigroup(&t) {
                    out.push(t);
                }
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// A summand `V(k)` of `Γ(m + n)` and the pair realizing it as a product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub k: TTriple,
    pub m: TTriple,
    pub n: TTriple,
}

/// Result of [`verify_gamma_product`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaProductReport {
    pub m: TTriple,
    pub n: TTriple,
    pub ok: bool,
    pub witnesses: Vec<ProductWitness>,
    pub missing: Vec<TTriple>,
}

/// Checks `Γ(m)·Γ(n) = Γ(m + n)`: every `V(k)` in `Γ(m + n)` lies in some
/// product `V(m̃)·V(ñ)` with `m̃ ∈ Γ(m)`, `ñ ∈ Γ(n)`. The pair `(m, n)`
/// itself is tried first.
pub fn verify_gamma_product(m: &TTriple, n: &TTriple) -> Result<GammaProductReport> {
    let gm = gamma_module(m)?;
    let gn = gamma_module(n)?;
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for k in gamma_module(&m.add(n))? {
        let found = gm
            .iter()
            .flat_map(|a| gn.iter().map(move |b| (a, b)))
            .find(|(a, b)| product_contains(&k, a, b));
        match found {
            Some((a, b)) => witnesses.push(ProductWitness { k, m: *a, n: *b }),
            None => missing.push(k),
        }
    }
    Ok(GammaProductReport {
        m: *m,
        n: *n,
        ok: missing.is_empty(),
        witnesses,
        missing,
    })
}

/// Triples `(k, m, n)` with entries at most `max_entry`, `V(k) ⊂ V(m) ⊗ V(n)`
/// but `V(k) ⊄ V(m)·V(n)`; each unordered pair `{m, n}` is listed once
/// with `m ≤ n`.
pub fn degenerate_products(max_entry: u32) -> Vec<ProductWitness> {
    let t = tensor_semigroup_upto(max_entry);
    let mut out = Vec::new();
    for (a, m) in t.iter().enumerate() {
        for n in &t[a..] {
            for k in tensor_semigroup_upto(2 * max_entry) {
                if tensor_contains(&k, m, n) && !product_contains(&k, m, n) {
                    out.push(ProductWitness { k, m: *m, n: *n });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u32, b: u32, c: u32) -> TTriple {
        TTriple::new(a, b, c)
    }

    /// Weight-multiplicity decomposition of `V(a) ⊗ V(b)`.
    fn decompose(a: u32, b: u32) -> Vec<u32> {
        let mut mult: HashMap<i64, i64> = HashMap::new();
        for i in 0..=a {
            for j in 0..=b {
                *mult
                    .entry(a as i64 - 2 * i as i64 + b as i64 - 2 * j as i64)
                    .or_default() += 1;
            }
        }
        let mut out = Vec::new();
        while let Some(top) = mult.iter().filter(|(_, &c)| c > 0).map(|(&w, _)| w).max() {
            out.push(top as u32);
            for w in (-top..=top).step_by(2) {
                *mult.get_mut(&w).unwrap() -= 1;
            }
        }
        out
    }

    #[test]
    fn tensor_semigroup_examples() {
        assert!(in_tensor_semigroup(&t(1, 1, 2)));
        assert!(!in_tensor_semigroup(&t(1, 1, 1)));
        assert!(in_tensor_semigroup(&t(0, 0, 0)));
    }

    #[test]
    fn tensor_semigroup_matches_weight_multiplicities() {
        for a in 0..=3 {
            for b in 0..=3 {
                let parts = decompose(a, b);
                for c in 0..=6 {
                    assert_eq!(
                        in_tensor_semigroup(&t(a, b, c)),
                        parts.contains(&c),
                        "{a} {b} {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        for x in tensor_semigroup_upto(4) {
            let [a, b, c] = x.entries();
            for p in [t(a, c, b), t(b, a, c), t(b, c, a), t(c, a, b), t(c, b, a)] {
                assert!(in_tensor_semigroup(&p));
            }
        }
    }

    fn f_action(m: u32) -> Vec<Vec<Rational>> {
        let d = (m + 1) as usize;
        let mut x = vec![vec![Rational::zero(); d]; d];
        for i in 0..m as usize {
            x[i + 1][i] = rat(1);
        }
        x
    }

    fn e_action(m: u32) -> Vec<Vec<Rational>> {
        let d = (m + 1) as usize;
        let mut x = vec![vec![Rational::zero(); d]; d];
        for i in 1..=m as usize {
            x[i - 1][i] = rat(e_coeff(m, i as u32));
        }
        x
    }

    fn kron_sum(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let (da, db) = (a.len(), b.len());
        let mut out = vec![vec![Rational::zero(); da * db]; da * db];
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    out[k * db + j][i * db + j] += &a[k][i];
                }
                for l in 0..db {
                    out[i * db + l][i * db + j] += &b[l][j];
                }
            }
        }
        out
    }

    fn mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let cols = b[0].len();
        a.iter()
            .map(|r| {
                (0..cols)
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn projections_are_equivariant() {
        for m in 0..=3 {
            for n in 0..=3 {
                for k in 0..=6 {
                    if !cg_allowed(m, n, k) {
                        assert!(cg_projection(m, n, k).is_err());
                        continue;
                    }
                    let p = cg_projection(m, n, k).unwrap();
                    for (x, xn, xk) in [
                        (f_action(m), f_action(n), f_action(k)),
                        (e_action(m), e_action(n), e_action(k)),
                    ] {
                        assert_eq!(mul(&p.matrix, &kron_sum(&x, &xn)), mul(&xk, &p.matrix));
                    }
                    let first = p.matrix.iter().flatten().find(|x| !x.is_zero()).unwrap();
                    assert_eq!(*first, rat(1));
                    for kind in [InjectionKind::HighestWeight, InjectionKind::Transpose] {
                        let iota = injection(kind, m, n, k).unwrap();
                        for (x, xn, xk) in [
                            (f_action(m), f_action(n), f_action(k)),
                            (e_action(m), e_action(n), e_action(k)),
                        ] {
                            assert_eq!(mul(&kron_sum(&x, &xn), &iota), mul(&iota, &xk));
                        }
                        // π ∘ ι is a nonzero scalar.
                        let pi = mul(&p.matrix, &iota);
                        let c = pi[0][0].clone();
                        assert!(!c.is_zero());
                        for (a, row) in pi.iter().enumerate() {
                            for (b, x) in row.iter().enumerate() {
                                assert_eq!(*x, if a == b { c.clone() } else { Rational::zero() });
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let id = cg_projection(3, 0, 3).unwrap();
        for (i, row) in id.matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
        let pairing = cg_projection(1, 1, 0).unwrap();
        assert_eq!(pairing.matrix, vec![vec![rat(0), rat(1), rat(-1), rat(0)]]);
        let sym = cg_projection(1, 1, 2).unwrap();
        assert_eq!(crate::linalg::rank_rational(&sym.matrix), 3);
        // v_0 ⊗ w_1 and v_1 ⊗ w_0 map to the same vector.
        assert_eq!(sym.matrix[1][1], sym.matrix[1][2]);
    }

    #[test]
    fn product_examples() {
        assert!(!product_contains(&t(2, 2, 2), &t(1, 1, 1), &t(1, 1, 1)));
        assert!(!product_contains(&t(2, 2, 2), &t(1, 1, 2), &t(1, 1, 2)));
        assert!(product_contains(&t(0, 0, 0), &t(1, 0, 1), &t(1, 0, 1)));
        for m in tensor_semigroup_upto(3) {
            for n in tensor_semigroup_upto(3) {
                assert!(product_contains(&m.add(&n), &m, &n), "{m} {n}");
            }
        }
    }

    #[test]
    fn product_is_symmetric() {
        let ts = tensor_semigroup_upto(3);
        for m in &ts {
            for n in &ts {
                for k in tensor_semigroup_upto(6) {
                    let a = product_contains(&k, m, n);
                    assert_eq!(a, product_contains(&k, n, m), "{k} {m} {n}");
                    if a {
                        assert!(tensor_contains(&k, m, n));
                    }
                }
            }
        }
    }

    #[test]
    fn product_map_agrees_with_criterion() {
        let ts = tensor_semigroup_upto(2);
        for m in &ts {
            for n in &ts {
                for k in tensor_semigroup_upto(4) {
                    let Some(map) = product_map(&k, m, n) else {
                        assert!(!product_contains(&k, m, n));
                        continue;
                    };
                    let nonzero = map.iter().flatten().any(|x| !x.is_zero());
                    assert_eq!(nonzero, product_contains(&k, m, n), "{k} {m} {n}");
                }
            }
        }
    }

    #[test]
    fn gamma_module_examples() {
        assert_eq!(gamma_module(&t(1, 0, 1)).unwrap(), vec![t(1, 0, 1)]);
        assert_eq!(
            gamma_module(&t(2, 0, 2)).unwrap(),
            vec![t(2, 0, 2), t(0, 0, 0)]
        );
        assert_eq!(
            gamma_module(&t(1, 1, 2)).unwrap(),
            vec![t(1, 1, 2), t(1, 1, 0)]
        );
        assert!(gamma_module(&t(1, 1, 1)).is_err());
    }

    #[test]
    fn gamma_product_examples() {
        assert!(verify_gamma_product(&t(1, 0, 1), &t(0, 1, 1)).unwrap().ok);
        let r = verify_gamma_product(&t(1, 1, 2), &t(1, 1, 2)).unwrap();
        assert!(r.ok);
        let w = r.witnesses.iter().find(|w| w.k == t(2, 2, 2)).unwrap();
        assert_ne!((w.m, w.n), (t(1, 1, 2), t(1, 1, 2)));
        assert!(verify_gamma_product(&t(0, 0, 0), &t(3, 1, 2)).unwrap().ok);
    }

    #[test]
    fn degenerate_list_contains_remark_example() {
        let list = degenerate_products(2);
        assert!(list.contains(&ProductWitness {
            k: t(2, 2, 2),
            m: t(1, 1, 2),
            n: t(1, 1, 2)
        }));
    }
}
