//! The dominance order `≤_Σ` on `NΔ`, minuscule elements, covering
//! differences, and the weight semigroups `Γ_{Δp(e)}` and `Γ^Σ_{Δp(e)}`.
//!
//! Elements of `ZΣ` are handled through their unique coordinates in the
//! spherical roots; elements of `ZΔ` are plain [`ColorVector`]s.

use crate::error::{Error, Result};
use crate::linalg::{inverse, optimize, rat, rref, LpResult, Rational};
use crate::spherical::{
    system_for_case, Case16Layout, CaseParams, ColorVector, Regime, SphericalSystem,
};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

/// Element `(n1, n2, E)` of `N² × NΔ`, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemigroupTriple {
    pub n1: u32,
    pub n2: u32,
    pub e: ColorVector,
}

impl SemigroupTriple {
    pub fn new(n1: u32, n2: u32, e: ColorVector) -> Self {
        SemigroupTriple { n1, n2, e }
    }

    pub fn degree(&self) -> u32 {
        self.n1 + self.n2
    }

    /// Sum in the monoid `N × N × NΔ`.
    pub fn add(&self, other: &Self) -> Self {
        SemigroupTriple {
            n1: self.n1 + other.n1,
            n2: self.n2 + other.n2,
            e: add(&self.e, &other.e),
        }
    }

    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(SemigroupTriple {
            n1: self.n1.checked_sub(other.n1)?,
            n2: self.n2.checked_sub(other.n2)?,
            e: sub(&self.e, &other.e),
        })
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_nonneg(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0)
}

/// Exact left inverse of the embedding `ZΣ → ZΔ`, scaled to integers.
#[derive(Debug)]
struct SigmaSolver {
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    numer: Vec<Vec<i128>>,
    den: i128,
}

impl SigmaSolver {
    fn new(rows: &[Vec<i64>]) -> Self {
        let q: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        let (_, pivots) = rref(&q);
        assert_eq!(
            pivots.len(),
            rows.len(),
            "spherical roots must be independent"
        );
        let square: Vec<Vec<Rational>> = q
            .iter()
            .map(|r| pivots.iter().map(|&j| r[j].clone()).collect())
            .collect();
        let inv = inverse(&square).expect("pivot block is invertible");
        let mut den = num_bigint::BigInt::one();
        for x in inv.iter().flatten() {
            den = den.lcm(x.denom());
        }
        let numer = inv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x.numer() * (&den / x.denom())).to_i128().expect("small"))
                    .collect()
            })
            .collect();
        SigmaSolver {
            rows: rows.to_vec(),
            pivots,
            numer,
            den: den.to_i128().expect("small"),
        }
    }

    /// Coordinates of `v` in the spherical roots, if `v ∈ ZΣ`.
    fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        // a · M_J = v_J, so a = v_J · M_J^{-1}.
        let n = self.rows.len();
        let mut a = Vec::with_capacity(n);
        for i in 0..n {
            let s: i128 = self
                .pivots
                .iter()
                .enumerate()
                .map(|(j, &col)| v[col] as i128 * self.numer[j][i])
                .sum();
            if s % self.den != 0 {
                return None;
            }
            a.push((s / self.den) as i64);
        }
        let mut back = vec![0i64; v.len()];
        for (row, &c) in self.rows.iter().zip(&a) {
            for (x, &y) in back.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        (back == v).then_some(a)
    }
}

type SolverCache = OnceLock<Mutex<HashMap<Vec<Vec<i64>>, Arc<SigmaSolver>>>>;

fn solver(sys: &SphericalSystem) -> Arc<SigmaSolver> {
    static CACHE: SolverCache = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("solver cache poisoned");
    map.entry(sys.sigma_in_colors.clone())
        .or_insert_with(|| Arc::new(SigmaSolver::new(&sys.sigma_in_colors)))
        .clone()
}

/// Coordinates of `v ∈ ZΔ` in the spherical roots, if `v ∈ ZΣ`.
pub fn sigma_coords(sys: &SphericalSystem, v: &[i64]) -> Option<Vec<i64>> {
    if v.len() != sys.n_colors() {
        return None;
    }
    solver(sys).coords(v)
}

/// Coordinates of `v` in the spherical roots, if `v ∈ NΣ`.
pub fn in_n_sigma(sys: &SphericalSystem, v: &[i64]) -> Option<Vec<i64>> {
    sigma_coords(sys, v).filter(|a| is_nonneg(a))
}

/// `D ≤_Σ E`, that is `E − D ∈ NΣ`.
pub fn leq_sigma(sys: &SphericalSystem, d: &[i64], e: &[i64]) -> bool {
    d.len() == e.len() && in_n_sigma(sys, &sub(e, d)).is_some()
}

/// Positive part `E⁺` of `E` together with the height (sum of all
/// coordinates) of `E`.
pub fn positive_part_height(e: &[i64]) -> (ColorVector, i64) {
    (e.iter().map(|&x| x.max(0)).collect(), height(e))
}

/// Height `Σ_D k_D` of `E = Σ_D k_D D`.
pub fn height(e: &[i64]) -> i64 {
    e.iter().sum()
}

/// Depth-first enumeration of all `a ∈ N^Σ` with `E − Σ a_i σ_i ∈ NΔ`.
///
/// The range of each coordinate is cut out by exact linear programs on the
/// residual, so every visited leaf is a solution.
struct Below<'a> {
    rows: &'a [Vec<i64>],
    n: usize,
}

impl Below<'_> {
    /// Range of `a_k` over the rational solutions with `a_j` fixed for `j < k`.
    fn range(&self, k: usize, residual: &[i64]) -> Option<(i64, i64)> {
        let vars = self.n - k;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (d, &r) in residual.iter().enumerate() {
            let col: Vec<i64> = (k..self.n).map(|j| self.rows[j][d]).collect();
            if col.iter().all(|&x| x == 0) {
                if r < 0 {
                    return None;
                }
                continue;
            }
            a.push(col.iter().map(|&x| rat(x)).collect::<Vec<_>>());
            b.push(rat(r));
        }
        if vars == 1 {
            return last_range(&a, &b);
        }
        let mut c = vec![Rational::zero(); vars];
        c[0] = Rational::one();
        let hi = match optimize(&c, &a, &b) {
            LpResult::Optimal { value, .. } => value.floor().to_integer().to_i64()?,
            LpResult::Infeasible => return None,
            LpResult::Unbounded => panic!("spherical roots admit an unbounded cone below a color"),
        };
        let lo = if b.iter().all(|x| *x >= Rational::zero()) {
            0
        } else {
            c[0] = -Rational::one();
            match optimize(&c, &a, &b) {
                LpResult::Optimal { value, .. } => (-value).ceil().to_integer().to_i64()?,
                _ => return None,
            }
        };
        (lo <= hi).then_some((lo, hi))
    }

    fn walk(
        &self,
        k: usize,
        prefix: &mut Vec<i64>,
        residual: &[i64],
        visit: &mut dyn FnMut(&[i64], &[i64]) -> bool,
    ) -> bool {
        if k == self.n {
            return if is_nonneg(residual) {
                visit(prefix, residual)
            } else {
                true
            };
        }
        let Some((lo, hi)) = self.range(k, residual) else {
            return true;
        };
        for v in lo..=hi {
            let next: Vec<i64> = residual
                .iter()
                .zip(&self.rows[k])
                .map(|(r, s)| r - v * s)
                .collect();
            prefix.push(v);
            let go_on = self.walk(k + 1, prefix, &next, visit);
            prefix.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Integer range of a single variable `x ≥ 0` with `a_d x ≤ b_d`.
fn last_range(a: &[Vec<Rational>], b: &[Rational]) -> Option<(i64, i64)> {
    let mut lo = Rational::zero();
    let mut hi: Option<Rational> = None;
    for (row, r) in a.iter().zip(b) {
        let x = &row[0];
        if x.is_zero() {
            if *r < Rational::zero() {
                return None;
            }
        } else if *x > Rational::zero() {
            let cap = r / x;
            hi = Some(match hi {
                Some(h) if h < cap => h,
                _ => cap,
            });
        } else {
            let floor = r / x;
            if floor > lo {
                lo = floor;
            }
        }
    }
    let lo = lo.ceil().to_integer().to_i64()?;
    let hi = hi
        .expect("a negative coefficient alone cannot bound a spherical root")
        .floor()
        .to_integer()
        .to_i64()?;
    (lo <= hi).then_some((lo, hi))
}

/// Visits every `(a, F)` with `a ∈ N^Σ`, `F = E − Σ a_i σ_i ∈ NΔ`, in
/// lexicographic order of `a`; the visitor returns false to stop.
fn for_each_below(sys: &SphericalSystem, e: &[i64], visit: &mut dyn FnMut(&[i64], &[i64]) -> bool) {
    let walker = Below {
        rows: &sys.sigma_in_colors,
        n: sys.n_sigma(),
    };
    walker.walk(0, &mut Vec::new(), e, visit);
}

/// An element strictly below `E` in `(NΔ, ≤_Σ)`, if any.
pub fn dominated_by(sys: &SphericalSystem, e: &[i64]) -> Option<ColorVector> {
    let mut found = None;
    for_each_below(sys, e, &mut |a, f| {
        if a.iter().any(|&x| x != 0) {
            found = Some(f.to_vec());
            false
        } else {
            true
        }
    });
    found
}

/// Whether `E ∈ NΔ` is minimal for `≤_Σ`.
pub fn is_minuscule(sys: &SphericalSystem, e: &[i64]) -> bool {
    dominated_by(sys, e).is_none()
}

/// All `F ∈ NΔ` with `F ≤_Σ E`, ordered by the total `σ`-degree of `E − F`
/// and then lexicographically in the `σ`-coordinates. `E` comes first.
pub fn sections_decomposition(sys: &SphericalSystem, e: &[i64]) -> Vec<ColorVector> {
    let mut found: Vec<(i64, Vec<i64>, ColorVector)> = Vec::new();
    for_each_below(sys, e, &mut |a, f| {
        found.push((a.iter().sum(), a.to_vec(), f.to_vec()));
        true
    });
    found.sort();
    found.into_iter().map(|(_, _, f)| f).collect()
}

/// A covering difference `γ` with its `σ`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoveringDifference {
    pub sigma_coords: Vec<i64>,
    pub colors: ColorVector,
}

/// All `γ ∈ NΣ \ {0}` with `σ`-coordinates at most `bound` for which some
/// `D ∈ NΔ` makes `D <_Σ D + γ` a cover of the poset `(NΔ, ≤_Σ)`.
///
/// The smallest candidate is `D = γ⁻`, and any intermediate element for a
/// larger `D` is one for `γ⁻` too, so only `γ⁻` is tested.
pub fn covering_differences(sys: &SphericalSystem, bound: u32) -> Vec<CoveringDifference> {
    let n = sys.n_sigma();
    let b = bound as i64;
    let mut out = Vec::new();
    for a in boxed(n, b) {
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let gamma = sys.combine(&a);
        let minus: Vec<i64> = gamma.iter().map(|&x| (-x).max(0)).collect();
        let intermediate = boxed_under(&a).any(|a1| {
            a1.iter().any(|&x| x != 0) && a1 != a && is_nonneg(&add(&minus, &sys.combine(&a1)))
        });
        if !intermediate {
            out.push(CoveringDifference {
                sigma_coords: a,
                colors: gamma,
            });
        }
    }
    out
}

/// All integer vectors in `[0, bound]^n`.
fn boxed(n: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    boxed_under(&vec![bound; n])
}

/// All integer vectors `x` with `0 ≤ x ≤ top` componentwise.
fn boxed_under(top: &[i64]) -> impl Iterator<Item = Vec<i64>> {
    let top = top.to_vec();
    let total: usize = top.iter().map(|&t| (t + 1) as usize).product();
    (0..total).map(move |mut idx| {
        top.iter()
            .map(|&t| {
                let w = (t + 1) as usize;
                let x = (idx % w) as i64;
                idx /= w;
                x
            })
            .collect()
    })
}

fn designated(sys: &SphericalSystem) -> Result<(ColorVector, ColorVector)> {
    if sys.designated.is_empty() {
        return Err(Error::MissingDesignated);
    }
    let zero = vec![0; sys.n_colors()];
    Ok((
        sys.designated.p1.clone().unwrap_or_else(|| zero.clone()),
        sys.designated.p2.clone().unwrap_or(zero),
    ))
}

/// `n1 D_{p1} + n2 D_{p2} − E`, the element of `NΣ` attached to a member of
/// `Γ_{Δp(e)}`.
pub fn gamma_of(sys: &SphericalSystem, t: &SemigroupTriple) -> Result<ColorVector> {
    let (d1, d2) = designated(sys)?;
    Ok((0..sys.n_colors())
        .map(|i| t.n1 as i64 * d1[i] + t.n2 as i64 * d2[i] - t.e[i])
        .collect())
}

/// Whether `(n1, n2, E)` lies in `Γ_{Δp(e)}`.
pub fn in_gamma(sys: &SphericalSystem, t: &SemigroupTriple) -> Result<bool> {
    if t.e.len() != sys.n_colors() {
        return Err(Error::LengthMismatch {
            expected: sys.n_colors(),
            got: t.e.len(),
        });
    }
    Ok(is_nonneg(&t.e) && in_n_sigma(sys, &gamma_of(sys, t)?).is_some())
}

/// Every member of `Γ_{Δp(e)}` with `n1 + n2 ≤ max_degree`, sorted.
pub fn gamma_members(sys: &SphericalSystem, max_degree: u32) -> Result<Vec<SemigroupTriple>> {
    let (d1, d2) = designated(sys)?;
    let mut out = Vec::new();
    for n1 in 0..=max_degree {
        for n2 in 0..=max_degree - n1 {
            let top: Vec<i64> = (0..sys.n_colors())
                .map(|i| n1 as i64 * d1[i] + n2 as i64 * d2[i])
                .collect();
            for e in sections_decomposition(sys, &top) {
                out.push(SemigroupTriple::new(n1, n2, e));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Nonzero elements of `members` that are not the sum of two nonzero
/// elements of `members`. The list must be closed under the differences
/// it needs, which holds for degree-bounded enumerations.
fn irreducibles<T: Clone + Eq + std::hash::Hash + Ord>(
    members: &[T],
    is_zero: impl Fn(&T) -> bool,
    minus: impl Fn(&T, &T) -> Option<T>,
) -> Vec<T> {
    let set: HashSet<&T> = members.iter().collect();
    let nonzero: Vec<&T> = members.iter().filter(|m| !is_zero(m)).collect();
    let mut out: Vec<T> = nonzero
        .iter()
        .filter(|&&x| {
            !nonzero.iter().any(|&y| {
                y != x
                    && minus(x, y)
                        .map(|z| !is_zero(&z) && set.contains(&z))
                        .unwrap_or(false)
            })
        })
        .map(|&x| x.clone())
        .collect();
    out.sort();
    out
}

/// Hilbert basis of `Γ_{Δp(e)}` restricted to `n1 + n2 ≤ max_degree`.
pub fn gamma_semigroup(sys: &SphericalSystem, max_degree: u32) -> Result<Vec<SemigroupTriple>> {
    let members = gamma_members(sys, max_degree)?;
    Ok(irreducibles(
        &members,
        |t| t.n1 == 0 && t.n2 == 0 && t.e.iter().all(|&x| x == 0),
        |x, y| x.checked_sub(y).filter(|z| is_nonneg(&z.e)),
    ))
}

/// Nonnegative integer coefficients expressing `target` through `gens`,
/// found by exhaustive search.
pub fn express_in_generators(
    gens: &[SemigroupTriple],
    target: &SemigroupTriple,
) -> Option<Vec<u32>> {
    fn go(
        gens: &[SemigroupTriple],
        k: usize,
        rest: &SemigroupTriple,
        coeffs: &mut Vec<u32>,
    ) -> bool {
        if rest.n1 == 0 && rest.n2 == 0 && rest.e.iter().all(|&x| x == 0) {
            coeffs.resize(gens.len(), 0);
            return true;
        }
        if k == gens.len() {
            return false;
        }
        let g = &gens[k];
        let mut cur = rest.clone();
        let mut c = 0;
        loop {
            coeffs.push(c);
            if go(gens, k + 1, &cur, coeffs) {
                return true;
            }
            coeffs.truncate(k);
            match cur.checked_sub(g) {
                Some(next) if g.degree() > 0 && is_nonneg(&next.e) => {
                    cur = next;
                    c += 1;
                }
                _ => return false,
            }
        }
    }
    let mut coeffs = Vec::new();
    go(gens, 0, target, &mut coeffs).then_some(coeffs)
}

/// Colors in the support of `D_{p1}` or `D_{p2}`.
fn designated_support(sys: &SphericalSystem) -> Result<Vec<bool>> {
    let (d1, d2) = designated(sys)?;
    Ok(d1.iter().zip(&d2).map(|(a, b)| *a > 0 || *b > 0).collect())
}

/// Whether `γ ∈ ZΔ` lies in `Γ^Σ_{Δp(e)}`: `γ ∈ NΣ` and `γ⁺` is supported
/// on the designated colors.
pub fn in_gamma_sigma(sys: &SphericalSystem, gamma: &[i64]) -> Result<bool> {
    let support = designated_support(sys)?;
    Ok(in_n_sigma(sys, gamma).is_some() && gamma.iter().zip(&support).all(|(&g, &s)| s || g <= 0))
}

/// Hilbert basis of `Γ^Σ_{Δp(e)}` among the elements with
/// `σ`-coordinates at most `bound`, as `σ`-coordinate vectors.
pub fn gamma_sigma_semigroup(sys: &SphericalSystem, bound: u32) -> Result<Vec<Vec<i64>>> {
    let support = designated_support(sys)?;
    let members: Vec<Vec<i64>> = boxed(sys.n_sigma(), bound as i64)
        .filter(|a| {
            sys.combine(a)
                .iter()
                .zip(&support)
                .all(|(&g, &s)| s || g <= 0)
        })
        .collect();
    Ok(irreducibles(
        &members,
        |a| a.iter().all(|&x| x == 0),
        |x, y| Some(sub(x, y)).filter(|z| is_nonneg(z)),
    ))
}

/// Generators of `Γ_{Δp(e)}` given in closed form for cases 1.4–1.7.
///
/// In the boundary regime `r + s = q − 1` of case 1.6 the mixed generators
/// `(i, j, D̃¹_{2i−1} + D̃²_{2j−1})` are restricted to `i + j < r + s + 2`.
pub fn closed_form_generators(case_id: &str, params: &CaseParams) -> Result<Vec<SemigroupTriple>> {
    let sys = system_for_case(case_id, params)?;
    let mut out = match case_id {
        "1.4" | "1.5" => {
            let unit = |name: &str| sys.color_vector(&[(name, 1)]);
            let (d4, d5) = if sys.color_index("D4=D5").is_some() {
                (unit("D4=D5"), unit("D4=D5"))
            } else {
                (unit("D4"), unit("D5"))
            };
            let list = vec![
                SemigroupTriple::new(1, 0, unit("D1")),
                SemigroupTriple::new(0, 1, unit("D2")),
                SemigroupTriple::new(1, 1, unit("D3")),
                SemigroupTriple::new(2, 0, d4),
                SemigroupTriple::new(0, 2, d5),
            ];
            if case_id == "1.5" {
                list.into_iter().map(swap_degrees).collect()
            } else {
                list
            }
        }
        "1.6" => case_16_generators(&Case16Layout::new(params.p, params.q, params.r, params.s)?)
            .into_iter()
            .map(|(_, t)| t)
            .collect(),
        "1.7" => {
            let lay = Case16Layout::new(params.q, params.p, params.s, params.r)?;
            case_16_generators(&lay)
                .into_iter()
                .map(|(_, t)| swap_degrees(t))
                .collect()
        }
        _ => return Err(Error::UnsupportedCase(case_id.to_string())),
    };
    out.sort();
    Ok(out)
}

fn swap_degrees(t: SemigroupTriple) -> SemigroupTriple {
    SemigroupTriple::new(t.n2, t.n1, t.e)
}

/// Label of a closed-form generator of case 1.6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator16 {
    /// `γ^1_i`, paired with `(i, 0, D̃¹_{2i})`.
    First(usize),
    /// `γ^2_j`, paired with `(0, j, D̃²_{2j})`.
    Second(usize),
    /// `γ_{i,j}`, paired with `(i, j, D̃¹_{2i−1} + D̃²_{2j−1})`.
    Mixed(usize, usize),
}

fn case_16_generators(lay: &Case16Layout) -> Vec<(Generator16, SemigroupTriple)> {
    let mut out = Vec::new();
    for i in 1..=lay.r + 1 {
        out.push((
            Generator16::First(i),
            SemigroupTriple::new(i as u32, 0, lay.d_tilde(1, 2 * i)),
        ));
    }
    for j in 1..=lay.s + 1 {
        out.push((
            Generator16::Second(j),
            SemigroupTriple::new(0, j as u32, lay.d_tilde(2, 2 * j)),
        ));
    }
    for i in 1..=lay.r + 1 {
        for j in 1..=lay.s + 1 {
            if lay.regime == Regime::Boundary && i + j >= lay.r + lay.s + 2 {
                continue;
            }
            let e = add(&lay.d_tilde(1, 2 * i - 1), &lay.d_tilde(2, 2 * j - 1));
            out.push((
                Generator16::Mixed(i, j),
                SemigroupTriple::new(i as u32, j as u32, e),
            ));
        }
    }
    out
}

/// How a witness decomposition was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessMethod {
    /// The explicit construction of the generation proofs.
    ProofScheme,
    /// Exhaustive search over the generators.
    Search,
}

/// A decomposition of `γ ∈ Γ^Σ_{Δp(e)}` into closed-form generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Nonzero terms `(generator, coefficient)`.
    pub terms: Vec<(SemigroupTriple, u64)>,
    pub method: WitnessMethod,
    /// The auxiliary coefficients `(c¹, c²)` of the boundary regime.
    pub boundary_c: Option<(i64, i64)>,
}

/// Writes `γ ∈ Γ^Σ_{Δp(e)}` (given by its `σ`-coordinates) as a
/// nonnegative integer combination of the `γ`-parts of the closed-form
/// generators, and checks the recombination exactly.
pub fn witness_decomposition(case_id: &str, params: &CaseParams, gamma: &[i64]) -> Result<Witness> {
    let sys = system_for_case(case_id, params)?;
    if gamma.len() != sys.n_sigma() {
        return Err(Error::LengthMismatch {
            expected: sys.n_sigma(),
            got: gamma.len(),
        });
    }
    let colors = sys.combine(gamma);
    if !is_nonneg(gamma) || !in_gamma_sigma(&sys, &colors)? {
        return Err(Error::NotInSemigroup(format!("{gamma:?} in {}", sys.name)));
    }
    let gens = closed_form_generators(case_id, params)?;
    let scheme = match case_id {
        "1.4" | "1.5" => Some((scheme_14(&sys, gamma), None)),
        "1.6" => scheme_16(
            &Case16Layout::new(params.p, params.q, params.r, params.s)?,
            gamma,
            false,
        ),
        "1.7" => scheme_16(
            &Case16Layout::new(params.q, params.p, params.s, params.r)?,
            gamma,
            true,
        ),
        _ => None,
    };
    if let Some((terms, boundary_c)) = scheme {
        if recombine(&sys, &terms)? == gamma {
            return Ok(Witness {
                terms,
                method: WitnessMethod::ProofScheme,
                boundary_c,
            });
        }
    }
    let terms = search_witness(&sys, &gens, gamma)?.ok_or_else(|| {
        Error::NotInSemigroup(format!("{gamma:?} has no decomposition in {}", sys.name))
    })?;
    Ok(Witness {
        terms,
        method: WitnessMethod::Search,
        boundary_c: None,
    })
}

fn recombine(sys: &SphericalSystem, terms: &[(SemigroupTriple, u64)]) -> Result<Vec<i64>> {
    let mut acc = vec![0i64; sys.n_sigma()];
    for (t, c) in terms {
        let coords = sigma_coords(sys, &gamma_of(sys, t)?)
            .ok_or_else(|| Error::NotInSemigroup(format!("{t:?}")))?;
        for (x, y) in acc.iter_mut().zip(coords) {
            *x += *c as i64 * y;
        }
    }
    Ok(acc)
}

fn scheme_14(sys: &SphericalSystem, a: &[i64]) -> Vec<(SemigroupTriple, u64)> {
    // a1 σ1 + a2 σ2 + a3 σ3 = a2 (σ1+σ2) + a3 (σ1+σ3) + (a1−a2−a3) σ1
    let gens = [
        (sys.combine(&[1, 0, 0]), a[0] - a[1] - a[2]),
        (sys.combine(&[1, 1, 0]), a[1]),
        (sys.combine(&[1, 0, 1]), a[2]),
    ];
    let (d1, d2) = designated(sys).expect("case 1.4 has designated colors");
    let mut out = Vec::new();
    for (g, c) in gens {
        if c <= 0 {
            continue;
        }
        // Find (n1, n2) with n1 D_{p1} + n2 D_{p2} − g ∈ NΔ and minimal degree.
        let t = (0..=2u32)
            .flat_map(|n1| (0..=2u32).map(move |n2| (n1, n2)))
            .map(|(n1, n2)| {
                let e: Vec<i64> = (0..g.len())
                    .map(|i| n1 as i64 * d1[i] + n2 as i64 * d2[i] - g[i])
                    .collect();
                SemigroupTriple::new(n1, n2, e)
            })
            .find(|t| is_nonneg(&t.e))
            .expect("σ-part of a closed-form generator");
        out.push((t, c as u64));
    }
    out
}

/// Interval-count transport: nonnegative `x_{i,j}` with row sums `rows`
/// and column sums `cols` (equal totals), where `x_{i,j}` counts the
/// integers lying both in the `i`-th row interval and the `j`-th column
/// interval.
fn interval_transport(rows: &[i64], cols: &[i64]) -> Option<Vec<Vec<i64>>> {
    if rows.iter().any(|&x| x < 0) || cols.iter().any(|&x| x < 0) {
        return None;
    }
    if rows.iter().sum::<i64>() != cols.iter().sum::<i64>() {
        return None;
    }
    let cum = |v: &[i64]| {
        let mut acc = vec![0];
        for &x in v {
            acc.push(acc.last().unwrap() + x);
        }
        acc
    };
    let (nr, nc) = (cum(rows), cum(cols));
    Some(
        (0..rows.len())
            .map(|i| {
                (0..cols.len())
                    .map(|j| (nr[i + 1].min(nc[j + 1]) - nr[i].max(nc[j])).max(0))
                    .collect()
            })
            .collect(),
    )
}

/// The construction of the case 1.6 generation proofs. Returns the terms
/// and, in the boundary regime, `(c¹, c²)`. Degrees are swapped for the
/// mirror case 1.7.
type SchemeOutput = (Vec<(SemigroupTriple, u64)>, Option<(i64, i64)>);

fn scheme_16(lay: &Case16Layout, a: &[i64], mirrored: bool) -> Option<SchemeOutput> {
    let sys = crate::spherical::system_case_1_6(lay.p, lay.q, lay.r, lay.s).ok()?;
    let gamma = sys.combine(a);
    let gens: HashMap<Generator16, SemigroupTriple> = case_16_generators(lay).into_iter().collect();
    let coef = |k: usize, h: usize| lay.color(k, h).map(|i| gamma[i]).unwrap_or(0);
    let sig = |k: usize, h: usize| {
        if h >= 1 && h <= 2 * lay.rk(k) {
            a[lay.sigma_index(k, h)]
        } else {
            0
        }
    };
    let (r1, r2) = (lay.r, lay.s);
    let finish = |mut terms: Vec<(Generator16, i64)>, transport: Vec<Vec<i64>>| {
        for (i, row) in transport.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                terms.push((Generator16::Mixed(i + 1, j + 1), x));
            }
        }
        let mut out = Vec::new();
        for (g, c) in terms {
            // γ^k_1 is zero and carries no generator.
            if c == 0 || matches!(g, Generator16::First(1) | Generator16::Second(1)) {
                continue;
            }
            if c < 0 {
                return None;
            }
            let t = gens.get(&g)?.clone();
            out.push((if mirrored { swap_degrees(t) } else { t }, c as u64));
        }
        out.sort();
        Some(out)
    };
    match lay.regime {
        Regime::Generic => {
            // d̃^k_h is the coefficient of D^k_h for h ≤ 2r_k + 1, and
            // d̃^k_{2r_k+2} is the coefficient of D^k_{2r_k+3}.
            let dt = |k: usize, h: usize| {
                if h == 2 * lay.rk(k) + 2 {
                    coef(k, h + 1)
                } else {
                    coef(k, h)
                }
            };
            let mut terms = Vec::new();
            for i in 2..=r1 + 1 {
                terms.push((Generator16::First(i), -dt(1, 2 * i)));
            }
            for j in 2..=r2 + 1 {
                terms.push((Generator16::Second(j), -dt(2, 2 * j)));
            }
            let rows: Vec<i64> = (1..=r1 + 1).map(|i| -dt(1, 2 * i - 1)).collect();
            let cols: Vec<i64> = (1..=r2 + 1).map(|j| -dt(2, 2 * j - 1)).collect();
            let transport = interval_transport(&rows, &cols)?;
            Some((finish(terms, transport)?, None))
        }
        Regime::Boundary => {
            let (top1, top2) = (sig(1, 2 * r1), sig(2, 2 * r2));
            let odd = |k: usize| {
                if lay.rk(k) > 0 {
                    sig(k, 2 * lay.rk(k) - 1)
                } else {
                    0
                }
            };
            let (odd1, odd2) = (odd(1), odd(2));
            let first = {
                let b = odd1.min(odd2 - top2 + top1);
                (-b, top1 - top2 - b)
            };
            let second = {
                let b = odd2.min(odd1 - top1 + top2);
                (top2 - top1 - b, -b)
            };
            let order = if top1 <= top2 {
                [first, second]
            } else {
                [second, first]
            };
            order.into_iter().find_map(|(c1, c2)| {
                let mut terms = Vec::new();
                for i in 2..=r1 {
                    terms.push((Generator16::First(i), -coef(1, 2 * i)));
                }
                terms.push((Generator16::First(r1 + 1), -c1));
                for j in 2..=r2 {
                    terms.push((Generator16::Second(j), -coef(2, 2 * j)));
                }
                terms.push((Generator16::Second(r2 + 1), -c2));
                let mut rows: Vec<i64> = (1..=r1).map(|i| -coef(1, 2 * i - 1)).collect();
                rows.push(odd1 + c1);
                let mut cols: Vec<i64> = (1..=r2).map(|j| -coef(2, 2 * j - 1)).collect();
                cols.push(odd2 + c2);
                let transport = interval_transport(&rows, &cols)?;
                if transport[r1][r2] != 0 {
                    return None;
                }
                Some((finish(terms, transport)?, Some((c1, c2))))
            })
        }
    }
}

/// Exhaustive decomposition in `σ`-coordinates.
fn search_witness(
    sys: &SphericalSystem,
    gens: &[SemigroupTriple],
    gamma: &[i64],
) -> Result<Option<Vec<(SemigroupTriple, u64)>>> {
    let mut parts = Vec::new();
    for g in gens {
        let coords = sigma_coords(sys, &gamma_of(sys, g)?)
            .ok_or_else(|| Error::NotInSemigroup(format!("{g:?}")))?;
        if coords.iter().any(|&x| x != 0) {
            parts.push((g.clone(), coords));
        }
    }
    fn go(
        parts: &[(SemigroupTriple, Vec<i64>)],
        k: usize,
        rest: &[i64],
        out: &mut Vec<u64>,
    ) -> bool {
        if rest.iter().all(|&x| x == 0) {
            out.resize(parts.len(), 0);
            return true;
        }
        if k == parts.len() {
            return false;
        }
        let mut cur = rest.to_vec();
        let mut c = 0;
        loop {
            out.push(c);
            if go(parts, k + 1, &cur, out) {
                return true;
            }
            out.truncate(k);
            cur = sub(&cur, &parts[k].1);
            if !is_nonneg(&cur) {
                return false;
            }
            c += 1;
        }
    }
    let mut coeffs = Vec::new();
    if !go(&parts, 0, gamma, &mut coeffs) {
        return Ok(None);
    }
    Ok(Some(
        parts
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| *c > 0)
            .map(|((t, _), c)| (t, c))
            .collect(),
    ))
}

/// Outcome of the minuscule test for one designated element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignatedCheck {
    /// 1 or 2.
    pub index: u8,
    pub element: ColorVector,
    pub minuscule: bool,
    /// Some `F <_Σ D_{pi}` when the element is not minuscule.
    pub dominated: Option<ColorVector>,
}

/// Result of [`normality_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub normal: bool,
    pub checks: Vec<DesignatedCheck>,
}

/// The orbit closure is normal iff every present designated element is
/// minuscule in `NΔ`.
pub fn normality_check(sys: &SphericalSystem) -> NormalityReport {
    let mut checks = Vec::new();
    for (index, d) in [(1u8, &sys.designated.p1), (2u8, &sys.designated.p2)] {
        if let Some(d) = d {
            let dominated = dominated_by(sys, d);
            checks.push(DesignatedCheck {
                index,
                element: d.clone(),
                minuscule: dominated.is_none(),
                dominated,
            });
        }
    }
    NormalityReport {
        normal: checks.iter().all(|c| c.minuscule),
        checks,
    }
}

/// A member of `Γ_{Δp(e)}` together with its highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedGenerator {
    pub triple: SemigroupTriple,
    pub weight: Vec<i64>,
}

/// Highest weights `n1 λ1* + n2 λ2* − ω(n1 D_{p1} + n2 D_{p2} − E)` of the
/// generators of `Γ_{Δp(e)}` up to `max_degree`. The color weights default
/// to those stored in the system.
pub fn weight_semigroup(
    sys: &SphericalSystem,
    lambda1: &[i64],
    lambda2: &[i64],
    color_weights: Option<&[Vec<i64>]>,
    max_degree: u32,
) -> Result<Vec<WeightedGenerator>> {
    let weights = color_weights
        .or(sys.color_weights.as_deref())
        .ok_or_else(|| {
            Error::MissingColorWeight(sys.colors.first().cloned().unwrap_or_default())
        })?;
    if weights.len() != sys.n_colors() {
        let missing = sys.colors.get(weights.len()).cloned().unwrap_or_default();
        return Err(Error::MissingColorWeight(missing));
    }
    let width = lambda1.len();
    if lambda2.len() != width || weights.iter().any(|w| w.len() != width) {
        return Err(Error::LengthMismatch {
            expected: width,
            got: lambda2.len(),
        });
    }
    let mut out = Vec::new();
    for t in gamma_semigroup(sys, max_degree)? {
        let g = gamma_of(sys, &t)?;
        let weight = (0..width)
            .map(|j| {
                let omega: i64 = g.iter().zip(weights).map(|(c, w)| c * w[j]).sum();
                t.n1 as i64 * lambda1[j] + t.n2 as i64 * lambda2[j] - omega
            })
            .collect();
        out.push(WeightedGenerator { triple: t, weight });
    }
    Ok(out)
}

/// Generator sets of the enumeration and of the closed form, compared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorComparison {
    pub enumerated: Vec<SemigroupTriple>,
    pub closed_form: Vec<SemigroupTriple>,
    pub matches: bool,
}

/// Enumerates `Γ_{Δp(e)}` up to `max_degree` and compares with the closed
/// form restricted to the same degrees.
pub fn compare_with_closed_form(
    case_id: &str,
    params: &CaseParams,
    max_degree: u32,
) -> Result<GeneratorComparison> {
    let sys = system_for_case(case_id, params)?;
    let enumerated = gamma_semigroup(&sys, max_degree)?;
    let closed_form: Vec<SemigroupTriple> = closed_form_generators(case_id, params)?
        .into_iter()
        .filter(|t| t.degree() <= max_degree)
        .collect();
    let a: BTreeSet<_> = enumerated.iter().collect();
    let b: BTreeSet<_> = closed_form.iter().collect();
    Ok(GeneratorComparison {
        matches: a == b,
        enumerated,
        closed_form,
    })
}

/// Degree of the largest closed-form generator.
pub fn closed_form_degree(case_id: &str, params: &CaseParams) -> Result<u32> {
    Ok(closed_form_generators(case_id, params)?
        .iter()
        .map(SemigroupTriple::degree)
        .max()
        .unwrap_or(0))
}
