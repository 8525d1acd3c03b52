//! Spherical systems and the explicit systems attached to the non-trivial
//! Hermitian cases.
//!
//! A system is stored through its spherical roots `Σ` (in simple root
//! coordinates) together with the embedding `ZΣ → ZΔ` into the Picard
//! lattice spanned by the colors. The designated colors `D_{p1}`, `D_{p2}`
//! are elements of `NΔ` (not necessarily single colors).

use crate::error::{Error, Result};
use crate::linalg::{maximize, rank_i64, rat, solve, LpOutcome, Rational};
use crate::rootlat::{Basis, CartanType, LatticeVector, RootSystem};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// Integer vector over the colors of a fixed system.
pub type ColorVector = Vec<i64>;

/// Designated elements `D_{p1}`, `D_{p2}`; an absent entry stands for 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Designated {
    pub p1: Option<ColorVector>,
    pub p2: Option<ColorVector>,
}

impl Designated {
    pub fn is_empty(&self) -> bool {
        self.p1.is_none() && self.p2.is_none()
    }
}

/// A quotient recorded in the catalog of a system: the removed colors and
/// the spherical roots of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogQuotient {
    pub removed: Vec<usize>,
    pub sigma: Vec<LatticeVector>,
    pub sigma_names: Vec<String>,
}

/// A spherical system `(S^p, Σ, Δ)` with its Cartan pairing rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphericalSystem {
    pub name: String,
    pub ambient: RootSystem,
    /// Simple roots (0-based) in `S^p`.
    pub s_p: Vec<usize>,
    /// Spherical roots in simple root coordinates.
    pub sigma: Vec<LatticeVector>,
    pub sigma_names: Vec<String>,
    pub colors: Vec<String>,
    /// Row `i` expresses `σ_i` in the colors.
    pub sigma_in_colors: Vec<ColorVector>,
    pub designated: Designated,
    /// Weights `ω(D)` in fundamental weight coordinates, when known.
    pub color_weights: Option<Vec<Vec<i64>>>,
    #[serde(skip)]
    pub quotients: Vec<CatalogQuotient>,
}

impl SphericalSystem {
    pub fn n_colors(&self) -> usize {
        self.colors.len()
    }

    pub fn n_sigma(&self) -> usize {
        self.sigma.len()
    }

    /// Index of a color by name.
    pub fn color_index(&self, name: &str) -> Option<usize> {
        self.colors.iter().position(|c| c == name)
    }

    /// Color vector from `(name, coefficient)` pairs.
    pub fn color_vector(&self, terms: &[(&str, i64)]) -> ColorVector {
        let mut v = vec![0; self.n_colors()];
        for &(name, c) in terms {
            let i = self
                .color_index(name)
                .unwrap_or_else(|| panic!("no color named {name} in {}", self.name));
            v[i] += c;
        }
        v
    }

    /// Color expression of a combination of spherical roots.
    pub fn combine(&self, coeffs: &[i64]) -> ColorVector {
        let mut v = vec![0; self.n_colors()];
        for (row, &a) in self.sigma_in_colors.iter().zip(coeffs) {
            for (x, &y) in v.iter_mut().zip(row) {
                *x += a * y;
            }
        }
        v
    }

    /// Simple root coordinates of a combination of spherical roots.
    pub fn combine_roots(&self, coeffs: &[i64]) -> LatticeVector {
        let mut v = LatticeVector::zero(Basis::SimpleRoots, self.ambient.total_rank());
        for (s, &a) in self.sigma.iter().zip(coeffs) {
            v = v.add(&s.scale(a)).expect("same basis");
        }
        v
    }

    /// Checks the structural invariants of the data.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_colors();
        let rank = self.ambient.total_rank();
        if self.sigma_names.len() != self.sigma.len()
            || self.sigma_in_colors.len() != self.sigma.len()
        {
            return Err(Error::LengthMismatch {
                expected: self.sigma.len(),
                got: self.sigma_in_colors.len(),
            });
        }
        for s in &self.sigma {
            if s.basis != Basis::SimpleRoots {
                return Err(Error::BasisMismatch(Basis::SimpleRoots, s.basis));
            }
            if s.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    got: s.len(),
                });
            }
            if s.is_zero() || !s.is_nonnegative() {
                return Err(Error::InvalidParameters {
                    case: self.name.clone(),
                    reason: "spherical roots must be nonzero and nonnegative".into(),
                });
            }
        }
        for row in &self.sigma_in_colors {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        if rank_i64(&self.sigma_in_colors) != self.sigma.len() {
            return Err(Error::InvalidParameters {
                case: self.name.clone(),
                reason: "spherical roots are not independent in the Picard lattice".into(),
            });
        }
        for d in [&self.designated.p1, &self.designated.p2]
            .into_iter()
            .flatten()
        {
            if d.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: d.len(),
                });
            }
            if d.iter().any(|&x| x < 0) {
                return Err(Error::InvalidParameters {
                    case: self.name.clone(),
                    reason: "designated colors must lie in NΔ".into(),
                });
            }
        }
        if self.s_p.iter().any(|&i| i >= rank) {
            return Err(Error::InvalidParameters {
                case: self.name.clone(),
                reason: "S^p index out of range".into(),
            });
        }
        Ok(())
    }
}

fn roots(rank: usize, support: &[usize]) -> LatticeVector {
    let mut v = LatticeVector::zero(Basis::SimpleRoots, rank);
    for &i in support {
        v.coords[i] += 1;
    }
    v
}

/// The system `a^x(1,1,1)` for `SL(2)^3`.
pub fn system_ax111() -> SphericalSystem {
    let ambient = RootSystem::new(vec![(CartanType::A, 1); 3]).expect("valid");
    SphericalSystem {
        name: "ax(1,1,1)".into(),
        ambient,
        s_p: vec![],
        sigma: (0..3).map(|i| roots(3, &[i])).collect(),
        sigma_names: vec!["α".into(), "α'".into(), "α''".into()],
        colors: vec!["D1".into(), "D2".into(), "D3".into()],
        sigma_in_colors: vec![vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, -1]],
        designated: Designated::default(),
        color_weights: Some(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]),
        quotients: vec![],
    }
}

fn invalid(case: &str, reason: &str) -> Error {
    Error::InvalidParameters {
        case: case.to_string(),
        reason: reason.to_string(),
    }
}

/// The system of case 1.4 for `SL(p)×SL(2)`.
pub fn system_case_1_4(p: usize) -> Result<SphericalSystem> {
    if p < 4 {
        return Err(invalid("1.4", "need p ≥ 4"));
    }
    let rank = p;
    let ambient = RootSystem::new(vec![(CartanType::A, p - 1), (CartanType::A, 1)])?;
    let merged = p == 4;
    let colors: Vec<String> = if merged {
        vec!["D1".into(), "D2".into(), "D3".into(), "D4=D5".into()]
    } else {
        (1..=5).map(|i| format!("D{i}")).collect()
    };
    let (d4, d5) = if merged { (3, 3) } else { (3, 4) };
    let mut rows = vec![vec![0i64; colors.len()]; 3];
    // σ1 = D1 + D2 − D3, σ2 = −D1 + D2 + D3 − D5, σ3 = D1 − D2 + D3 − D4.
    for (i, v) in [(0, 1), (1, 1), (2, -1)] {
        rows[0][i] += v;
    }
    for (i, v) in [(0, -1), (1, 1), (2, 1), (d5, -1)] {
        rows[1][i] += v;
    }
    for (i, v) in [(0, 1), (1, -1), (2, 1), (d4, -1)] {
        rows[2][i] += v;
    }
    let unit = |i: usize| {
        let mut v = vec![0; colors.len()];
        v[i] = 1;
        v
    };
    Ok(SphericalSystem {
        name: format!("1.4(p={p})"),
        ambient,
        s_p: (3..=p.saturating_sub(3)).map(|j| j - 1).collect(),
        sigma: vec![
            roots(rank, &[p - 1]),
            roots(rank, &[0]),
            roots(rank, &[p - 2]),
        ],
        sigma_names: vec!["σ1".into(), "σ2".into(), "σ3".into()],
        designated: Designated {
            p1: Some(unit(0)),
            p2: Some(unit(1)),
        },
        colors,
        sigma_in_colors: rows,
        color_weights: None,
        quotients: vec![],
    })
}

/// Exchanges the two simple factors of a two-factor ambient and the two
/// designated elements.
fn mirror(sys: SphericalSystem, name: String) -> SphericalSystem {
    let comps = sys.ambient.components.clone();
    assert_eq!(comps.len(), 2, "mirror needs two factors");
    let (a, b) = (comps[0].1, comps[1].1);
    let ambient = RootSystem::new(vec![comps[1], comps[0]]).expect("valid");
    let remap = |i: usize| if i < a { b + i } else { i - a };
    let sigma = sys
        .sigma
        .iter()
        .map(|s| {
            let mut v = LatticeVector::zero(Basis::SimpleRoots, a + b);
            for (i, &c) in s.coords.iter().enumerate() {
                v.coords[remap(i)] = c;
            }
            v
        })
        .collect();
    let mut s_p: Vec<usize> = sys.s_p.iter().map(|&i| remap(i)).collect();
    s_p.sort_unstable();
    SphericalSystem {
        name,
        ambient,
        s_p,
        sigma,
        designated: Designated {
            p1: sys.designated.p2.clone(),
            p2: sys.designated.p1.clone(),
        },
        ..sys
    }
}

/// The system of case 1.5 for `SL(2)×SL(q)`: the mirror image of case 1.4.
pub fn system_case_1_5(q: usize) -> Result<SphericalSystem> {
    if q < 4 {
        return Err(invalid("1.5", "need q ≥ 4"));
    }
    Ok(mirror(system_case_1_4(q)?, format!("1.5(q={q})")))
}

/// Regime of a case 1.6 system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `r + s < q − 1`: the spherical root `τ` is present.
    Generic,
    /// `r + s = q − 1`: no `τ`.
    Boundary,
}

/// Index bookkeeping for the colors `D^k_h` and spherical roots `σ^k_h`,
/// `τ` of a case 1.6 system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case16Layout {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub regime: Regime,
    colors: BTreeMap<(usize, usize), usize>,
    n_colors: usize,
}

impl Case16Layout {
    pub fn new(p: usize, q: usize, r: usize, s: usize) -> Result<Self> {
        if r + s + 2 > p || r + s + 1 > q {
            return Err(invalid("1.6", "need r + s + 2 ≤ p and r + s + 1 ≤ q"));
        }
        if r == 0 && s == 0 {
            return Err(invalid("1.6", "r = s = 0 has no encoded system"));
        }
        let regime = if r + s + 1 == q {
            Regime::Boundary
        } else {
            Regime::Generic
        };
        let top = match regime {
            Regime::Generic => 3,
            Regime::Boundary => 2,
        };
        let mut colors = BTreeMap::new();
        let mut next = 0;
        let shared = p == r + s + 2;
        for (k, rk) in [(1, r), (2, s)] {
            for h in 1..=2 * rk + top {
                if h == 1 && rk == 0 {
                    continue;
                }
                if k == 2 && shared && h == 2 * s + 2 {
                    let idx = colors[&(1, 2 * r + 2)];
                    colors.insert((k, h), idx);
                    continue;
                }
                colors.insert((k, h), next);
                next += 1;
            }
        }
        if regime == Regime::Boundary {
            // D^1_{2r+3} stands for D^2_{2s+1} and D^2_{2s+3} for D^1_{2r+1}.
            if let Some(&i) = colors.get(&(2, 2 * s + 1)) {
                colors.insert((1, 2 * r + 3), i);
            }
            if let Some(&i) = colors.get(&(1, 2 * r + 1)) {
                colors.insert((2, 2 * s + 3), i);
            }
        }
        Ok(Case16Layout {
            p,
            q,
            r,
            s,
            regime,
            colors,
            n_colors: next,
        })
    }

    pub fn rk(&self, k: usize) -> usize {
        if k == 1 {
            self.r
        } else {
            self.s
        }
    }

    /// Index of `D^k_h`, if that color exists.
    pub fn color(&self, k: usize, h: usize) -> Option<usize> {
        self.colors.get(&(k, h)).copied()
    }

    fn unit(&self, k: usize, h: usize) -> ColorVector {
        let mut v = vec![0; self.n_colors];
        if let Some(i) = self.color(k, h) {
            v[i] += 1;
        }
        v
    }

    /// `D̃^k_h`: equal to `D^k_h` for `h < 2r_k + 1`, and to
    /// `D^k_h + D^k_{h+1}` for `h = 2r_k + 1, 2r_k + 2`.
    pub fn d_tilde(&self, k: usize, h: usize) -> ColorVector {
        let mut v = self.unit(k, h);
        if h == 2 * self.rk(k) + 1 || h == 2 * self.rk(k) + 2 {
            for (x, y) in v.iter_mut().zip(self.unit(k, h + 1)) {
                *x += y;
            }
        }
        v
    }

    /// Position of `σ^k_h` in the list of spherical roots.
    pub fn sigma_index(&self, k: usize, h: usize) -> usize {
        assert!(h >= 1 && h <= 2 * self.rk(k));
        if k == 1 {
            h - 1
        } else {
            2 * self.r + h - 1
        }
    }

    /// Position of `τ`, when present.
    pub fn tau_index(&self) -> Option<usize> {
        (self.regime == Regime::Generic).then_some(2 * self.r + 2 * self.s)
    }

    pub fn n_sigma(&self) -> usize {
        2 * self.r + 2 * self.s + usize::from(self.regime == Regime::Generic)
    }

    fn color_names(&self) -> Vec<String> {
        let mut names = vec![String::new(); self.n_colors];
        for (&(k, h), &i) in &self.colors {
            let label = format!("D{k}_{h}");
            if names[i].is_empty() {
                names[i] = label;
            } else if !names[i].split('=').any(|x| x == label) {
                names[i] = format!("{}={label}", names[i]);
            }
        }
        names
    }
}

/// The system of case 1.6 for `SL(p)×SL(q)` with parameters `r, s`.
///
/// Both regimes are covered. The rows `σ → ZΔ` follow the coefficient
/// formulas `d^k_h` of the colors `D^k_h`, with `d^k_{2r_k+2} = −a^k_{2r_k−1}`.
pub fn system_case_1_6(p: usize, q: usize, r: usize, s: usize) -> Result<SphericalSystem> {
    let lay = Case16Layout::new(p, q, r, s)?;
    let rank = p + q - 2;
    let alpha = |i: usize| i - 1;
    let alpha2 = |j: usize| p - 1 + j - 1;
    let n = lay.n_colors;
    let mut sigma = Vec::new();
    let mut names = Vec::new();
    let mut rows = Vec::new();
    for k in [1usize, 2] {
        let rk = lay.rk(k);
        for h in 1..=2 * rk {
            let i = h.div_ceil(2);
            let simple = match (k, h % 2) {
                (1, 1) => alpha(p - i),
                (1, _) => alpha2(i),
                (_, 1) => alpha(i),
                _ => alpha2(q - i),
            };
            sigma.push(roots(rank, &[simple]));
            names.push(format!("σ{k}_{h}"));
            let mut row = vec![0i64; n];
            let mut add = |hh: usize, c: i64| {
                if let Some(idx) = lay.color(k, hh) {
                    row[idx] += c;
                }
            };
            add(h, 1);
            add(h + 1, 1);
            if h >= 2 {
                add(h - 1, -1);
            }
            if h < 2 * rk {
                add(h + 2, -1);
            } else {
                add(2 * rk + 3, -1);
            }
            if h + 1 == 2 * rk {
                add(2 * rk + 2, -1);
            }
            rows.push(row);
        }
    }
    if lay.regime == Regime::Generic {
        let support: Vec<usize> = (r + 1..=q - s - 1).map(alpha2).collect();
        sigma.push(roots(rank, &support));
        names.push("τ".into());
        let mut row = vec![0i64; n];
        for (k, rk) in [(1, r), (2, s)] {
            if let Some(i) = lay.color(k, 2 * rk + 1) {
                row[i] -= 1;
            }
            if let Some(i) = lay.color(k, 2 * rk + 3) {
                row[i] += 1;
            }
        }
        rows.push(row);
    }
    let mut s_p: Vec<usize> = (s + 2..=p.saturating_sub(r + 2)).map(alpha).collect();
    s_p.extend((r + 2..=q.saturating_sub(s + 2)).map(alpha2));
    Ok(SphericalSystem {
        name: format!("1.6(p={p},q={q},r={r},s={s})"),
        ambient: RootSystem::new(vec![(CartanType::A, p - 1), (CartanType::A, q - 1)])?,
        s_p,
        sigma,
        sigma_names: names,
        colors: lay.color_names(),
        sigma_in_colors: rows,
        designated: Designated {
            p1: Some(lay.d_tilde(1, 2)),
            p2: Some(lay.d_tilde(2, 2)),
        },
        color_weights: None,
        quotients: vec![],
    })
}

/// The system of case 1.7 for `SL(p)×SL(q)`: the mirror image of case 1.6
/// for `SL(q)×SL(p)` with `r` and `s` exchanged.
pub fn system_case_1_7(p: usize, q: usize, r: usize, s: usize) -> Result<SphericalSystem> {
    if r + s + 1 > p || r + s + 2 > q {
        return Err(invalid("1.7", "need r + s + 1 ≤ p and r + s + 2 ≤ q"));
    }
    let base = system_case_1_6(q, p, s, r)?;
    Ok(mirror(base, format!("1.7(p={p},q={q},r={r},s={s})")))
}

/// The system `a^y(r,r) + a(t) + a^y(s,s)` for `A_r × A_{r+s+t} × A_s`,
/// with its catalogued quotient by `Δ_1 ∪ Δ_2`.
pub fn system_ay_a_ay(r: usize, t: usize, s: usize) -> Result<SphericalSystem> {
    if r == 0 || s == 0 || t == 0 {
        return Err(invalid("ay+a+ay", "need r, s, t ≥ 1"));
    }
    let m = r + s + t;
    let rank = r + m + s;
    let a1 = |i: usize| i - 1;
    let a2 = |i: usize| r + i - 1;
    let a3 = |i: usize| r + m + i - 1;
    let nc = 2 * r + 2 * s + 4;
    let mut sigma = Vec::new();
    let mut names = Vec::new();
    let mut rows = Vec::new();
    let mut push = |support: Vec<usize>, name: String, terms: &[(usize, i64)]| {
        sigma.push(roots(rank, &support));
        names.push(name);
        let mut row = vec![0i64; nc];
        for &(d, c) in terms {
            row[d - 1] += c;
        }
        rows.push(row);
    };
    push(vec![a1(1)], "α_1".into(), &[(1, 1), (2, 1), (3, -1)]);
    for i in 2..=r {
        push(
            vec![a1(i)],
            format!("α_{i}"),
            &[(2 * i - 2, -1), (2 * i - 1, 1), (2 * i, 1), (2 * i + 1, -1)],
        );
    }
    for i in 1..=r {
        push(
            vec![a2(i)],
            format!("α'_{i}"),
            &[(2 * i - 1, -1), (2 * i, 1), (2 * i + 1, 1), (2 * i + 2, -1)],
        );
    }
    push(
        (r + 1..=r + t).map(a2).collect(),
        format!("α'_{}+…+α'_{}", r + 1, r + t),
        &[
            (2 * r + 1, -1),
            (2 * r + 2, 1),
            (2 * r + 3, 1),
            (2 * r + 4, -1),
        ],
    );
    for i in 1..=s {
        let b = 2 * r + 2 * i;
        push(
            vec![a2(r + t + i)],
            format!("α'_{}", r + t + i),
            &[(b + 1, -1), (b + 2, 1), (b + 3, 1), (b + 4, -1)],
        );
    }
    for i in 1..s {
        let b = 2 * r + 2 * i;
        push(
            vec![a3(i)],
            format!("α''_{i}"),
            &[(b + 2, -1), (b + 3, 1), (b + 4, 1), (b + 5, -1)],
        );
    }
    let b = 2 * r + 2 * s;
    push(
        vec![a3(s)],
        format!("α''_{s}"),
        &[(b + 2, -1), (b + 3, 1), (b + 4, 1)],
    );

    let mut removed: Vec<usize> = (1..=r).map(|i| 2 * i - 1).collect();
    removed.extend((1..=s).map(|i| 2 * r + 2 * i + 2));
    let mut q_sigma = Vec::new();
    let mut q_names = Vec::new();
    for i in 1..r {
        q_sigma.push(roots(rank, &[a1(i + 1), a2(i)]));
        q_names.push(format!("α_{}+α'_{i}", i + 1));
    }
    q_sigma.push(roots(rank, &(r + 1..=r + t).map(a2).collect::<Vec<_>>()));
    q_names.push(format!("α'_{}+…+α'_{}", r + 1, r + t));
    for i in 1..s {
        q_sigma.push(roots(rank, &[a2(r + t + i + 1), a3(i)]));
        q_names.push(format!("α'_{}+α''_{i}", r + t + i + 1));
    }
    Ok(SphericalSystem {
        name: format!("ay({r},{r})+a({t})+ay({s},{s})"),
        ambient: RootSystem::new(vec![
            (CartanType::A, r),
            (CartanType::A, m),
            (CartanType::A, s),
        ])?,
        s_p: (r + 2..t + r).map(a2).collect(),
        sigma,
        sigma_names: names,
        colors: (1..=nc).map(|i| format!("D{i}")).collect(),
        sigma_in_colors: rows,
        designated: Designated::default(),
        color_weights: None,
        quotients: vec![CatalogQuotient {
            removed,
            sigma: q_sigma,
            sigma_names: q_names,
        }],
    })
}

/// Whether a set of colors is distinguished: some combination of them with
/// positive coefficients pairs nonnegatively with every spherical root.
///
/// Decided exactly by the linear program `max Σ u_D` with
/// `0 ≤ u_D ≤ min(c_D, 1)` and `Σ_D c_D σ_D ≥ 0` for each `σ`.
pub fn is_distinguished(sys: &SphericalSystem, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return true;
    }
    let k = subset.len();
    let nvars = 2 * k;
    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    for row in &sys.sigma_in_colors {
        let mut cons = vec![Rational::zero(); nvars];
        for (j, &d) in subset.iter().enumerate() {
            cons[j] = rat(-row[d]);
        }
        a.push(cons);
        b.push(Rational::zero());
    }
    for j in 0..k {
        let mut cons = vec![Rational::zero(); nvars];
        cons[k + j] = rat(1);
        cons[j] = rat(-1);
        a.push(cons);
        b.push(Rational::zero());
        let mut cap = vec![Rational::zero(); nvars];
        cap[k + j] = rat(1);
        a.push(cap);
        b.push(rat(1));
    }
    let mut c = vec![Rational::zero(); nvars];
    for x in c.iter_mut().skip(k) {
        *x = rat(1);
    }
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, .. } => value == rat(k as i64),
        LpOutcome::Unbounded => unreachable!("objective is capped"),
    }
}

/// Coordinates of `v` (simple root coordinates) as a rational combination
/// of the spherical roots, if it lies in their span.
fn sigma_coords_of_root(sys: &SphericalSystem, v: &LatticeVector) -> Option<Vec<Rational>> {
    let rank = sys.ambient.total_rank();
    let rows: Vec<Vec<Rational>> = (0..rank)
        .map(|i| sys.sigma.iter().map(|s| rat(s.coords[i])).collect())
        .collect();
    let rhs: Vec<Rational> = v.coords.iter().map(|&x| rat(x)).collect();
    let x = solve(&rows, &rhs)?;
    let back: Vec<Rational> = (0..rank)
        .map(|i| {
            x.iter()
                .zip(&sys.sigma)
                .map(|(a, s)| a * rat(s.coords[i]))
                .sum()
        })
        .collect();
    (back == rhs).then_some(x)
}

/// Quotient of a system by a distinguished set of colors, for the
/// quotients recorded in the system's catalog. The empty set gives the
/// system itself.
pub fn quotient_by_colors(sys: &SphericalSystem, subset: &[usize]) -> Result<SphericalSystem> {
    if subset.is_empty() {
        return Ok(sys.clone());
    }
    let mut key = subset.to_vec();
    key.sort_unstable();
    key.dedup();
    if !is_distinguished(sys, &key) {
        return Err(Error::NotDistinguished(format!("{key:?} in {}", sys.name)));
    }
    let entry = sys
        .quotients
        .iter()
        .find(|q| q.removed == key)
        .ok_or_else(|| {
            Error::NotDistinguished(format!("{key:?} not catalogued for {}", sys.name))
        })?;
    let keep: Vec<usize> = (0..sys.n_colors()).filter(|i| !key.contains(i)).collect();
    let mut rows = Vec::new();
    for root in &entry.sigma {
        let coeffs = sigma_coords_of_root(sys, root).ok_or_else(|| {
            Error::NotDistinguished(format!("quotient root outside ZΣ in {}", sys.name))
        })?;
        if coeffs.iter().any(|c| !c.is_integer() || c.is_negative()) {
            return Err(Error::NotDistinguished(format!(
                "quotient root outside NΣ in {}",
                sys.name
            )));
        }
        let ints: Vec<i64> = coeffs
            .iter()
            .map(|c| c.to_integer().to_i64().expect("small"))
            .collect();
        let full = sys.combine(&ints);
        if key.iter().any(|&d| full[d] != 0) {
            return Err(Error::NotDistinguished(format!(
                "quotient root pairs with a removed color in {}",
                sys.name
            )));
        }
        rows.push(keep.iter().map(|&i| full[i]).collect());
    }
    let project =
        |d: &Option<ColorVector>| d.as_ref().map(|v| keep.iter().map(|&i| v[i]).collect());
    Ok(SphericalSystem {
        name: format!("{}/Δ'", sys.name),
        ambient: sys.ambient.clone(),
        s_p: sys.s_p.clone(),
        sigma: entry.sigma.clone(),
        sigma_names: entry.sigma_names.clone(),
        colors: keep.iter().map(|&i| sys.colors[i].clone()).collect(),
        sigma_in_colors: rows,
        designated: Designated {
            p1: project(&sys.designated.p1),
            p2: project(&sys.designated.p2),
        },
        color_weights: sys
            .color_weights
            .as_ref()
            .map(|w| keep.iter().map(|&i| w[i].clone()).collect()),
        quotients: vec![],
    })
}

/// Block sizes and parameters selecting a system among cases 1.4–1.7.
///
/// Case 1.4 reads only `p` and case 1.5 only `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct CaseParams {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

impl CaseParams {
    pub fn new(p: usize, q: usize, r: usize, s: usize) -> Self {
        CaseParams { p, q, r, s }
    }
}

/// The system attached to one of the non-trivial cases 1.4–1.7.
pub fn system_for_case(case_id: &str, params: &CaseParams) -> Result<SphericalSystem> {
    let CaseParams { p, q, r, s } = *params;
    match case_id {
        "1.4" => system_case_1_4(p),
        "1.5" => system_case_1_5(q),
        "1.6" => system_case_1_6(p, q, r, s),
        "1.7" => system_case_1_7(p, q, r, s),
        _ => Err(Error::UnsupportedCase(case_id.to_string())),
    }
}

/// Smallest block sizes `(p, q)` for which case 1.6 or 1.7 with the given
/// `r, s` is defined, in the generic and in the boundary regime.
pub fn minimal_block_sizes(case_id: &str, r: usize, s: usize, regime: Regime) -> (usize, usize) {
    let (big, small) = match regime {
        Regime::Generic => (r + s + 2, r + s + 2),
        Regime::Boundary => (r + s + 2, r + s + 1),
    };
    if case_id == "1.7" {
        (small, big)
    } else {
        (big, small)
    }
}

/// All encoded systems with designated colors, up to the given size of the
/// parameters `p`, `q`.
pub fn hermitian_systems(max_pq: usize) -> Vec<SphericalSystem> {
    let mut out = Vec::new();
    for p in 4..=max_pq {
        out.push(system_case_1_4(p).expect("valid"));
        out.push(system_case_1_5(p).expect("valid"));
    }
    for p in 2..=max_pq {
        for q in 1..=max_pq {
            for r in 0..=p {
                for s in 0..=p {
                    if let Ok(sys) = system_case_1_6(p, q, r, s) {
                        out.push(sys);
                    }
                    if let Ok(sys) = system_case_1_7(q, p, r, s) {
                        out.push(sys);
                    }
                }
            }
        }
    }
    out
}
