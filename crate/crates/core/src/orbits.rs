//! Spherical nilpotent `K`-orbits in `p` as explicit normal triples.
//!
//! Every pair is realized in the defining representation of `g`, with the
//! involution `θ` given by conjugation with a diagonal sign matrix `S`, so
//! that `k` and `p` are spanned by matrix entries `(i, j)` with equal and
//! opposite signs respectively. The conventions per family are:
//!
//! * `SLpq`: basis `e_1..e_p, e'_1..e'_q` of `C^{p+q}`; `e_i ⊗ φ'_j` is the
//!   matrix unit sending `e'_j` to `e_i`, and `φ_i ⊗ e'_j` sends `e_i` to `e'_j`.
//! * `SO_odd`, `SO_even_vector`: basis `e_1..e_{n-1}, (e_0), e_{-n+1}..e_{-1},
//!   e'_1, e'_{-1}` with Gram matrix `δ_{i,-j}`; `v ⊗ φ'_w` is the skew
//!   completion `A − J Aᵀ J` of the matrix unit `A` sending `e'_w` to `v`.
//! * `Sp`, `SO_even_gl`: `k = gl(n)` embedded as `diag(A, −Aᵀ)`; the
//!   symmetric (resp. alternating) tensors in `e` and in `φ` fill the upper
//!   right and lower left blocks.

use crate::error::{Error, Result};
use crate::hermitian::{Family, SymmetricPairSpec};
use crate::linalg::{
    add_mod, frac, inv_mod, mul_mod, rank_i64, rank_mod_p, reduce_mod, IntMatrix, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Which explicit model of the pair is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RealizationKind {
    /// `sl(p+q)` with `K = S(GL(p)×GL(q))`.
    SlPq { p: usize, q: usize },
    /// `so(2n+1)` with `K = SO(2n−1)×SO(2)`.
    SoOdd { n: usize },
    /// `sp(2n)` with `K = GL(n)`.
    Sp { n: usize },
    /// `so(2n)` with `K = SO(2n−2)×SO(2)`.
    SoEvenVector { n: usize },
    /// `so(2n)` with `K = GL(n)`.
    SoEvenGl { n: usize },
}

/// Explicit model of `g = k ⊕ p` in its defining representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub kind: RealizationKind,
    /// Size of the defining representation.
    pub dim: usize,
    /// Diagonal of `S`; `θ(X) = S X S`.
    pub signs: Vec<i8>,
    /// Numerators of the central cocharacter direction (diagonal), over
    /// `coweight_den`. The `p1` block is where `z_i − z_j = 1`.
    pub coweight_num: Vec<i64>,
    pub coweight_den: i64,
    /// Involution `π` with the invariant form `J[i][π(i)] = ±1`, for the
    /// orthogonal and symplectic models.
    form_partner: Option<Vec<usize>>,
}

impl Realization {
    pub fn for_pair(spec: &SymmetricPairSpec) -> Self {
        let n = spec.rank();
        match spec.family {
            Family::SLpq => {
                let (p, q) = spec.pq().expect("type A");
                let mut signs = vec![1; p];
                signs.extend(vec![-1; q]);
                let mut z = vec![q as i64; p];
                z.extend(vec![-(p as i64); q]);
                Realization {
                    kind: RealizationKind::SlPq { p, q },
                    dim: p + q,
                    signs,
                    coweight_num: z,
                    coweight_den: (p + q) as i64,
                    form_partner: None,
                }
            }
            Family::SOOdd | Family::SOEvenVector => {
                let m = if spec.family == Family::SOOdd {
                    2 * n - 1
                } else {
                    2 * n - 2
                };
                let dim = m + 2;
                let mut signs = vec![1; m];
                signs.extend([-1, -1]);
                let mut partner: Vec<usize> = (0..m).map(|i| m - 1 - i).collect();
                partner.extend([m + 1, m]);
                let mut z = vec![0; m];
                z.extend([1, -1]);
                let kind = if spec.family == Family::SOOdd {
                    RealizationKind::SoOdd { n }
                } else {
                    RealizationKind::SoEvenVector { n }
                };
                Realization {
                    kind,
                    dim,
                    signs,
                    coweight_num: z,
                    coweight_den: 1,
                    form_partner: Some(partner),
                }
            }
            Family::Sp | Family::SOEvenGl => {
                let mut signs = vec![1; n];
                signs.extend(vec![-1; n]);
                let partner: Vec<usize> = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
                let mut z = vec![1; n];
                z.extend(vec![-1; n]);
                let kind = if spec.family == Family::Sp {
                    RealizationKind::Sp { n }
                } else {
                    RealizationKind::SoEvenGl { n }
                };
                Realization {
                    kind,
                    dim: 2 * n,
                    signs,
                    coweight_num: z,
                    coweight_den: 2,
                    form_partner: Some(partner),
                }
            }
        }
    }

    fn is_symplectic(&self) -> bool {
        matches!(self.kind, RealizationKind::Sp { .. })
    }

    /// Gram matrix of the invariant form, if any.
    pub fn form(&self) -> Option<IntMatrix> {
        let partner = self.form_partner.as_ref()?;
        let n = self.dim;
        let mut j = IntMatrix::zeros(n);
        for (i, &pi) in partner.iter().enumerate() {
            let v = if self.is_symplectic() && i >= n / 2 {
                -1
            } else {
                1
            };
            j.set(i, pi, v);
        }
        Some(j)
    }

    /// Whether `x` lies in `g`.
    pub fn in_g(&self, x: &IntMatrix) -> bool {
        match self.form() {
            None => x.trace() == 0,
            Some(j) => (&(&x.transpose() * &j) + &(&j * x)).is_zero(),
        }
    }

    /// Whether `x` lies in `k`, i.e. is fixed by `θ`.
    pub fn in_k(&self, x: &IntMatrix) -> bool {
        x.entries()
            .iter()
            .all(|&(i, j, _)| self.signs[i] == self.signs[j])
    }

    /// Whether `x` lies in `p`, i.e. is negated by `θ`.
    pub fn in_p(&self, x: &IntMatrix) -> bool {
        x.entries()
            .iter()
            .all(|&(i, j, _)| self.signs[i] != self.signs[j])
    }

    /// A basis of `g` in which every element lies in `k` or in `p`.
    pub fn g_basis(&self) -> Vec<IntMatrix> {
        let n = self.dim;
        let mut out = Vec::new();
        match &self.form_partner {
            None => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out.push(IntMatrix::from_entries(n, &[(i, j, 1)]));
                        }
                    }
                }
                for i in 0..n - 1 {
                    out.push(IntMatrix::from_entries(n, &[(i, i, 1), (i + 1, i + 1, -1)]));
                }
            }
            Some(pi) if !self.is_symplectic() => {
                // X = J (E_ab − E_ba) with J the permutation matrix of π.
                for a in 0..n {
                    for b in a + 1..n {
                        out.push(IntMatrix::from_entries(n, &[(pi[a], b, 1), (pi[b], a, -1)]));
                    }
                }
            }
            Some(pi) => {
                // X = −J Y for Y symmetric; −J E[a, b] = s(π(a)) E[π(a), b]
                // with s(i) = −1 on the first half and +1 on the second.
                let s = |i: usize| if i < n / 2 { -1 } else { 1 };
                for a in 0..n {
                    for b in a..n {
                        let mut entries = vec![(pi[a], b, s(pi[a]))];
                        if a != b {
                            entries.push((pi[b], a, s(pi[b])));
                        }
                        out.push(IntMatrix::from_entries(n, &entries));
                    }
                }
            }
        }
        out
    }

    pub fn k_basis(&self) -> Vec<IntMatrix> {
        self.g_basis()
            .into_iter()
            .filter(|x| self.in_k(x))
            .collect()
    }

    pub fn p_basis(&self) -> Vec<IntMatrix> {
        self.g_basis()
            .into_iter()
            .filter(|x| self.in_p(x))
            .collect()
    }

    fn borel_masked(&self, i: usize, j: usize) -> bool {
        match self.kind {
            RealizationKind::Sp { n } | RealizationKind::SoEvenGl { n } => i < n && j < n && i > j,
            _ => i > j,
        }
    }

    /// Basis of the fixed Borel subalgebra `b ⊂ k`: upper triangular within
    /// each block of `k` (for the `GL(n)` models, the `A` in `diag(A, −Aᵀ)`
    /// is upper triangular).
    pub fn borel_basis(&self) -> Vec<IntMatrix> {
        self.k_basis()
            .into_iter()
            .filter(|x| {
                x.entries()
                    .iter()
                    .all(|&(i, j, _)| !self.borel_masked(i, j))
            })
            .collect()
    }

    /// Elements of the `k` basis outside the Borel; their span is nilpotent.
    fn opposite_nilradical(&self) -> Vec<IntMatrix> {
        self.k_basis()
            .into_iter()
            .filter(|x| x.entries().iter().any(|&(i, j, _)| self.borel_masked(i, j)))
            .collect()
    }

    /// Rank of `k^ss` plus the center: the dimension of a Cartan subalgebra.
    pub fn rank_k(&self) -> usize {
        self.k_basis()
            .iter()
            .filter(|x| x.entries().iter().all(|&(i, j, _)| i == j))
            .count()
    }

    /// Value of `z_i − z_j` scaled by the coweight denominator.
    fn charge(&self, i: usize, j: usize) -> i64 {
        self.coweight_num[i] - self.coweight_num[j]
    }
}

/// Variant label for the cases listed twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    I,
    II,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::I => write!(f, "I"),
            Variant::II => write!(f, "II"),
        }
    }
}

/// Parameters of an orbit family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Params {
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub variant: Option<Variant>,
}

impl Params {
    pub fn none() -> Self {
        Params::default()
    }

    pub fn r(r: usize) -> Self {
        Params {
            r: Some(r),
            ..Default::default()
        }
    }

    pub fn rs(r: usize, s: usize) -> Self {
        Params {
            r: Some(r),
            s: Some(s),
            variant: None,
        }
    }

    pub fn variant(v: Variant) -> Self {
        Params {
            variant: Some(v),
            ..Default::default()
        }
    }

    /// `r=1,s=0` style rendering, or `-` without parameters.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(s) = self.s {
            parts.push(format!("s={s}"));
        }
        if parts.is_empty() {
            "-".to_string()
        } else {
            parts.join(",")
        }
    }

    pub fn as_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(r) = self.r {
            m.insert("r".into(), r.to_string());
        }
        if let Some(s) = self.s {
            m.insert("s".into(), s.to_string());
        }
        if let Some(v) = self.variant {
            m.insert("variant".into(), v.to_string());
        }
        m
    }
}

/// One block size of a signed partition with its sign and multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPart {
    pub part: usize,
    pub sign: i8,
    pub multiplicity: usize,
}

impl fmt::Display for SignedPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{s}{}^{}", self.part, self.multiplicity)
    }
}

/// Renders a signed partition as `(+2^1,+1^3,-1^1)`, skipping empty parts.
pub fn render_signed_partition(parts: &[SignedPart]) -> String {
    let items: Vec<String> = parts
        .iter()
        .filter(|p| p.multiplicity > 0)
        .map(|p| p.to_string())
        .collect();
    format!("({})", items.join(","))
}

/// A spherical nilpotent orbit: a case of the classification with its
/// parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub pair: SymmetricPairSpec,
    pub case_id: String,
    pub params: Params,
    pub signed_partition: Vec<SignedPart>,
}

impl OrbitRecord {
    /// Identifier `<pair-key>/<case>/<params>[/I|II]`.
    pub fn id(&self) -> String {
        let mut s = format!(
            "{}/{}/{}",
            self.pair.key(),
            self.case_id,
            self.params.render()
        );
        if let Some(v) = self.params.variant {
            s.push('/');
            s.push_str(&v.to_string());
        }
        s
    }

    /// Jordan type on the defining representation predicted by the signed
    /// partition, as `(part, multiplicity)` sorted by decreasing part.
    pub fn expected_jordan_type(&self) -> Vec<(usize, usize)> {
        let factor = if self.pair.family == Family::SOEvenGl {
            2
        } else {
            1
        };
        let mut acc: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &self.signed_partition {
            if p.multiplicity > 0 {
                *acc.entry(p.part).or_default() += factor * p.multiplicity;
            }
        }
        acc.into_iter().rev().collect()
    }
}

impl fmt::Display for OrbitRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// A normal triple in the defining representation of `g`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixTriple {
    #[serde(serialize_with = "ser_matrix")]
    pub h: IntMatrix,
    #[serde(serialize_with = "ser_matrix")]
    pub e: IntMatrix,
    #[serde(serialize_with = "ser_matrix")]
    pub f: IntMatrix,
    pub realization: Realization,
}

#[derive(Serialize)]
struct DenseMatrix {
    denominator: i64,
    rows: Vec<Vec<i64>>,
}

fn ser_matrix<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    DenseMatrix {
        denominator: 1,
        rows: m.rows(),
    }
    .serialize(s)
}

fn sp(part: usize, sign: i8, multiplicity: usize) -> SignedPart {
    SignedPart {
        part,
        sign,
        multiplicity,
    }
}

fn invalid(case: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameters {
        case: case.to_string(),
        reason: reason.into(),
    }
}

fn need_r(case: &str, params: &Params) -> Result<usize> {
    params.r.ok_or_else(|| invalid(case, "missing r"))
}

fn need_rs(case: &str, params: &Params) -> Result<(usize, usize)> {
    Ok((
        params.r.ok_or_else(|| invalid(case, "missing r"))?,
        params.s.ok_or_else(|| invalid(case, "missing s"))?,
    ))
}

fn need_variant(case: &str, params: &Params) -> Result<Variant> {
    params
        .variant
        .ok_or_else(|| invalid(case, "missing variant"))
}

fn case_family(case_id: &str) -> Option<Family> {
    match case_id.split('.').next()? {
        "1" => Some(Family::SLpq),
        "2" => Some(Family::SOOdd),
        "3" => Some(Family::Sp),
        "4" => Some(Family::SOEvenVector),
        "5" => Some(Family::SOEvenGl),
        _ => None,
    }
}

/// Builds an orbit record after checking the parameter constraints of the
/// case.
pub fn orbit(pair: &SymmetricPairSpec, case_id: &str, params: Params) -> Result<OrbitRecord> {
    let fam = case_family(case_id).ok_or_else(|| Error::UnsupportedCase(case_id.to_string()))?;
    if fam != pair.family {
        return Err(invalid(
            case_id,
            format!("case does not belong to pair {}", pair.key()),
        ));
    }
    let n = pair.rank();
    let c = case_id;
    let check = |ok: bool, why: &str| if ok { Ok(()) } else { Err(invalid(c, why)) };
    let parts: Vec<SignedPart> = match case_id {
        "1.1" | "1.2" => {
            let (p, q) = pair.pq().expect("type A");
            let r = need_r(c, &params)?;
            check(r >= 1 && r <= p.min(q), "need 1 ≤ r ≤ min(p, q)")?;
            let sign = if case_id == "1.1" { 1 } else { -1 };
            vec![sp(2, sign, r), sp(1, 1, p - r), sp(1, -1, q - r)]
        }
        "1.3" => {
            let (p, q) = pair.pq().expect("type A");
            let (r, s) = need_rs(c, &params)?;
            check(
                r >= 1 && s >= 1 && r + s <= p.min(q),
                "need r, s ≥ 1 and r + s ≤ min(p, q)",
            )?;
            vec![
                sp(2, 1, r),
                sp(2, -1, s),
                sp(1, 1, p - r - s),
                sp(1, -1, q - r - s),
            ]
        }
        "1.4" => {
            let (p, q) = pair.pq().expect("type A");
            check(q == 2 && p >= 4, "need q = 2 and p ≥ 4")?;
            vec![sp(3, 1, 2), sp(1, 1, p - 4)]
        }
        "1.5" => {
            let (p, q) = pair.pq().expect("type A");
            check(p == 2 && q >= 4, "need p = 2 and q ≥ 4")?;
            vec![sp(3, -1, 2), sp(1, -1, q - 4)]
        }
        "1.6" => {
            let (p, q) = pair.pq().expect("type A");
            let (r, s) = need_rs(c, &params)?;
            check(
                r + s + 2 <= p && r + s < q,
                "need r + s + 2 ≤ p and r + s + 1 ≤ q",
            )?;
            vec![
                sp(3, 1, 1),
                sp(2, 1, r),
                sp(2, -1, s),
                sp(1, 1, p - r - s - 2),
                sp(1, -1, q - r - s - 1),
            ]
        }
        "1.7" => {
            let (p, q) = pair.pq().expect("type A");
            let (r, s) = need_rs(c, &params)?;
            check(
                r + s < p && r + s + 2 <= q,
                "need r + s + 1 ≤ p and r + s + 2 ≤ q",
            )?;
            vec![
                sp(3, -1, 1),
                sp(2, 1, r),
                sp(2, -1, s),
                sp(1, 1, p - r - s - 1),
                sp(1, -1, q - r - s - 2),
            ]
        }
        "2.1" => {
            need_variant(c, &params)?;
            vec![sp(2, 1, 2), sp(1, 1, 2 * n - 3)]
        }
        "2.2" => vec![sp(3, 1, 1), sp(1, 1, 2 * n - 3), sp(1, -1, 1)],
        "2.3" => {
            need_variant(c, &params)?;
            vec![sp(3, -1, 1), sp(1, 1, 2 * n - 2)]
        }
        "2.4" => vec![sp(3, 1, 2), sp(1, 1, 2 * n - 5)],
        "3.1" | "3.2" => {
            let r = need_r(c, &params)?;
            check(r >= 1 && r <= n, "need 1 ≤ r ≤ n")?;
            let sign = if case_id == "3.1" { 1 } else { -1 };
            vec![sp(2, sign, r), sp(1, 1, 2 * n - 2 * r)]
        }
        "3.3" => {
            let (r, s) = need_rs(c, &params)?;
            check(
                r >= 1 && s >= 1 && r + s <= n,
                "need r, s ≥ 1 and r + s ≤ n",
            )?;
            vec![sp(2, 1, r), sp(2, -1, s), sp(1, 1, 2 * n - 2 * r - 2 * s)]
        }
        "4.1" => {
            need_variant(c, &params)?;
            vec![sp(2, 1, 2), sp(1, 1, 2 * n - 4)]
        }
        "4.2" => vec![sp(3, 1, 1), sp(1, 1, 2 * n - 4), sp(1, -1, 1)],
        "4.3" => {
            need_variant(c, &params)?;
            vec![sp(3, -1, 1), sp(1, 1, 2 * n - 3)]
        }
        "4.4" => vec![sp(3, 1, 2), sp(1, 1, 2 * n - 6)],
        "5.1" | "5.2" => {
            let r = need_r(c, &params)?;
            check(r >= 1 && 2 * r <= n, "need 1 ≤ r and 2r ≤ n")?;
            let sign = if case_id == "5.1" { 1 } else { -1 };
            vec![sp(2, sign, r), sp(1, 1, n - 2 * r)]
        }
        "5.3" => {
            let (r, s) = need_rs(c, &params)?;
            check(
                r >= 1 && s >= 1 && 2 * r + 2 * s <= n,
                "need r, s ≥ 1 and 2r + 2s ≤ n",
            )?;
            vec![sp(2, 1, r), sp(2, -1, s), sp(1, 1, n - 2 * r - 2 * s)]
        }
        "5.4" => vec![sp(3, 1, 1), sp(1, 1, n - 3)],
        _ => return Err(Error::UnsupportedCase(case_id.to_string())),
    };
    Ok(OrbitRecord {
        pair: pair.clone(),
        case_id: case_id.to_string(),
        params,
        signed_partition: parts,
    })
}

/// All cases of the classification valid for the pair, with `r, s` up to
/// `max_params`. Variants `I` and `II` are separate records.
pub fn list_orbits(pair: &SymmetricPairSpec, max_params: usize) -> Vec<OrbitRecord> {
    let mut candidates: Vec<(&str, Params)> = Vec::new();
    let range = 0..=max_params;
    let with_r = |out: &mut Vec<(&str, Params)>, case: &'static str| {
        out.extend(range.clone().map(|r| (case, Params::r(r))));
    };
    let with_rs = |out: &mut Vec<(&str, Params)>, case: &'static str| {
        for r in range.clone() {
            out.extend(range.clone().map(|s| (case, Params::rs(r, s))));
        }
    };
    let with_variants = |out: &mut Vec<(&str, Params)>, case: &'static str| {
        out.extend([Variant::I, Variant::II].map(|v| (case, Params::variant(v))));
    };
    match pair.family {
        Family::SLpq => {
            with_r(&mut candidates, "1.1");
            with_r(&mut candidates, "1.2");
            with_rs(&mut candidates, "1.3");
            candidates.push(("1.4", Params::none()));
            candidates.push(("1.5", Params::none()));
            with_rs(&mut candidates, "1.6");
            with_rs(&mut candidates, "1.7");
        }
        Family::SOOdd => {
            with_variants(&mut candidates, "2.1");
            candidates.push(("2.2", Params::none()));
            with_variants(&mut candidates, "2.3");
            candidates.push(("2.4", Params::none()));
        }
        Family::SOEvenVector => {
            with_variants(&mut candidates, "4.1");
            candidates.push(("4.2", Params::none()));
            with_variants(&mut candidates, "4.3");
            candidates.push(("4.4", Params::none()));
        }
        Family::Sp => {
            with_r(&mut candidates, "3.1");
            with_r(&mut candidates, "3.2");
            with_rs(&mut candidates, "3.3");
        }
        Family::SOEvenGl => {
            with_r(&mut candidates, "5.1");
            with_r(&mut candidates, "5.2");
            with_rs(&mut candidates, "5.3");
            candidates.push(("5.4", Params::none()));
        }
    }
    candidates
        .into_iter()
        .filter_map(|(c, p)| orbit(pair, c, p).ok())
        .collect()
}

/// Parses an orbit identifier produced by [`OrbitRecord::id`].
pub fn parse_orbit_id(id: &str) -> Result<OrbitRecord> {
    let bad = || Error::BadOrbitId(id.to_string());
    let parts: Vec<&str> = id.split('/').collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(bad());
    }
    let pair = crate::hermitian::parse_pair_key(parts[0])?;
    let mut params = Params::none();
    if parts[2] != "-" {
        for kv in parts[2].split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            let v: usize = v.parse().map_err(|_| bad())?;
            match k {
                "r" => params.r = Some(v),
                "s" => params.s = Some(v),
                _ => return Err(bad()),
            }
        }
    }
    if let Some(v) = parts.get(3) {
        params.variant = Some(match *v {
            "I" => Variant::I,
            "II" => Variant::II,
            _ => return Err(bad()),
        });
    }
    orbit(&pair, parts[1], params)
}

/// Accumulates sparse matrix terms for the formulas of one family.
struct Builder<'a> {
    real: &'a Realization,
    m: IntMatrix,
}

impl<'a> Builder<'a> {
    fn new(real: &'a Realization) -> Self {
        Builder {
            real,
            m: IntMatrix::zeros(real.dim),
        }
    }

    fn unit(&mut self, i: usize, j: usize, c: i64) {
        self.m.add_at(i, j, c);
    }

    /// Skew completion `A − J Aᵀ J` of a matrix unit, for orthogonal models.
    fn skew(&mut self, i: usize, j: usize, c: i64) {
        let pi = self.real.form_partner.as_ref().expect("orthogonal model");
        self.m.add_at(i, j, c);
        self.m.add_at(pi[j], pi[i], -c);
    }

    fn done(self) -> IntMatrix {
        self.m
    }
}

fn diag(real: &Realization, d: &[(usize, i64)]) -> IntMatrix {
    let mut h = IntMatrix::zeros(real.dim);
    for &(i, v) in d {
        h.set(i, i, v);
    }
    h
}

/// Builds the normal triple of the orbit in the defining representation.
pub fn build_triple(orbit: &OrbitRecord) -> Result<MatrixTriple> {
    let real = Realization::for_pair(&orbit.pair);
    let params = orbit.params;
    let c = orbit.case_id.as_str();
    let (h, e, f) = match real.kind {
        RealizationKind::SlPq { p, q } => build_slpq(&real, c, p, q, &params)?,
        RealizationKind::SoOdd { n } | RealizationKind::SoEvenVector { n } => {
            build_so_vector(&real, c, n, &params)?
        }
        RealizationKind::Sp { n } => build_sp(&real, c, n, &params)?,
        RealizationKind::SoEvenGl { n } => build_so_gl(&real, c, n, &params)?,
    };
    Ok(MatrixTriple {
        h,
        e,
        f,
        realization: real,
    })
}

type Triple = (IntMatrix, IntMatrix, IntMatrix);

fn build_slpq(real: &Realization, c: &str, p: usize, q: usize, params: &Params) -> Result<Triple> {
    let ei = |i: usize| i - 1;
    let ej = |j: usize| p + j - 1;
    // e_i ⊗ φ'_j sends e'_j to e_i; φ_i ⊗ e'_j sends e_i to e'_j.
    let t = |b: &mut Builder, i: usize, j: usize, c: i64| b.unit(ei(i), ej(j), c);
    let u = |b: &mut Builder, i: usize, j: usize, c: i64| b.unit(ej(j), ei(i), c);
    let (mut e, mut f) = (Builder::new(real), Builder::new(real));
    let mut hd: Vec<(usize, i64)> = Vec::new();
    match c {
        "1.1" => {
            let r = need_r(c, params)?;
            for i in 1..=r {
                t(&mut e, i, q - r + i, 1);
                u(&mut f, i, q - r + i, 1);
                hd.push((ei(i), 1));
                hd.push((ej(q - r + i), -1));
            }
        }
        "1.2" => {
            let r = need_r(c, params)?;
            for i in 1..=r {
                u(&mut e, p - r + i, i, 1);
                t(&mut f, p - r + i, i, 1);
                hd.push((ei(p - r + i), -1));
                hd.push((ej(i), 1));
            }
        }
        "1.3" => {
            let (r, s) = need_rs(c, params)?;
            for i in 1..=r {
                t(&mut e, i, q - r + i, 1);
                u(&mut f, i, q - r + i, 1);
                hd.push((ei(i), 1));
                hd.push((ej(q - r + i), -1));
            }
            for i in 1..=s {
                u(&mut e, p - s + i, i, 1);
                t(&mut f, p - s + i, i, 1);
                hd.push((ei(p - s + i), -1));
                hd.push((ej(i), 1));
            }
        }
        "1.4" => {
            t(&mut e, 1, 1, 1);
            t(&mut e, 2, 2, 1);
            u(&mut e, p - 1, 1, 1);
            u(&mut e, p, 2, 1);
            u(&mut f, 1, 1, 2);
            u(&mut f, 2, 2, 2);
            t(&mut f, p - 1, 1, 2);
            t(&mut f, p, 2, 2);
            hd.extend([(ei(1), 2), (ei(2), 2), (ei(p - 1), -2), (ei(p), -2)]);
        }
        "1.5" => {
            t(&mut e, 1, q - 1, 1);
            t(&mut e, 2, q, 1);
            u(&mut e, 1, 1, 1);
            u(&mut e, 2, 2, 1);
            u(&mut f, 1, q - 1, 2);
            u(&mut f, 2, q, 2);
            t(&mut f, 1, 1, 2);
            t(&mut f, 2, 2, 2);
            hd.extend([(ej(1), 2), (ej(2), 2), (ej(q - 1), -2), (ej(q), -2)]);
        }
        "1.6" => {
            let (r, s) = need_rs(c, params)?;
            t(&mut e, 1, q - r, 1);
            u(&mut e, p, q - r, 1);
            u(&mut f, 1, q - r, 2);
            t(&mut f, p, q - r, 2);
            for i in 1..=r {
                t(&mut e, i + 1, q - r + i, 1);
                u(&mut f, i + 1, q - r + i, 1);
            }
            for i in 1..=s {
                u(&mut e, p - s + i - 1, i, 1);
                t(&mut f, p - s + i - 1, i, 1);
            }
            hd.push((ei(1), 2));
            hd.extend((2..=r + 1).map(|i| (ei(i), 1)));
            hd.extend((p - s..p).map(|i| (ei(i), -1)));
            hd.push((ei(p), -2));
            hd.extend((1..=s).map(|i| (ej(i), 1)));
            hd.extend((q - r + 1..=q).map(|i| (ej(i), -1)));
        }
        "1.7" => {
            let (r, s) = need_rs(c, params)?;
            for i in 1..=r {
                t(&mut e, i, q - r + i - 1, 1);
                u(&mut f, i, q - r + i - 1, 1);
            }
            t(&mut e, p - s, q, 1);
            u(&mut e, p - s, 1, 1);
            u(&mut f, p - s, q, 2);
            t(&mut f, p - s, 1, 2);
            for i in 1..=s {
                u(&mut e, p - s + i, i + 1, 1);
                t(&mut f, p - s + i, i + 1, 1);
            }
            hd.extend((1..=r).map(|i| (ei(i), 1)));
            hd.extend((p - s + 1..=p).map(|i| (ei(i), -1)));
            hd.push((ej(1), 2));
            hd.extend((2..=s + 1).map(|i| (ej(i), 1)));
            hd.extend((q - r..q).map(|i| (ej(i), -1)));
            hd.push((ej(q), -2));
        }
        _ => return Err(Error::UnsupportedCase(c.to_string())),
    }
    Ok((diag(real, &hd), e.done(), f.done()))
}

fn build_so_vector(real: &Realization, c: &str, n: usize, params: &Params) -> Result<Triple> {
    let odd = matches!(real.kind, RealizationKind::SoOdd { .. });
    let m = real.dim - 2;
    // Index of e_i for i ∈ {±1, …, ±(n−1)} and e_0 in the odd case.
    let v = |i: i64| -> usize {
        if i > 0 {
            (i - 1) as usize
        } else if i == 0 {
            assert!(odd);
            n - 1
        } else {
            m - (-i) as usize
        }
    };
    let w = |j: i64| -> usize {
        if j > 0 {
            m
        } else {
            m + 1
        }
    };
    // v ⊗ φ'_w as the skew completion of the unit sending e'_w to v.
    let tens = |b: &mut Builder, vs: &[(i64, i64)], ws: &[(i64, i64)], scale: i64| {
        for &(i, a) in vs {
            for &(j, d) in ws {
                b.skew(v(i), w(j), scale * a * d);
            }
        }
    };
    let (mut e, mut f) = (Builder::new(real), Builder::new(real));
    let mut hd: Vec<(usize, i64)> = Vec::new();
    let hw = |hd: &mut Vec<(usize, i64)>, a: i64| {
        hd.push((m, a));
        hd.push((m + 1, -a));
    };
    let hv = |hd: &mut Vec<(usize, i64)>, i: i64, a: i64| {
        hd.push((v(i), a));
        hd.push((v(-i), -a));
    };
    let (c1, c2, c3, c4) = if odd {
        ("2.1", "2.2", "2.3", "2.4")
    } else {
        ("4.1", "4.2", "4.3", "4.4")
    };
    let special: Vec<(i64, i64)> = if odd {
        vec![(0, 1)]
    } else {
        let k = n as i64 - 1;
        vec![(k, 1), (-k, -1)]
    };
    match c {
        _ if c == c1 => {
            let var = need_variant(c, params)?;
            let (we, wf, a) = match var {
                Variant::I => (-1, 1, 1),
                Variant::II => (1, -1, -1),
            };
            tens(&mut e, &[(1, 1)], &[(we, 1)], 1);
            tens(&mut f, &[(-1, 1)], &[(wf, 1)], -1);
            hv(&mut hd, 1, 1);
            hw(&mut hd, a);
        }
        _ if c == c2 => {
            tens(&mut e, &[(1, 1)], &[(1, 1), (-1, -1)], 1);
            tens(&mut f, &[(-1, 1)], &[(1, 1), (-1, -1)], 1);
            hv(&mut hd, 1, 2);
        }
        _ if c == c3 => {
            let var = need_variant(c, params)?;
            let (we, wf, a) = match var {
                Variant::I => (-1, 1, 2),
                Variant::II => (1, -1, -2),
            };
            // f = −2 e_0 ⊗ φ' in the odd case, f = v ⊗ φ' for
            // v = e_{n−1} − e_{−n+1} in the even case.
            let fs = if odd { -2 } else { 1 };
            tens(&mut e, &special, &[(we, 1)], 1);
            tens(&mut f, &special, &[(wf, 1)], fs);
            hw(&mut hd, a);
        }
        _ if c == c4 => {
            tens(&mut e, &[(1, 1)], &[(-1, 1)], 1);
            tens(&mut e, &[(2, 1)], &[(1, 1)], -1);
            tens(&mut f, &[(-2, 1)], &[(-1, 1)], 2);
            tens(&mut f, &[(-1, 1)], &[(1, 1)], -2);
            hv(&mut hd, 1, 2);
            hv(&mut hd, 2, 2);
        }
        _ => return Err(Error::UnsupportedCase(c.to_string())),
    }
    Ok((diag(real, &hd), e.done(), f.done()))
}

fn gl_h(real: &Realization, n: usize, a: &[(usize, i64)]) -> IntMatrix {
    // h = diag(a, −a) for a diagonal a ∈ gl(n), given on 1-based indices.
    let mut d = Vec::new();
    for &(i, v) in a {
        d.push((i - 1, v));
        d.push((n + i - 1, -v));
    }
    diag(real, &d)
}

fn build_sp(real: &Realization, c: &str, n: usize, params: &Params) -> Result<Triple> {
    // e_a e_b and φ_a φ_b as literal units in the off-diagonal blocks; the
    // formulas always sum symmetric pairs.
    let se = |b: &mut Builder, x: usize, y: usize, c: i64| b.unit(x - 1, n + y - 1, c);
    let sf = |b: &mut Builder, x: usize, y: usize, c: i64| b.unit(n + x - 1, y - 1, c);
    let (mut e, mut f) = (Builder::new(real), Builder::new(real));
    let mut a: Vec<(usize, i64)> = Vec::new();
    let (plus, minus) = match c {
        "3.1" => (need_r(c, params)?, 0),
        "3.2" => (0, need_r(c, params)?),
        "3.3" => need_rs(c, params)?,
        _ => return Err(Error::UnsupportedCase(c.to_string())),
    };
    let r = plus;
    for i in 1..=r {
        se(&mut e, i, r - i + 1, 1);
        sf(&mut f, i, r - i + 1, 1);
        a.push((i, 1));
    }
    let s = minus;
    for i in 1..=s {
        sf(&mut e, n - s + i, n - i + 1, 1);
        se(&mut f, n - s + i, n - i + 1, 1);
        a.push((n - s + i, -1));
    }
    Ok((gl_h(real, n, &a), e.done(), f.done()))
}

fn build_so_gl(real: &Realization, c: &str, n: usize, params: &Params) -> Result<Triple> {
    // e_x ∧ e_y fills B = E_xy − E_yx; φ_x ∧ φ_y fills C = E_yx − E_xy.
    let we = |b: &mut Builder, x: usize, y: usize, c: i64| {
        b.unit(x - 1, n + y - 1, c);
        b.unit(y - 1, n + x - 1, -c);
    };
    let wf = |b: &mut Builder, x: usize, y: usize, c: i64| {
        b.unit(n + y - 1, x - 1, c);
        b.unit(n + x - 1, y - 1, -c);
    };
    let (mut e, mut f) = (Builder::new(real), Builder::new(real));
    let mut a: Vec<(usize, i64)> = Vec::new();
    if c == "5.4" {
        we(&mut e, 1, 2, 1);
        wf(&mut e, 2, n, 1);
        wf(&mut f, 1, 2, 2);
        we(&mut f, 2, n, 2);
        a.push((1, 2));
        a.push((n, -2));
        return Ok((gl_h(real, n, &a), e.done(), f.done()));
    }
    let (r, s) = match c {
        "5.1" => (need_r(c, params)?, 0),
        "5.2" => (0, need_r(c, params)?),
        "5.3" => need_rs(c, params)?,
        _ => return Err(Error::UnsupportedCase(c.to_string())),
    };
    for i in 1..=r {
        we(&mut e, i, 2 * r - i + 1, 1);
        wf(&mut f, i, 2 * r - i + 1, 1);
    }
    a.extend((1..=2 * r).map(|i| (i, 1)));
    for i in 1..=s {
        wf(&mut e, n - 2 * s + i, n - i + 1, 1);
        we(&mut f, n - 2 * s + i, n - i + 1, 1);
    }
    a.extend((n - 2 * s + 1..=n).map(|i| (i, -1)));
    Ok((gl_h(real, n, &a), e.done(), f.done()))
}

/// Outcome of [`verify_triple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub sl2_ok: bool,
    pub h_in_k: bool,
    pub e_in_p: bool,
    pub f_in_p: bool,
}

impl TripleReport {
    pub fn all_ok(&self) -> bool {
        self.sl2_ok && self.h_in_k && self.e_in_p && self.f_in_p
    }
}

/// Checks the normal triple relations and the `k`/`p` membership.
pub fn verify_triple(t: &MatrixTriple) -> TripleReport {
    let r = &t.realization;
    let sl2_ok = t.h.bracket(&t.e) == t.e.scale(2)
        && t.h.bracket(&t.f) == t.f.scale(-2)
        && t.e.bracket(&t.f) == t.h;
    TripleReport {
        sl2_ok,
        h_in_k: r.in_g(&t.h) && r.in_k(&t.h),
        e_in_p: r.in_g(&t.e) && r.in_p(&t.e),
        f_in_p: r.in_g(&t.f) && r.in_p(&t.f),
    }
}

fn flatten(ms: &[IntMatrix]) -> Vec<Vec<i64>> {
    ms.iter().map(|m| m.as_slice().to_vec()).collect()
}

/// Dimensions of the `ad(h)`-eigenspaces `k(i)` on `k`.
pub fn adh_grading(t: &MatrixTriple) -> Result<BTreeMap<i64, usize>> {
    let kb = t.realization.k_basis();
    let dim_k = kb.len();
    let ad: Vec<IntMatrix> = kb.iter().map(|x| t.h.bracket(x)).collect();
    let direct: Option<Vec<i64>> = kb
        .iter()
        .zip(&ad)
        .map(|(x, a)| {
            if a.is_zero() {
                return Some(0);
            }
            let c = x.proportionality(a)?;
            c.is_integer()
                .then(|| c.to_integer().try_into().ok())
                .flatten()
        })
        .collect();
    if let Some(eigs) = direct {
        let mut out = BTreeMap::new();
        for i in eigs {
            *out.entry(i).or_insert(0) += 1;
        }
        return Ok(out);
    }
    let bound = (0..t.h.dim())
        .map(|i| (0..t.h.dim()).map(|j| t.h.get(i, j).abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
        * 2;
    let mut out = BTreeMap::new();
    let mut total = 0;
    for i in -bound..=bound {
        let rows: Vec<IntMatrix> = ad.iter().zip(&kb).map(|(a, x)| a - &x.scale(i)).collect();
        let d = dim_k - rank_i64(&flatten(&rows));
        if d > 0 {
            out.insert(i, d);
            total += d;
        }
    }
    if total != dim_k {
        return Err(Error::NonIntegralGrading);
    }
    Ok(out)
}

/// `(dim K_e, dim Ke)`: the centralizer of `e` in `k` and the orbit dimension.
pub fn centralizer_dim(t: &MatrixTriple) -> (usize, usize) {
    let kb = t.realization.k_basis();
    let images: Vec<IntMatrix> = kb.iter().map(|x| x.bracket(&t.e)).collect();
    let orbit = rank_i64(&flatten(&images));
    (kb.len() - orbit, orbit)
}

/// The `p`-height `max{ n : (ad e)^n(p) ≠ 0 }`.
pub fn p_height(t: &MatrixTriple) -> usize {
    let mut current = t.realization.p_basis();
    let mut n = 0;
    loop {
        let next: Vec<IntMatrix> = current
            .iter()
            .map(|x| t.e.bracket(x))
            .filter(|x| !x.is_zero())
            .collect();
        if next.is_empty() {
            return n;
        }
        n += 1;
        current = next;
    }
}

/// Jordan type of `e` on the defining representation, as
/// `(part, multiplicity)` sorted by decreasing part.
pub fn jordan_type(e: &IntMatrix) -> Vec<(usize, usize)> {
    let n = e.dim();
    let mut ranks = vec![n];
    let mut pw = IntMatrix::identity(n);
    while *ranks.last().expect("nonempty") > 0 {
        pw = &pw * e;
        ranks.push(pw.rank());
        if ranks.len() > n + 1 {
            break;
        }
    }
    // Number of blocks of size ≥ k is rank(e^{k−1}) − rank(e^k).
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut out = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let next = at_least.get(k).copied().unwrap_or(0);
        let mult = at_least[k - 1] - next;
        if mult > 0 {
            out.push((k, mult));
        }
    }
    out
}

/// Decomposition of `e` along `p = p1 ⊕ p2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiconeReport {
    pub h_weight_on_e: i64,
    pub chi_charges: (i64, i64),
    pub e1_nonzero: bool,
    pub e2_nonzero: bool,
    pub both_components_nonzero: bool,
}

/// Splits `e = e1 + e2` by the central cocharacter and records the data of
/// the bicone property.
pub fn bicone_witness(t: &MatrixTriple, spec: &SymmetricPairSpec) -> BiconeReport {
    let r = &t.realization;
    let den = r.coweight_den;
    let mut e1 = IntMatrix::zeros(r.dim);
    let mut e2 = IntMatrix::zeros(r.dim);
    for (i, j, v) in t.e.entries() {
        let c = r.charge(i, j);
        if c == den {
            e1.set(i, j, v);
        } else if c == -den {
            e2.set(i, j, v);
        }
    }
    let h_weight = if t.e.is_zero() {
        2
    } else {
        t.e.proportionality(&t.h.bracket(&t.e))
            .and_then(|c| (c.is_integer()).then(|| c.to_integer().try_into().unwrap_or(0)))
            .unwrap_or(0)
    };
    let (a, b) = (!e1.is_zero(), !e2.is_zero());
    BiconeReport {
        h_weight_on_e: h_weight,
        chi_charges: spec.chi_charges,
        e1_nonzero: a,
        e2_nonzero: b,
        both_components_nonzero: a && b,
    }
}

const MODULUS: u64 = (1 << 61) - 1;

fn matmul_mod(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                if b[k][j] != 0 {
                    out[i][j] = add_mod(out[i][j], mul_mod(a[i][k], b[k][j], MODULUS), MODULUS);
                }
            }
        }
    }
    out
}

fn to_mod(m: &IntMatrix) -> Vec<Vec<u64>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|&x| reduce_mod(x, MODULUS)).collect())
        .collect()
}

/// `exp(x)` of a nilpotent matrix, reduced modulo the prime.
fn exp_mod(x: &IntMatrix) -> Vec<Vec<u64>> {
    let n = x.dim();
    let xm = to_mod(x);
    let mut acc = to_mod(&IntMatrix::identity(n));
    let mut term = acc.clone();
    let mut fact_inv = 1u64;
    for k in 1..=n as u64 {
        term = matmul_mod(&term, &xm);
        fact_inv = mul_mod(fact_inv, inv_mod(k, MODULUS), MODULUS);
        for i in 0..n {
            for j in 0..n {
                acc[i][j] = add_mod(acc[i][j], mul_mod(term[i][j], fact_inv, MODULUS), MODULUS);
            }
        }
    }
    acc
}

fn bracket_mod(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<u64> {
    let ab = matmul_mod(a, b);
    let ba = matmul_mod(b, a);
    ab.iter()
        .flatten()
        .zip(ba.iter().flatten())
        .map(|(&x, &y)| crate::linalg::sub_mod(x, y, MODULUS))
        .collect()
}

/// Number of random conjugates tried by [`is_spherical`].
pub const SPHERICITY_ATTEMPTS: usize = 8;

/// Whether `Ke` has an open orbit of the Borel subgroup `B ⊂ K`.
///
/// The test compares `dim b·e` with `dim Ke`. It first uses `e` itself; if
/// that fails, it retries with `u⁻¹ e u` for `u = exp(N)` and `N` a pseudo
/// random element of the opposite nilradical, computing ranks modulo a
/// large prime. A modular rank equal to `dim Ke` certifies the exact
/// equality because it is a lower bound for the rational rank, and
/// `dim b·e ≤ dim Ke` always holds.
pub fn is_spherical(t: &MatrixTriple) -> bool {
    let (_, orbit_dim) = centralizer_dim(t);
    if orbit_dim == 0 {
        return true;
    }
    let borel = t.realization.borel_basis();
    let images: Vec<IntMatrix> = borel.iter().map(|x| x.bracket(&t.e)).collect();
    if rank_i64(&flatten(&images)) == orbit_dim {
        return true;
    }
    let opposite = t.realization.opposite_nilradical();
    let borel_mod: Vec<Vec<Vec<u64>>> = borel.iter().map(to_mod).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..SPHERICITY_ATTEMPTS {
        let mut nil = IntMatrix::zeros(t.e.dim());
        for x in &opposite {
            let c: i64 = rng.gen_range(1..=3);
            nil = &nil + &x.scale(c);
        }
        let u = exp_mod(&nil);
        let u_inv = exp_mod(&nil.scale(-1));
        let conj = matmul_mod(&matmul_mod(&u_inv, &to_mod(&t.e)), &u);
        let rows: Vec<Vec<u64>> = borel_mod.iter().map(|b| bracket_mod(b, &conj)).collect();
        if rank_mod_p(&rows, MODULUS) == orbit_dim {
            return true;
        }
    }
    false
}

/// Per-orbit verification summary used by reports and acceptance tests.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCheck {
    pub id: String,
    pub case_id: String,
    pub signed_partition: String,
    pub triple: TripleReport,
    pub spherical: bool,
    pub dim_k_e: usize,
    pub dim_orbit: usize,
    pub p_height: usize,
    pub jordan_ok: bool,
    pub grading_ok: bool,
    pub bicone: BiconeReport,
}

impl OrbitCheck {
    pub fn all_ok(&self) -> bool {
        self.triple.all_ok() && self.spherical && self.jordan_ok && self.grading_ok
    }
}

/// Runs every structural check on one orbit.
pub fn check_orbit(orbit: &OrbitRecord) -> Result<OrbitCheck> {
    let t = build_triple(orbit)?;
    let triple = verify_triple(&t);
    let (dim_k_e, dim_orbit) = centralizer_dim(&t);
    let grading_ok = match adh_grading(&t) {
        Ok(g) => g.iter().all(|(i, d)| g.get(&-i) == Some(d)),
        Err(_) => false,
    };
    Ok(OrbitCheck {
        id: orbit.id(),
        case_id: orbit.case_id.clone(),
        signed_partition: render_signed_partition(&orbit.signed_partition),
        triple,
        spherical: is_spherical(&t),
        dim_k_e,
        dim_orbit,
        p_height: p_height(&t),
        jordan_ok: jordan_type(&t.e) == orbit.expected_jordan_type(),
        grading_ok,
        bicone: bicone_witness(&t, &orbit.pair),
    })
}

/// The coweight of the realization as exact rationals.
pub fn coweight(r: &Realization) -> Vec<Rational> {
    r.coweight_num
        .iter()
        .map(|&z| frac(z, r.coweight_den))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{pair, pair_slpq};
    use crate::linalg::{kernel, rat};
    use crate::rootlat::CartanType;

    fn all_small_pairs() -> Vec<SymmetricPairSpec> {
        let mut v = Vec::new();
        for p in 1..=4 {
            for q in 1..=4 {
                v.push(pair_slpq(p, q).unwrap());
            }
        }
        v.push(pair(CartanType::B, 3, 1).unwrap());
        v.push(pair(CartanType::B, 4, 1).unwrap());
        v.push(pair(CartanType::C, 2, 2).unwrap());
        v.push(pair(CartanType::C, 3, 3).unwrap());
        v.push(pair(CartanType::D, 5, 1).unwrap());
        v.push(pair(CartanType::D, 4, 4).unwrap());
        v.push(pair(CartanType::D, 5, 5).unwrap());
        v
    }

    /// Centralizer dimension by an independent route: the rational kernel of
    /// `X ↦ [X, e]` on the coefficient space of the `k` basis.
    fn centralizer_oracle(t: &MatrixTriple) -> usize {
        let kb = t.realization.k_basis();
        let n2 = t.e.dim() * t.e.dim();
        let images: Vec<IntMatrix> = kb.iter().map(|x| x.bracket(&t.e)).collect();
        let rows: Vec<Vec<Rational>> = (0..n2)
            .map(|k| images.iter().map(|m| rat(m.as_slice()[k])).collect())
            .collect();
        kernel(&rows, kb.len()).len()
    }

    #[test]
    fn basis_dimensions() {
        for spec in all_small_pairs() {
            let r = Realization::for_pair(&spec);
            let g = r.g_basis();
            assert!(g.iter().all(|x| r.in_g(x)), "{spec}");
            assert!(g.iter().all(|x| r.in_k(x) || r.in_p(x)), "{spec}");
            assert_eq!(r.k_basis().len(), spec.dim_k(), "{spec}");
            assert_eq!(r.p_basis().len(), spec.dim_p(), "{spec}");
            let b = r.borel_basis().len();
            assert_eq!(2 * b, spec.dim_k() + r.rank_k(), "{spec}");
        }
    }

    #[test]
    fn case_1_1_small() {
        let spec = pair_slpq(2, 2).unwrap();
        let o = orbit(&spec, "1.1", Params::r(1)).unwrap();
        let t = build_triple(&o).unwrap();
        assert_eq!(t.e.entries(), vec![(0, 3, 1)]);
        assert_eq!(t.h, IntMatrix::diagonal(&[1, 0, 0, -1]));
        assert!(verify_triple(&t).all_ok());
        let g = adh_grading(&t).unwrap();
        assert_eq!(g.get(&0), Some(&3));
        assert_eq!(g.get(&1), Some(&2));
        assert_eq!(g.get(&-1), Some(&2));
        assert_eq!(centralizer_dim(&t), (4, 3));
        assert_eq!(centralizer_oracle(&t), 4);
        assert_eq!(p_height(&t), 2);
        assert!(is_spherical(&t));
        assert_eq!(o.id(), "A:3:p=2/1.1/r=1");
    }

    #[test]
    fn case_2_2_entries() {
        let spec = pair(CartanType::B, 4, 1).unwrap();
        let o = orbit(&spec, "2.2", Params::none()).unwrap();
        let t = build_triple(&o).unwrap();
        assert!(verify_triple(&t).all_ok());
        let b = bicone_witness(&t, &spec);
        assert!(b.both_components_nonzero);
        assert_eq!(b.h_weight_on_e, 2);
        assert_eq!(b.chi_charges, (2, -2));
    }

    #[test]
    fn case_5_4_entries() {
        let spec = pair(CartanType::D, 4, 4).unwrap();
        let o = orbit(&spec, "5.4", Params::none()).unwrap();
        let t = build_triple(&o).unwrap();
        // e_1 ∧ e_2 in the upper right block, φ_2 ∧ φ_4 in the lower left.
        assert_eq!(t.e.get(0, 5), 1);
        assert_eq!(t.e.get(1, 4), -1);
        assert_eq!(t.e.get(7, 1), 1);
        assert_eq!(t.e.get(5, 3), -1);
        assert!(verify_triple(&t).all_ok());
    }

    #[test]
    fn broken_triple_is_reported() {
        let spec = pair_slpq(2, 2).unwrap();
        let o = orbit(&spec, "1.1", Params::r(1)).unwrap();
        let mut t = build_triple(&o).unwrap();
        t.f = IntMatrix::zeros(4);
        let rep = verify_triple(&t);
        assert!(!rep.sl2_ok);
        assert!(rep.h_in_k && rep.e_in_p && rep.f_in_p);
    }

    #[test]
    fn all_small_orbits_pass() {
        for spec in all_small_pairs() {
            for o in list_orbits(&spec, 3) {
                let c = check_orbit(&o).unwrap();
                assert!(c.triple.all_ok(), "{}: {:?}", o.id(), c.triple);
                assert!(c.jordan_ok, "{}", o.id());
                assert!(c.grading_ok, "{}", o.id());
                assert!(c.spherical, "{}", o.id());
                let t = build_triple(&o).unwrap();
                assert_eq!(c.dim_k_e, centralizer_oracle(&t), "{}", o.id());
            }
        }
    }

    #[test]
    fn zero_element() {
        let spec = pair_slpq(2, 3).unwrap();
        let o = orbit(&spec, "1.1", Params::r(1)).unwrap();
        let mut t = build_triple(&o).unwrap();
        t.e = IntMatrix::zeros(5);
        assert_eq!(centralizer_dim(&t), (spec.dim_k(), 0));
        assert_eq!(p_height(&t), 0);
        assert!(is_spherical(&t));
    }

    #[test]
    fn regular_nilpotent_is_not_spherical() {
        let spec = pair_slpq(3, 3).unwrap();
        let o = orbit(&spec, "1.1", Params::r(1)).unwrap();
        let mut t = build_triple(&o).unwrap();
        // Chain e'_1 → e_1 → e'_2 → e_2 → e'_3 → e_3.
        t.e = IntMatrix::from_entries(6, &[(0, 3, 1), (4, 0, 1), (1, 4, 1), (5, 1, 1), (2, 5, 1)]);
        assert!(t.realization.in_p(&t.e));
        assert_eq!(jordan_type(&t.e), vec![(6, 1)]);
        assert!(!is_spherical(&t));
    }

    #[test]
    fn orbit_ids_roundtrip() {
        for spec in all_small_pairs() {
            for o in list_orbits(&spec, 2) {
                assert_eq!(parse_orbit_id(&o.id()).unwrap(), o);
            }
        }
        assert!(parse_orbit_id("A:3:p=2/9.9/-").is_err());
        assert!(parse_orbit_id("A:3:p=2/1.1/r=5").is_err());
    }

    #[test]
    fn listed_cases() {
        let so10 = pair(CartanType::D, 5, 1).unwrap();
        let ids: Vec<String> = list_orbits(&so10, 2).iter().map(|o| o.id()).collect();
        assert_eq!(
            ids,
            vec![
                "D:5:vec/4.1/-/I",
                "D:5:vec/4.1/-/II",
                "D:5:vec/4.2/-",
                "D:5:vec/4.3/-/I",
                "D:5:vec/4.3/-/II",
                "D:5:vec/4.4/-"
            ]
        );
        let sp4 = pair(CartanType::C, 2, 2).unwrap();
        let cases: Vec<String> = list_orbits(&sp4, 2).iter().map(|o| o.id()).collect();
        assert_eq!(
            cases,
            vec![
                "C:2/3.1/r=1",
                "C:2/3.1/r=2",
                "C:2/3.2/r=1",
                "C:2/3.2/r=2",
                "C:2/3.3/r=1,s=1"
            ]
        );
    }

    #[test]
    fn special_gradings() {
        let spec = pair(CartanType::B, 3, 1).unwrap();
        for v in [Variant::I, Variant::II] {
            let t = build_triple(&orbit(&spec, "2.3", Params::variant(v)).unwrap()).unwrap();
            let g = adh_grading(&t).unwrap();
            assert_eq!(g.len(), 1);
            assert_eq!(g.get(&0), Some(&spec.dim_k()));
        }
        let spec = pair_slpq(4, 2).unwrap();
        let t = build_triple(&orbit(&spec, "1.4", Params::none()).unwrap()).unwrap();
        let g = adh_grading(&t).unwrap();
        assert!(g.keys().all(|i| i % 2 == 0 && i.abs() <= 4));
        assert_eq!(p_height(&t), 3);
        assert_eq!(t.f.get(4, 0), 2);
    }
}
