//! Classical symmetric pairs of Hermitian type.
//!
//! A pair is determined by a simple group `G` and a simple root `α_p` whose
//! coefficient in the highest root `θ` is 1. Then `K` is the Levi factor of
//! the maximal parabolic attached to `α_p`, and `p = p1 ⊕ p2` with `p1` the
//! irreducible `K`-module of highest weight `θ` and `p2` its dual.

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::rootlat::{highest_root_coeffs, Basis, CartanType, LatticeVector, RootSystem};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The five classical families of Hermitian symmetric pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `SL(p+q)/S(GL(p)×GL(q))`
    SLpq,
    /// `SO(2n+1)/SO(2n−1)×SO(2)`
    SOOdd,
    /// `Sp(2n)/GL(n)`
    Sp,
    /// `SO(2n)/SO(2n−2)×SO(2)`
    SOEvenVector,
    /// `SO(2n)/GL(n)`
    SOEvenGl,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::SLpq => "SLpq",
            Family::SOOdd => "SO_odd",
            Family::Sp => "Sp",
            Family::SOEvenVector => "SO_even_vector",
            Family::SOEvenGl => "SO_even_gl",
        };
        write!(f, "{s}")
    }
}

/// A Hermitian symmetric pair together with the derived structure of `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricPairSpec {
    pub g_type: (CartanType, usize),
    /// Marked simple root, 1-based.
    pub p_index: usize,
    /// Simple factors of `K^ss`, each in Bourbaki numbering.
    pub k_levi_types: Vec<(CartanType, usize)>,
    /// For each factor of `K^ss`, the simple roots of `G` (1-based) in the
    /// factor's own Bourbaki order.
    pub k_nodes: Vec<Vec<usize>>,
    /// Order of the central cocharacter.
    pub m: u64,
    /// Highest weight of `p1` on `K^ss`, in fundamental weights of the factors.
    pub p1_highest_weight: LatticeVector,
    /// Highest weight of `p2` on `K^ss`.
    pub p2_highest_weight: LatticeVector,
    /// Charges of the central character on `p1` and `p2`.
    pub chi_charges: (i64, i64),
    pub family: Family,
}

impl SymmetricPairSpec {
    /// Stable string key, e.g. `A:5:p=2`, `C:4`, `D:6:gl`.
    pub fn key(&self) -> String {
        let n = self.g_type.1;
        match self.family {
            Family::SLpq => format!("A:{n}:p={}", self.p_index),
            Family::SOOdd => format!("B:{n}"),
            Family::Sp => format!("C:{n}"),
            Family::SOEvenVector => format!("D:{n}:vec"),
            Family::SOEvenGl => {
                if self.p_index == n {
                    format!("D:{n}:gl")
                } else {
                    format!("D:{n}:gl'")
                }
            }
        }
    }

    /// `K^ss` as a root system.
    pub fn k_root_system(&self) -> RootSystem {
        RootSystem::new(self.k_levi_types.clone()).expect("factors validated")
    }

    /// For type A, the sizes `(p, q)` of the two blocks.
    pub fn pq(&self) -> Option<(usize, usize)> {
        (self.family == Family::SLpq).then(|| (self.p_index, self.g_type.1 + 1 - self.p_index))
    }

    /// Rank of `G`.
    pub fn rank(&self) -> usize {
        self.g_type.1
    }

    /// Dimension of `K` (including its one-dimensional center).
    pub fn dim_k(&self) -> usize {
        let n = self.rank();
        match self.family {
            Family::SLpq => {
                let (p, q) = self.pq().expect("type A");
                p * p + q * q - 1
            }
            Family::SOOdd => (2 * n - 1) * (2 * n - 2) / 2 + 1,
            Family::SOEvenVector => (2 * n - 2) * (2 * n - 3) / 2 + 1,
            Family::Sp | Family::SOEvenGl => n * n,
        }
    }

    /// Dimension of `p`.
    pub fn dim_p(&self) -> usize {
        let n = self.rank();
        match self.family {
            Family::SLpq => {
                let (p, q) = self.pq().expect("type A");
                2 * p * q
            }
            Family::SOOdd => 2 * (2 * n - 1),
            Family::SOEvenVector => 2 * (2 * n - 2),
            Family::Sp => n * (n + 1),
            Family::SOEvenGl => n * (n - 1),
        }
    }
}

impl fmt::Display for SymmetricPairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// Smallest rank of `G` accepted for a family.
pub fn family_min_rank(family: Family) -> usize {
    match family {
        Family::SLpq => 1,
        Family::SOOdd => 3,
        Family::Sp => 2,
        Family::SOEvenVector => 5,
        Family::SOEvenGl => 4,
    }
}

fn family_of(ty: CartanType, rank: usize, p: usize) -> Option<Family> {
    match ty {
        CartanType::A => Some(Family::SLpq),
        CartanType::B if p == 1 => Some(Family::SOOdd),
        CartanType::C if p == rank => Some(Family::Sp),
        CartanType::D if p == 1 => Some(Family::SOEvenVector),
        CartanType::D if p + 1 >= rank => Some(Family::SOEvenGl),
        _ => None,
    }
}

/// Simple factors of the Levi subsystem `S \ {α_p}`, each with its nodes in
/// Bourbaki order.
fn levi_factors(ty: CartanType, n: usize, p: usize) -> Vec<((CartanType, usize), Vec<usize>)> {
    let chain = |nodes: Vec<usize>| ((CartanType::A, nodes.len()), nodes);
    match (ty, p) {
        (CartanType::A, _) => {
            let mut out = Vec::new();
            if p > 1 {
                out.push(chain((1..p).collect()));
            }
            if p < n {
                out.push(chain((p + 1..=n).collect()));
            }
            out
        }
        (CartanType::B, 1) => vec![((CartanType::B, n - 1), (2..=n).collect())],
        (CartanType::C, _) => vec![chain((1..n).collect())],
        (CartanType::D, 1) => vec![((CartanType::D, n - 1), (2..=n).collect())],
        (CartanType::D, _) if p == n => vec![chain((1..n).collect())],
        (CartanType::D, _) => {
            let mut nodes: Vec<usize> = (1..n - 1).collect();
            nodes.push(n);
            vec![chain(nodes)]
        }
        _ => unreachable!("family_of filters unsupported markings"),
    }
}

/// Order of `ω_p^∨` modulo the coroot lattice: the least common multiple of
/// the denominators of `A^{-1} e_p`.
pub fn coweight_order(ty: CartanType, n: usize, p: usize) -> Result<u64> {
    let rs = RootSystem::irreducible(ty, n)?;
    let inv = rs.inverse_cartan();
    // ω_p^∨ = Σ_i c_i α_i^∨ with Σ_i a[j][i] c_i = δ_{jp}, i.e. c = A^{-1} e_p.
    let l = (0..n).fold(num_bigint::BigInt::one(), |acc, i| {
        let c: &Rational = &inv[i][p - 1];
        acc.lcm(c.denom())
    });
    Ok(l.to_u64().expect("small order"))
}

/// Duality involution `−w_0` on fundamental weights of a classical factor
/// (0-based index map).
pub fn dual_index(ty: CartanType, rank: usize, i: usize) -> usize {
    match ty {
        CartanType::A => rank - 1 - i,
        CartanType::B | CartanType::C => i,
        CartanType::D => {
            if rank.is_multiple_of(2) || i + 2 < rank {
                i
            } else {
                2 * rank - 3 - i
            }
        }
    }
}

/// Dual of a weight of `K^ss` given in fundamental-weight coordinates.
pub fn dual_weight(factors: &[(CartanType, usize)], w: &LatticeVector) -> LatticeVector {
    let mut out = vec![0; w.len()];
    let mut off = 0;
    for &(ty, rank) in factors {
        for i in 0..rank {
            out[off + dual_index(ty, rank, i)] = w.coords[off + i];
        }
        off += rank;
    }
    LatticeVector::new(w.basis, out)
}

fn build_spec(ty: CartanType, n: usize, p: usize) -> Result<SymmetricPairSpec> {
    let family = family_of(ty, n, p).ok_or_else(|| {
        Error::InvalidPair(format!(
            "{ty}{n} with marked root {p} is not a supported Hermitian pair"
        ))
    })?;
    if n < family_min_rank(family) || p == 0 || p > n {
        return Err(Error::RankOutOfRange {
            ty: ty.letter(),
            rank: n,
        });
    }
    let theta = highest_root_coeffs(ty, n)?;
    if theta[p - 1] != 1 {
        return Err(Error::InvalidPair(format!(
            "α_{p} has coefficient {} in the highest root",
            theta[p - 1]
        )));
    }
    let g = RootSystem::irreducible(ty, n)?;
    let factors = levi_factors(ty, n, p);
    let k_levi_types: Vec<(CartanType, usize)> = factors.iter().map(|f| f.0).collect();
    let k_nodes: Vec<Vec<usize>> = factors.iter().map(|f| f.1.clone()).collect();
    let p1: Vec<i64> = k_nodes
        .iter()
        .flatten()
        .map(|&j| g.pairing(&theta, j - 1))
        .collect();
    let p1 = LatticeVector::new(Basis::FundWeights, p1);
    let p2 = dual_weight(&k_levi_types, &p1);
    let m = coweight_order(ty, n, p)?;
    Ok(SymmetricPairSpec {
        g_type: (ty, n),
        p_index: p,
        k_levi_types,
        k_nodes,
        m,
        p1_highest_weight: p1,
        p2_highest_weight: p2,
        chi_charges: (m as i64, -(m as i64)),
        family,
    })
}

/// All Hermitian pairs with `G` of the given type and rank, one per valid
/// marked root.
pub fn enumerate_pairs(ty: CartanType, rank: usize) -> Result<Vec<SymmetricPairSpec>> {
    let candidates: Vec<usize> = match ty {
        CartanType::A => (1..=rank).collect(),
        CartanType::B => vec![1],
        CartanType::C => vec![rank],
        CartanType::D => vec![1, rank.saturating_sub(1), rank],
    };
    let out: Vec<SymmetricPairSpec> = candidates
        .into_iter()
        .filter_map(|p| build_spec(ty, rank, p).ok())
        .collect();
    if out.is_empty() {
        return Err(Error::RankOutOfRange {
            ty: ty.letter(),
            rank,
        });
    }
    Ok(out)
}

/// Builds the pair with the given marked root.
pub fn pair(ty: CartanType, rank: usize, p: usize) -> Result<SymmetricPairSpec> {
    build_spec(ty, rank, p)
}

/// The pair `SL(p+q)/S(GL(p)×GL(q))`.
pub fn pair_slpq(p: usize, q: usize) -> Result<SymmetricPairSpec> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidPair("p and q must be positive".into()));
    }
    build_spec(CartanType::A, p + q - 1, p)
}

/// Order of the central cocharacter of `K`.
pub fn center_order(spec: &SymmetricPairSpec) -> u64 {
    spec.m
}

/// Highest weights of `p1` and `p2` on `K^ss`, each with its central charge.
pub fn p_module_weights(spec: &SymmetricPairSpec) -> ((LatticeVector, i64), (LatticeVector, i64)) {
    (
        (spec.p1_highest_weight.clone(), spec.chi_charges.0),
        (spec.p2_highest_weight.clone(), spec.chi_charges.1),
    )
}

/// Parses a pair key such as `A:5:p=2`, `B:4`, `C:4`, `D:6:vec`, `D:6:gl`,
/// `D:6:gl'` or the generic `X:n:p=k`.
pub fn parse_pair_key(key: &str) -> Result<SymmetricPairSpec> {
    let bad = || Error::UnknownPairKey(key.to_string());
    let parts: Vec<&str> = key.trim().split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(bad());
    }
    let ty: CartanType = parts[0].parse().map_err(|_| bad())?;
    let n: usize = parts[1].parse().map_err(|_| bad())?;
    let p = match (ty, parts.get(2).copied()) {
        (_, Some(tag)) if tag.starts_with("p=") => tag[2..].parse().map_err(|_| bad())?,
        (CartanType::B, None) => 1,
        (CartanType::C, None) => n,
        (CartanType::D, Some("vec")) => 1,
        (CartanType::D, Some("gl")) => n,
        (CartanType::D, Some("gl'")) => n.checked_sub(1).ok_or_else(bad)?,
        _ => return Err(bad()),
    };
    build_spec(ty, n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_orders_match_table() {
        for n in 1..=9usize {
            for p in 1..=n {
                let spec = pair(CartanType::A, n, p).unwrap();
                let expected = (n as u64 + 1) / (p as u64).gcd(&(n as u64 + 1));
                assert_eq!(spec.m, expected, "A{n} p={p}");
            }
        }
        assert_eq!(pair(CartanType::A, 5, 2).unwrap().m, 3);
        for n in 3..=8 {
            assert_eq!(pair(CartanType::B, n, 1).unwrap().m, 2);
            assert_eq!(pair(CartanType::C, n, n).unwrap().m, 2);
        }
        for n in 5..=9 {
            assert_eq!(pair(CartanType::D, n, 1).unwrap().m, 2);
        }
        for n in 4..=9 {
            let expected = if n % 2 == 0 { 2 } else { 4 };
            assert_eq!(pair(CartanType::D, n, n).unwrap().m, expected);
            assert_eq!(pair(CartanType::D, n, n - 1).unwrap().m, expected);
        }
        assert_eq!(center_order(&pair(CartanType::D, 7, 7).unwrap()), 4);
    }

    #[test]
    fn slpq_weights() {
        let spec = pair_slpq(3, 4).unwrap();
        assert_eq!(
            spec.k_levi_types,
            vec![(CartanType::A, 2), (CartanType::A, 3)]
        );
        // ω1 + ω'_{q−1} and ω_{p−1} + ω'_1
        assert_eq!(spec.p1_highest_weight.coords, vec![1, 0, 0, 0, 1]);
        assert_eq!(spec.p2_highest_weight.coords, vec![0, 1, 1, 0, 0]);
        let (w1, w2) = p_module_weights(&spec);
        assert_eq!((w1.1, w2.1), (7, -7));
        // q = 2: p1 = ω1 + ω'
        let spec = pair_slpq(5, 2).unwrap();
        assert_eq!(spec.p1_highest_weight.coords, vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn other_families_weights() {
        let sp = pair(CartanType::C, 4, 4).unwrap();
        assert_eq!(sp.p1_highest_weight.coords, vec![2, 0, 0]);
        assert_eq!(sp.p2_highest_weight.coords, vec![0, 0, 2]);
        let gl = pair(CartanType::D, 6, 6).unwrap();
        assert_eq!(gl.p1_highest_weight.coords, vec![0, 1, 0, 0, 0]);
        assert_eq!(gl.p2_highest_weight.coords, vec![0, 0, 0, 1, 0]);
        let so = pair(CartanType::B, 4, 1).unwrap();
        assert_eq!(so.k_levi_types, vec![(CartanType::B, 3)]);
        assert_eq!(so.p1_highest_weight.coords, vec![1, 0, 0]);
        assert_eq!(so.p2_highest_weight.coords, vec![1, 0, 0]);
        let vec5 = pair(CartanType::D, 5, 1).unwrap();
        assert_eq!(vec5.k_levi_types, vec![(CartanType::D, 4)]);
        assert_eq!(vec5.p1_highest_weight.coords, vec![1, 0, 0, 0]);
    }

    #[test]
    fn enumerate_counts_and_bounds() {
        assert_eq!(enumerate_pairs(CartanType::A, 5).unwrap().len(), 5);
        assert_eq!(enumerate_pairs(CartanType::B, 4).unwrap().len(), 1);
        assert_eq!(enumerate_pairs(CartanType::D, 5).unwrap().len(), 3);
        assert_eq!(enumerate_pairs(CartanType::D, 4).unwrap().len(), 2);
        assert!(enumerate_pairs(CartanType::B, 2).is_err());
        assert!(enumerate_pairs(CartanType::D, 3).is_err());
        assert!(pair(CartanType::B, 4, 2).is_err());
    }

    #[test]
    fn keys_roundtrip() {
        for (ty, n) in [
            (CartanType::A, 5),
            (CartanType::B, 4),
            (CartanType::C, 3),
            (CartanType::D, 6),
            (CartanType::D, 5),
        ] {
            for spec in enumerate_pairs(ty, n).unwrap() {
                let key = spec.key();
                assert_eq!(parse_pair_key(&key).unwrap(), spec, "{key}");
            }
        }
        assert_eq!(parse_pair_key("D:6:gl").unwrap().p_index, 6);
        assert_eq!(parse_pair_key("D:6:p=5").unwrap().key(), "D:6:gl'");
        assert!(parse_pair_key("E:6").is_err());
        assert!(parse_pair_key("A:5").is_err());
        assert!(parse_pair_key("C:4:p=1").is_err());
    }

    #[test]
    fn weights_are_dual_and_charges_opposite() {
        for (ty, n) in [
            (CartanType::A, 6),
            (CartanType::B, 5),
            (CartanType::C, 5),
            (CartanType::D, 6),
            (CartanType::D, 7),
        ] {
            for spec in enumerate_pairs(ty, n).unwrap() {
                let back = dual_weight(&spec.k_levi_types, &spec.p2_highest_weight);
                assert_eq!(back, spec.p1_highest_weight);
                assert_eq!(spec.chi_charges.0, -spec.chi_charges.1);
            }
        }
    }

    #[test]
    fn dimensions_add_up() {
        for (ty, n) in [
            (CartanType::A, 5),
            (CartanType::B, 4),
            (CartanType::C, 3),
            (CartanType::D, 5),
        ] {
            for spec in enumerate_pairs(ty, n).unwrap() {
                let dim_g = match ty {
                    CartanType::A => n * (n + 2),
                    CartanType::B | CartanType::C => n * (2 * n + 1),
                    CartanType::D => n * (2 * n - 1),
                };
                assert_eq!(spec.dim_k() + spec.dim_p(), dim_g, "{spec}");
            }
        }
    }
}
