//! Root systems of classical type and exact lattice arithmetic.
//!
//! Simple roots are numbered as in Bourbaki. The Cartan matrix is
//! `a[i][j] = ⟨α_i, α_j^∨⟩`, so the pairing of a vector `λ = Σ c_i α_i`
//! with the coroot `α_j^∨` is `Σ_i c_i a[i][j]`.

use crate::error::{Error, Result};
use crate::linalg::{inverse, rat, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Classical Cartan types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
        }
    }

    /// Smallest rank accepted for the type.
    pub fn min_rank(self) -> usize {
        match self {
            CartanType::A => 1,
            CartanType::B | CartanType::C => 2,
            CartanType::D => 3,
        }
    }

    fn check_rank(self, rank: usize) -> Result<()> {
        if rank < self.min_rank() {
            return Err(Error::RankOutOfRange {
                ty: self.letter(),
                rank,
            });
        }
        Ok(())
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// Bourbaki Cartan matrix of an irreducible classical root system.
pub fn cartan_matrix(ty: CartanType, rank: usize) -> Result<Vec<Vec<i64>>> {
    ty.check_rank(rank)?;
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty {
        CartanType::A => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
        }
        CartanType::B => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            a[n - 2][n - 1] = -2;
        }
        CartanType::C => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            a[n - 1][n - 2] = -2;
        }
        CartanType::D => {
            for i in 1..n - 1 {
                link(&mut a, i - 1, i);
            }
            link(&mut a, n - 3, n - 1);
        }
    }
    Ok(a)
}

/// Coefficients of the highest root in the basis of simple roots.
pub fn highest_root_coeffs(ty: CartanType, rank: usize) -> Result<Vec<i64>> {
    ty.check_rank(rank)?;
    let n = rank;
    Ok(match ty {
        CartanType::A => vec![1; n],
        CartanType::B => (0..n).map(|i| if i == 0 { 1 } else { 2 }).collect(),
        CartanType::C => (0..n).map(|i| if i == n - 1 { 1 } else { 2 }).collect(),
        CartanType::D => (0..n)
            .map(|i| if i == 0 || i + 2 >= n { 1 } else { 2 })
            .collect(),
    })
}

/// The highest root as a lattice vector in the simple-root basis.
pub fn highest_root(ty: CartanType, rank: usize) -> Result<LatticeVector> {
    Ok(LatticeVector::new(
        Basis::SimpleRoots,
        highest_root_coeffs(ty, rank)?,
    ))
}

/// Indices `p` (1-based) with `[θ : α_p] = 1`, i.e. the maximal parabolics
/// whose unipotent radical is abelian.
pub fn abelian_radical_roots(ty: CartanType, rank: usize) -> Result<Vec<usize>> {
    Ok(highest_root_coeffs(ty, rank)?
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| i + 1)
        .collect())
}

/// A product of irreducible classical root systems.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystem {
    pub components: Vec<(CartanType, usize)>,
}

impl RootSystem {
    pub fn new(components: Vec<(CartanType, usize)>) -> Result<Self> {
        for &(ty, rank) in &components {
            ty.check_rank(rank)?;
        }
        Ok(RootSystem { components })
    }

    pub fn irreducible(ty: CartanType, rank: usize) -> Result<Self> {
        Self::new(vec![(ty, rank)])
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Offset of the first simple root of each component.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.components
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.1;
                o
            })
            .collect()
    }

    /// Block-diagonal Cartan matrix of the product.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.total_rank();
        let mut a = vec![vec![0; n]; n];
        for (&(ty, rank), off) in self.components.iter().zip(self.offsets()) {
            let block = cartan_matrix(ty, rank).expect("ranks validated on construction");
            for i in 0..rank {
                for j in 0..rank {
                    a[off + i][off + j] = block[i][j];
                }
            }
        }
        a
    }

    /// Pairing `⟨λ, α_j^∨⟩` for `λ` in simple-root coordinates.
    pub fn pairing(&self, lambda: &[i64], j: usize) -> i64 {
        let a = self.cartan();
        lambda.iter().zip(&a).map(|(c, row)| c * row[j]).sum()
    }

    /// Converts a vector from simple-root to fundamental-weight coordinates.
    pub fn to_fund_weights(&self, v: &LatticeVector) -> Result<LatticeVector> {
        v.expect_basis(Basis::SimpleRoots)?;
        self.check_len(v)?;
        let coords = (0..self.total_rank())
            .map(|j| self.pairing(&v.coords, j))
            .collect();
        Ok(LatticeVector::new(Basis::FundWeights, coords))
    }

    /// Simple-root coordinates of a vector given in fundamental weights.
    /// The result is rational in general.
    pub fn fund_weights_to_roots(&self, v: &LatticeVector) -> Result<Vec<Rational>> {
        v.expect_basis(Basis::FundWeights)?;
        self.check_len(v)?;
        let inv = self.inverse_cartan();
        let n = self.total_rank();
        // λ = Σ_i c_i α_i with Σ_i c_i a[i][j] = w_j, so c = w · a^{-1}.
        Ok((0..n)
            .map(|i| {
                (0..n).fold(Rational::zero(), |acc, j| {
                    acc + rat(v.coords[j]) * &inv[j][i]
                })
            })
            .collect())
    }

    /// Inverse of the Cartan matrix.
    pub fn inverse_cartan(&self) -> Vec<Vec<Rational>> {
        let a: Vec<Vec<Rational>> = self
            .cartan()
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        inverse(&a).expect("Cartan matrices are invertible")
    }

    /// Highest root of each component, concatenated.
    pub fn highest_roots(&self) -> Vec<LatticeVector> {
        let n = self.total_rank();
        self.components
            .iter()
            .zip(self.offsets())
            .map(|(&(ty, rank), off)| {
                let mut coords = vec![0; n];
                let h = highest_root_coeffs(ty, rank).expect("validated");
                coords[off..off + rank].copy_from_slice(&h);
                LatticeVector::new(Basis::SimpleRoots, coords)
            })
            .collect()
    }

    fn check_len(&self, v: &LatticeVector) -> Result<()> {
        if v.coords.len() != self.total_rank() {
            return Err(Error::LengthMismatch {
                expected: self.total_rank(),
                got: v.coords.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(t, r)| format!("{}{}", t, r))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Named basis in which a [`LatticeVector`] is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    SimpleRoots,
    FundWeights,
    Colors,
    SphericalRoots,
}

/// Integer vector tagged with its basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub basis: Basis,
    pub coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(basis: Basis, coords: Vec<i64>) -> Self {
        LatticeVector { basis, coords }
    }

    pub fn zero(basis: Basis, len: usize) -> Self {
        Self::new(basis, vec![0; len])
    }

    /// The `i`-th basis vector (0-based).
    pub fn unit(basis: Basis, len: usize, i: usize) -> Self {
        let mut v = Self::zero(basis, len);
        v.coords[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn expect_basis(&self, b: Basis) -> Result<()> {
        if self.basis != b {
            return Err(Error::BasisMismatch(self.basis, b));
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis, other.basis));
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self::new(
            self.basis,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self::new(
            self.basis,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.basis, self.coords.iter().map(|x| x * c).collect())
    }

    /// Componentwise comparison `self ≤ other`.
    pub fn le(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }
}
