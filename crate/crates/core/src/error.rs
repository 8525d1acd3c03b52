use thiserror::Error;

/// Errors reported by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),

    #[error("rank {rank} is out of range for type {ty}")]
    RankOutOfRange { ty: char, rank: usize },

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("unknown pair key `{0}`")]
    UnknownPairKey(String),

    #[error("case {case}: invalid parameters ({reason})")]
    InvalidParameters { case: String, reason: String },

    #[error("unsupported case `{0}`")]
    UnsupportedCase(String),

    #[error("malformed orbit identifier `{0}`")]
    BadOrbitId(String),

    #[error("ad(h) is not diagonalizable over the integers on k")]
    NonIntegralGrading,

    #[error("spherical system has no designated colors")]
    MissingDesignated,

    #[error("color set is not distinguished or not catalogued: {0}")]
    NotDistinguished(String),

    #[error("vector length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("element is not in the semigroup: {0}")]
    NotInSemigroup(String),

    #[error("missing weight for color `{0}`")]
    MissingColorWeight(String),

    #[error("triple ({0}, {1}, {2}) is not in the tensor semigroup")]
    NotInTensorSemigroup(u32, u32, u32),

    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(crate::rootlat::Basis, crate::rootlat::Basis),
}

pub type Result<T> = std::result::Result<T, Error>;
