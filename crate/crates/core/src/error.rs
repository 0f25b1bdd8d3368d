use thiserror::Error;

/// Failures raised by the lattice, torus, orbit and group layers.
///
/// Every variant corresponds to a violated precondition; none of them is
/// recoverable by retrying with the same input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sublattice basis is singular (determinant 0)")]
    SingularSublattice,

    #[error("inner lattice is not contained in outer lattice: {0}")]
    NotSublattice(String),

    #[error("map is not injective on lattices (rank {rank} < {cols})")]
    NotInjective { rank: usize, cols: usize },

    #[error("level matrix is not symmetric")]
    NotSymmetric,

    #[error("level is not positive: -K is not positive definite")]
    NotPositive,

    #[error("morphism is not a local injection (tangent map not injective)")]
    NotLocalInjection,

    #[error("morphism is not a finite covering (matrix not square with nonzero determinant)")]
    NotCovering,

    #[error("level is not block diagonal for the split {first}+{second}")]
    NotBlockDiagonal { first: usize, second: usize },

    #[error("product splitting of the orbit space is not a bijection: {0}")]
    SplitFailure(String),

    #[error("odd-degree twisted K-group vanishes; {0}")]
    ParityMismatch(String),

    #[error("Weyl group closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),

    #[error("level is not Weyl-equivariant: generator {generator} violates w K w^T = K")]
    NotEquivariant { generator: usize },

    #[error("orbit {0} is not regular")]
    NotRegular(String),

    #[error("morphism fails the decomposable condition: {0}")]
    NotDecomposable(String),

    #[error("regrouping into source Weyl orbits failed: {0}")]
    GroupingFailure(String),

    #[error("rho-shift is not a bijection at orbit {orbit}: {reason}")]
    NotBijective { orbit: String, reason: String },

    #[error("element lives on a different orbit space than expected")]
    SpaceMismatch,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularSublattice => "SingularSublattice",
            Error::NotSublattice(_) => "NotSublattice",
            Error::NotInjective { .. } => "NotInjective",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotPositive => "NotPositive",
            Error::NotLocalInjection => "NotLocalInjection",
            Error::NotCovering => "NotCovering",
            Error::NotBlockDiagonal { .. } => "NotBlockDiagonal",
            Error::SplitFailure(_) => "SplitFailure",
            Error::ParityMismatch(_) => "ParityMismatch",
            Error::ClosureCapExceeded { .. } => "ClosureCapExceeded",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::NotEquivariant { .. } => "NotEquivariant",
            Error::NotRegular(_) => "NotRegular",
            Error::NotDecomposable(_) => "NotDecomposable",
            Error::GroupingFailure(_) => "GroupingFailure",
            Error::NotBijective { .. } => "NotBijective",
            Error::SpaceMismatch => "SpaceMismatch",
            Error::Invalid(_) => "Invalid",
        }
    }
}
