use thiserror::Error;

/// Errors surfaced by the library. Variants carry enough context to point
/// at the offending input without holding on to large values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("operands live in different polynomial rings")]
    ArityMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector is not in the submodule")]
    NotInModule,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("quotient module has infinite length")]
    InfiniteLength,
    #[error("not a matrix factorization: {0}")]
    NotAFactorization(String),
    #[error("factorizations live over different rings")]
    RingMismatch,
    #[error("potentials do not match")]
    PotentialMismatch,
    #[error("number of variables {0} is odd")]
    OddDimension(usize),
    #[error("Jacobian ideal is not zero-dimensional")]
    NotIsolated,
    #[error("inconsistent objects: {0}")]
    ConnectionMismatch(String),
    #[error("word is not composable: {0}")]
    NonComposable(String),
    #[error("ambient algebra is not graded commutative")]
    NonCommutativeAmbient,
    #[error("not a morphism of curved categories: {0}")]
    NotAMorphism(String),
    #[error("unsupported chain shape: {0}")]
    UnsupportedChainShape(String),
    #[error("matrices do not form a complex: {0}")]
    NotAComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
