use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("hermitian form is degenerate (radical dimension {radical})")]
    DegenerateForm { radical: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("degree {degree} is out of range (top degree {top})")]
    OutOfRange { degree: u32, top: u32 },

    #[error("bad vanishing cycle: self-intersection {0} does not match the declared parity")]
    BadVanishingCycle(String),

    #[error("reflection root is not normalized: h(delta, delta) = {found}, expected {expected}")]
    NonUnitConditioning { found: String, expected: i32 },

    #[error("intersection matrix does not have its declared (skew-)symmetry")]
    NotSymmetric,

    #[error("matrix is not unitary for the given form")]
    NotUnitary,

    #[error("generator {0} is not unitary for the given form")]
    NotUnitaryGenerator(usize),

    #[error("form does not have the requested signature: {0}")]
    BadSignature(String),

    #[error("eigenvalue is real (2i = k); use the orthogonal/symplectic description")]
    RealEigenvalue,

    #[error("signature of the primitive cohomology requires even dimension, got n = {0}")]
    OddDimension(usize),

    #[error("outside the established scope: {0}")]
    ScopeError(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// True for failures of a cross-check between independent computations.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalInconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
