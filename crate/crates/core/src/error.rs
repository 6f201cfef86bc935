use thiserror::Error;

/// Errors raised by the algebraic constructions and homology computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 65536)")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("objects live over different prime fields (p = {0} vs p = {1})")]
    FieldMismatch(u32, u32),

    #[error("subspace is not contained in the ambient subspace")]
    ContainmentViolation,

    #[error("graded subspace is not closed under the algebra action (degree {degree})")]
    NotActionClosed { degree: i32 },

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),

    #[error("module is defined over a different algebra")]
    AlgebraMismatch,

    #[error("malformed vector: {0}")]
    MalformedVector(String),

    #[error("working set of {needed} columns in degree {degree} exceeds the budget of {budget}")]
    BudgetExceeded {
        degree: usize,
        needed: usize,
        budget: usize,
    },

    #[error("algebra is not generated in degree 1 (fails in degree {0})")]
    NotDegreeOneGenerated(usize),

    #[error("module has nonzero components below degree 0 (lowest degree {0})")]
    LowestDegreeNotZero(i32),

    #[error("bidegree ({i}, {j}) is not determined by the stored truncation")]
    TruncationInsufficient { i: usize, j: i32 },

    #[error("operation requires a symmetric algebra")]
    AlgebraNotSymmetric,

    #[error("Demushkin rank must be even, got {0}")]
    OddDemushkinRank(usize),

    #[error("map is not injective in degree {0}")]
    InputNotMonomorphism(i32),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
