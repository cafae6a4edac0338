use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("degree {0} is too small")]
    DegreeTooSmall(isize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable {0} does not occur")]
    VariableAbsent(String),
    #[error("system is not zero-dimensional")]
    NotZeroDimensional,
    #[error("system is not zero-dimensional, or every combination drawn was degenerate")]
    NotZeroDimensionalOrUnlucky,
    #[error("degenerate combination: a projection resultant vanished")]
    DegenerateCombination,
    #[error("refinement budget exhausted: {0}")]
    RefinementExhausted(String),
    #[error("no certified shear found after {0} attempts")]
    CertificationExhausted(usize),
    #[error("projected intervals overlap")]
    DisjointnessViolated,
    #[error("no admissible shear value below the search cap")]
    RefineAndRetry,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
