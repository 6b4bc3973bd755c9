use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),

    #[error("algebra dimension exceeds cap {cap} (reached {reached})")]
    DimensionCap { cap: usize, reached: usize },

    #[error("index {index} out of range (size {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("component in degree {0} is not a witnessed projective")]
    NotProjective(i32),

    #[error("resolution length cap {cap} exceeded (reached degree {degree})")]
    LengthCap { cap: usize, degree: i32 },

    #[error("generator count cap {cap} exceeded (reached degree {degree})")]
    GeneratorCap { cap: usize, degree: i32 },

    #[error("dg-algebra has a nonzero component in positive degree {0}")]
    PositiveDegree(i32),

    #[error("window [{lo}, {hi}] is inconsistent: {reason}")]
    Window { lo: i32, hi: i32, reason: String },

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("input error: {0}")]
    Input(String),
}
