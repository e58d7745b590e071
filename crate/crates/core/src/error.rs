use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex of length {len} exceeds portrait depth {depth}")]
    DepthExceeded { len: usize, depth: usize },

    #[error("symbol {symbol} out of range 1..={degree}")]
    SymbolOutOfRange { symbol: usize, degree: usize },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid tree degree {0} (need 2..=255)")]
    InvalidDegree(usize),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("section word references unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("bad permutation: {0}")]
    BadPermutation(String),

    /// The computation needed more than `limit` items; `reached` is what was
    /// seen (or known to be required) when it stopped.
    #[error("{what}: budget of {limit} exceeded (reached {reached})")]
    BudgetExceeded {
        what: &'static str,
        limit: u64,
        reached: u64,
    },

    #[error("source is not Haar-uniform: {0}")]
    SourceNotUniform(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incomplete critical data: Riemann-Hurwitz deficit {deficit}")]
    IncompleteCriticalData { deficit: i64 },

    #[error("claimed point {0} is not critical")]
    NotCritical(String),

    #[error("polynomial is not post-critically finite within {bound} iterations")]
    NotPcf { bound: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("polynomial is not Chebyshev-like (needs exactly two affine post-critical points of weight 2)")]
    PreconditionNotChebyshevLike,

    #[error("validation failed at clause ({clause}): {detail}")]
    ValidationFailure { clause: char, detail: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("element is not invertible in the field (is the minimal polynomial irreducible?)")]
    NotInvertible,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
