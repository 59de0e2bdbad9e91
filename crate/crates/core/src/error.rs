use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants are split into plumbing failures (I/O, malformed input) and
/// domain failures (a mathematical precondition does not hold).
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {family} of rank {rank}")]
    Unsupported { family: String, rank: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    Index { index: usize, rank: usize },
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("invalid parabolic subset: {0}")]
    InvalidXi(String),
    #[error("component mismatch: {0}")]
    Mismatch(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("psi1 {psi1:?} is not contained in psi {psi:?}")]
    NotInPsi { psi1: Vec<usize>, psi: Vec<usize> },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("bracket table is not antisymmetric at ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("extension is not valid: {0}")]
    Invalid(String),
    #[error("reduction precondition fails: h vector {h_vector} has a component along root {root:?} of positive height")]
    Reduction { h_vector: usize, root: Vec<i64> },
    #[error("normalization obstructed at level {level} along root {root:?}")]
    Obstruction { level: i64, root: Vec<i64> },
    #[error("degenerate pairing: {0}")]
    Degenerate(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of mathematical preconditions, false for plumbing errors.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Schema(_) | Error::Io(_) | Error::Json(_) | Error::Jacobi(..) | Error::Antisymmetry(..))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
