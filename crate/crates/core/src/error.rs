use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("diagram has no crossings")]
    EmptyDiagram,

    #[error("edge label {label} appears {count} times (expected 2)")]
    LabelCount { label: u32, count: usize },

    #[error("component with labels {labels:?} is not a contiguous range")]
    NonContiguousComponent { labels: Vec<u32> },

    #[error("crossing {crossing} is not consistent with the edge-label orientation")]
    Orientation { crossing: usize },

    #[error("unknown edge label {0}")]
    UnknownEdge(u32),

    #[error("state has {got} coordinates but the diagram has {expected} crossings")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{0} crossings exceeds the supported maximum of {max}", max = crate::cube::MAX_CROSSINGS)]
    TooManyCrossings(usize),

    #[error("eigensolver did not converge after {iterations} iterations (dimension {dim})")]
    NonConvergence { dim: usize, iterations: usize },

    #[error("at (r, q) = ({r}, {q}): spectral zero count {spectral} but exact homology rank {exact}")]
    OracleMismatch {
        r: i32,
        q: i32,
        spectral: usize,
        exact: usize,
    },

    #[error("polynomial is not divisible by q + q^-1")]
    NonDivisible,

    #[error("complex violation at (r, q) = ({r}, {q}): {reason}")]
    ComplexViolation { r: i32, q: i32, reason: String },

    #[error("line {line}: {message}")]
    Table { line: usize, message: String },
}

impl Error {
    /// True for errors caused by malformed or invalid input rather than a
    /// failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::EmptyDiagram
                | Error::LabelCount { .. }
                | Error::NonContiguousComponent { .. }
                | Error::Orientation { .. }
                | Error::UnknownEdge(_)
                | Error::LengthMismatch { .. }
                | Error::TooManyCrossings(_)
                | Error::Table { .. }
        )
    }
}
