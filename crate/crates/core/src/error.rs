use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MdlError {
    #[error("domain point {point} out of range for domain size {domain_size}")]
    DomainMismatch { point: usize, domain_size: usize },

    #[error("oracle index {index} out of range for {k} distributions")]
    OracleIndex { index: usize, k: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parameter `{name}` = {value} outside {range}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("cap {cap} is infeasible for dimension {dim} (cap * dim < 1)")]
    InfeasibleCap { cap: f64, dim: usize },

    #[error("size guard exceeded: {0}")]
    SizeLimit(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid hypothesis class: {0}")]
    InvalidClass(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("zero sampling probability on index {0}")]
    ZeroProbability(usize),

    #[error("configuration mismatch: {0}")]
    Config(String),

    #[error("generator `{tag}` failed its post-check after {attempts} attempts")]
    GenerationFailed { tag: String, attempts: usize },
}

pub type Result<T> = std::result::Result<T, MdlError>;

/// Checks `value` lies in the open interval `(0, hi)`.
pub(crate) fn check_open(
    name: &'static str,
    value: f64,
    hi: f64,
    range: &'static str,
) -> Result<()> {
    if value > 0.0 && value < hi {
        Ok(())
    } else {
        Err(MdlError::ParameterRange { name, value, range })
    }
}
