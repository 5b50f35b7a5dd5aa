use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divergent series: {0}")]
    DivergentSeries(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parameter outside the family domain: {0}")]
    DomainViolation(String),
    #[error("singular prefactor: lambda + c*tau vanishes at c = {0}")]
    SingularPrefactor(String),
    #[error("need {needed} moments, got {got}")]
    InsufficientMoments { needed: usize, got: usize },
    #[error("Hankel matrix of order {0} is singular or not bounded away from zero")]
    SingularHankel(usize),
    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("operation refused for nonstandard parameters (some beta <= -1)")]
    NonstandardParameters,
    #[error("failed to parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("series did not reach the requested accuracy within {0} terms")]
    TermLimit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
