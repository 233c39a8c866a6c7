use num_rational::BigRational;
use thiserror::Error;

/// Errors raised by the laboratory. Every variant maps to a stable,
/// machine-readable code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma function evaluated at its pole {0}")]
    Pole(String),
    #[error("value outside the supported domain: {0}")]
    Domain(String),
    #[error("sign cannot be certified: {0}")]
    IndeterminateSign(String),
    #[error("missing required parameter `{0}`")]
    MissingParameter(&'static str),
    #[error("requested depth {requested} exceeds the limit {limit}")]
    DepthExceeded { requested: usize, limit: usize },
    #[error("limit does not exist: {0}")]
    NotConvergent(String),
    #[error("charge {0} is not present in the state")]
    ChargeAbsent(BigRational),
    #[error("state mixes several charges; decompose it first")]
    MixedCharge,
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::IndeterminateSign(_) => "IndeterminateSign",
            Error::MissingParameter(_) => "MissingParameter",
            Error::DepthExceeded { .. } => "DepthExceeded",
            Error::NotConvergent(_) => "NotConvergent",
            Error::ChargeAbsent(_) => "ChargeAbsent",
            Error::MixedCharge => "MixedCharge",
            Error::NotApplicable(_) => "NotApplicable",
            Error::UnsupportedFormat(_) => "UnsupportedFormat",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
