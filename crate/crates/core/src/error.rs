use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies below the range where an inverse or map is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// An argument lies above the working interval of a flux.
    #[error("range error: {0}")]
    Range(String),
    /// A parameter violates its documented precondition.
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },
    /// The two fluxes have equal minima, so the exponent table does not apply.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// An input is too large for an exhaustive routine.
    #[error("size error: {0}")]
    Size(String),
    /// A Hölder exponent cannot be estimated because the map is constant.
    #[error("undefined exponent: {0}")]
    UndefinedExponent(String),
    /// A time step exceeds the stability bound of the scheme.
    #[error("stability error: {0}")]
    Stability(String),
    /// The wave-speed bound vanishes.
    #[error("degenerate flux: {0}")]
    DegenerateFlux(String),
    /// The counter-example sequences leave the admissible region.
    #[error("infeasible sequence at k = {k}: {reason}")]
    Infeasible { k: usize, reason: String },
    /// A backward construction has inconsistent geometry.
    #[error("construction error: {0}")]
    Construction(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Error {
    Error::Parameter {
        name,
        reason: reason.into(),
    }
}
