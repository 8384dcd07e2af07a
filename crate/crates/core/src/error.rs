use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A configurable size cap was exceeded.
    #[error("resource limit exceeded: {what} (cap {cap}, requested {requested})")]
    ResourceLimit {
        what: &'static str,
        cap: u64,
        requested: u64,
    },

    /// Caller supplied inconsistent or out-of-range arguments.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An elementary function was applied outside its domain.
    #[error("domain error in {func}: argument {value}")]
    Domain { func: &'static str, value: f64 },

    /// Domain violation located in a subexpression.
    #[error("domain error in {func} (argument {value}) while evaluating `{subexpr}`")]
    DomainIn {
        func: &'static str,
        value: f64,
        subexpr: String,
    },

    /// Malformed expression text.
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("exponent at byte {offset} must be a constant")]
    VariableExponent { offset: usize },

    /// A sampled value was not finite.
    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    /// An inner function left the box on which the outer norm was taken.
    #[error("inner function {component} takes value {value} at x = {x}, outside the declared box")]
    OutsideBox { x: f64, component: usize, value: f64 },

    /// The Remez alternation system could not be solved.
    #[error("singular alternation system on reference set {reference:?}")]
    SingularSystem { reference: Vec<f64> },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
