use crate::measures::ConditionReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}: the half-space toolkit needs n >= 3")]
    InvalidDimension(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular evaluation: {0}")]
    Singularity(String),

    #[error("point is not in the open upper half-space (x_n = {0})")]
    NotInHalfSpace(f64),

    #[error("integrability condition {} violated", .0.condition)]
    ConditionViolated(Box<ConditionReport>),

    #[error("infeasible linear program: constraint row {0} has no positive entry")]
    Infeasible(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable identifier, emitted by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidDimension(_) => "invalid_dimension",
            Error::Domain(_) => "domain",
            Error::Singularity(_) => "singularity",
            Error::NotInHalfSpace(_) => "not_in_half_space",
            Error::ConditionViolated(_) => "condition_violated",
            Error::Infeasible(_) => "infeasible",
            Error::InvalidInput(_) => "invalid_input",
            Error::Schema { .. } => "schema",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::Singularity(msg.into())
    }
}
