use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A caller-checked precondition did not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph has {n} vertices, exhaustive search is capped at {limit}")]
    SizeLimit { n: usize, limit: usize },

    /// The structural parameter (vertex cover or clique modulator) is larger than allowed.
    #[error("{parameter} exceeds the maximum of {k_max}")]
    ParameterExceeded {
        parameter: &'static str,
        k_max: usize,
    },

    #[error("search space of {required} {unit} exceeds the budget of {budget}")]
    Budget {
        unit: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Short stable identifier, used in machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Precondition(_) => "precondition",
            Error::SizeLimit { .. } => "size_limit",
            Error::ParameterExceeded { .. } => "parameter_exceeded",
            Error::Budget { .. } => "budget",
            Error::Overflow(_) => "overflow",
            Error::Parse { .. } => "parse",
            Error::Internal(_) => "internal",
        }
    }
}
