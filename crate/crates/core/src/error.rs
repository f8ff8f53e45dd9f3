use thiserror::Error;

/// Failure categories shared by every stage of the pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is not colorable: loops at vertices {loops:?}")]
    Uncolorable { loops: Vec<usize> },

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),

    #[error("order axiom violated: {0}")]
    OrderAxiom(String),

    #[error("action axiom violated: {0}")]
    ActionAxiom(String),

    #[error("action is not order-preserving: {0}")]
    Equivariance(String),

    #[error("group action is not free: {0}")]
    NotFree(String),

    #[error("degenerate group: {0}")]
    DegenerateGroup(String),

    #[error("wrong shape: {0}")]
    WrongShape(String),

    #[error("instance too large: {what} exceeded cap {cap}")]
    InstanceTooLarge { what: &'static str, cap: u64 },

    #[error("truncated complex: {0}")]
    Truncation(String),

    #[error("improper coloring: {0}")]
    ImproperColoring(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("input error at line {line}: {msg}")]
    Input { line: usize, msg: String },

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable category, used for CLI exit codes and reports.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Input { .. } | Error::Format(_) => "input",
            Error::InstanceTooLarge { .. } => "resource",
            Error::TheoremViolation(_) | Error::Internal(_) => "theorem-violation",
            Error::Truncation(_) => "truncation",
            _ => "precondition",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
