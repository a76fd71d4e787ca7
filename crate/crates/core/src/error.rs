use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic not prime: {0}")]
    NotPrime(u64),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown ideal `{0}`")]
    UnknownIdeal(String),

    #[error("relation {0} has a nonzero constant term")]
    NonzeroConstantRelation(String),

    #[error("relations together with the maximal ideal generate the unit ideal")]
    ImproperMaximalIdeal,

    #[error("ideal is not contained in the maximal ideal")]
    NotProperLocal,

    #[error("residue field is not the prime field; operation needs R/m = F_p")]
    ResidueFieldNotPrime,

    #[error("{what}: budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("exponent overflow while raising to a Frobenius power")]
    ExponentOverflow,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("J is not contained in I")]
    NotContained,

    #[error("closure axiom violated: {0}")]
    AxiomViolation(String),

    #[error("audit failure: {0}")]
    AuditFailure(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this error under the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AxiomViolation(_) | Error::AuditFailure(_) => 1,
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::UnknownIdeal(_) => "unknown_ideal",
            Error::NonzeroConstantRelation(_) => "nonzero_constant_relation",
            Error::ImproperMaximalIdeal => "improper_maximal_ideal",
            Error::NotProperLocal => "not_proper_local",
            Error::ResidueFieldNotPrime => "residue_field_not_prime",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::ExponentOverflow => "exponent_overflow",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotContained => "not_contained",
            Error::AxiomViolation(_) => "axiom_violation",
            Error::AuditFailure(_) => "audit_failure",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
