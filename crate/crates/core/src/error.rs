use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown generator `{name}` at offset {offset}")]
    UnknownGenerator { name: String, offset: usize },

    #[error("unknown catalog family `{0}`")]
    UnknownFamily(String),

    #[error("parameter `{param}` = {value} out of range for `{family}`: {reason}")]
    ParameterOutOfRange {
        family: String,
        param: String,
        value: i64,
        reason: String,
    },

    #[error("prime constraint violated for `{family}` at p = {p}: {reason}")]
    PrimeConstraint {
        family: String,
        p: u64,
        reason: String,
    },

    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("time limit reached during {0}")]
    Timeout(&'static str),

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("conductor {0} is not a prime power")]
    ConductorNotPrimePower(u64),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("value is not a rational integer")]
    NotRational,

    #[error("group has no faithful irreducible character")]
    NoFaithfulIrreducible,

    #[error("permutation action is not faithful (kernel of order {kernel_order})")]
    NotFaithful { kernel_order: usize },

    #[error("{value} has a nonzero units digit in base {p}")]
    NonzeroUnitsDigit { value: u64, p: u64 },

    #[error("no claim for `{quantity}` on `{family}`")]
    QuantityNotClaimed { family: String, quantity: String },

    #[error("c(G) = {c} differs from mu(G) = {mu}")]
    CMuMismatch { c: u64, mu: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Budget and time exhaustion are reported as "skipped" rather than failures.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Timeout(_))
    }
}
