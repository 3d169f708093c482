use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero denominator in rational {0}/0")]
    ZeroDenominator(String),

    #[error("cannot parse {0:?} as a rational (expected \"num/den\" or an integer)")]
    ParseRational(String),

    #[error("({kappa}, {lambda}) is outside the exponent-pair region 0 <= kappa <= 1/2 <= lambda <= 1")]
    InvalidPair { kappa: String, lambda: String },

    #[error("B-process maps ({from_kappa}, {from_lambda}) to ({to_kappa}, {to_lambda}), which is outside the exponent-pair region")]
    InvalidBImage {
        from_kappa: String,
        from_lambda: String,
        to_kappa: String,
        to_lambda: String,
    },

    #[error("malformed process word {0:?}: only the letters A and B are allowed")]
    MalformedWord(String),

    #[error("Wu's bound needs k >= 2, got {0}")]
    InvalidWuK(i64),

    #[error("constraint from {label} can never be satisfied")]
    Unsatisfiable { label: String },

    #[error("empty admissible range: gamma must exceed {gamma_min} (from {lower}) but stay below {gamma_max} (from {upper})")]
    EmptyRange {
        gamma_min: String,
        lower: String,
        gamma_max: String,
        upper: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("work budget exceeded: {required} elementary steps needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by bad user input, as opposed to resource
    /// limits or internal failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::BudgetExceeded { .. } | Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
