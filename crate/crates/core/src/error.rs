use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("element code {code} does not belong to a field of order {q}")]
    NotInField { code: u32, q: u32 },

    #[error("elements belong to different fields")]
    MixedContexts,

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("{what} needs a budget of {required}, but the budget is {budget}")]
    BudgetExceeded {
        what: String,
        required: String,
        budget: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, required: impl ToString, budget: impl ToString) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            required: required.to_string(),
            budget: budget.to_string(),
        }
    }
}
