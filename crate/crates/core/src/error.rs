use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("labeling has no data lines")]
    EmptyLabeling,

    #[error("labelings have different lengths: first has {first} objects, second has {second}")]
    LengthMismatch { first: usize, second: usize },

    #[error("invalid margins: {0}")]
    InvalidMargins(String),

    #[error(
        "exact table count exceeded its budget ({reason}); use an approximate method (bbk, de) or raise the budget"
    )]
    BudgetExceeded { reason: String },

    #[error("{measure} is undefined: {reason}")]
    UndefinedMeasure {
        measure: &'static str,
        reason: &'static str,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
