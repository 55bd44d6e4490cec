use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Mismatched moduli or dimensions.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("not in SL({m}, Z_{n}): determinant is {det}")]
    NotInSl { m: usize, n: u64, det: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("refusing to enumerate {required} candidates: budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// A closed-form identity that should hold did not.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}
