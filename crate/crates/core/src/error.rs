use thiserror::Error;

use crate::builder::SupportStatus;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not a square-free positive integer with d = 2 (mod 4)")]
    InvalidModulus(u64),

    #[error("division by the zero element")]
    DivisionByZero,

    #[error("{0} must be non-zero")]
    ZeroArgument(&'static str),

    #[error("no element of norm {target} exists in Z[sqrt({d})]")]
    EmptyNormClass { d: u64, target: i64 },

    #[error("element {element} has norm {norm} but does not match the expected residue form")]
    FormViolation { element: String, norm: i64 },

    #[error("n = {n} is excluded: {status}")]
    Excluded { n: String, status: SupportStatus },

    #[error("n = {n} does not belong to {what}")]
    WrongClass { n: String, what: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("n = {n} is delegated to prior work: {status}")]
    Delegated { n: String, status: SupportStatus },

    #[error("no verified quadruple for n = {n} after {attempts} attempts")]
    BudgetExhausted { n: String, attempts: usize },

    #[error("no verified quadruple for n = {n} within the search bounds")]
    NotFound { n: String },
}
