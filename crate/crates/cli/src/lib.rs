//! Serialization and reporting behind the `quadring` binary.

pub mod coverage;
pub mod document;

use quadring::Error;

/// Process exit codes. Stable; documented in the README.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INVALID: u8 = 1;
    pub const EXCLUDED: u8 = 2;
    pub const NOT_FOUND: u8 = 3;
    pub const VERIFY_FAILED: u8 = 4;
}

/// Exit code for a construction error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Excluded { .. } => exit::EXCLUDED,
        Error::Delegated { .. } | Error::BudgetExhausted { .. } | Error::NotFound { .. } => {
            exit::NOT_FOUND
        }
        Error::InvalidModulus(_)
        | Error::DivisionByZero
        | Error::ZeroArgument(_)
        | Error::EmptyNormClass { .. }
        | Error::FormViolation { .. }
        | Error::WrongClass { .. }
        | Error::Precondition(_) => exit::INVALID,
    }
}
