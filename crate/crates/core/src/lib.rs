//! D(n)-quadruples in `Z[sqrt(d)]` for square-free `d = 2 (mod 4)`.
//!
//! [`ring`] holds the arithmetic, [`pell`] the norm equations, [`builder`]
//! the constructions and [`oracle`] the independent checks.

pub mod builder;
pub mod error;
pub mod oracle;
pub mod pell;
pub mod ring;

pub use builder::{QuadrupleCertificate, SupportStatus, SupportTag};
pub use error::{Error, Result};
pub use ring::{RingContext, RingElement};
