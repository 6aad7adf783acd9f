//! Difference operators and identity-verification harnesses.

mod checks;
mod report;

pub use checks::*;
pub use report::{IdentityReport, Mode, TermOutcome, Verdict};
