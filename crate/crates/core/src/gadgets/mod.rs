//! Sub-gadget and crossing-gadget construction and identity checks.

mod constants_check;
mod crossing;
mod report;
mod subgadget;

use thiserror::Error;

use crate::exactnum::ExactError;
use crate::matching::MatchingError;
use crate::poly::PolyError;

pub use constants_check::{
    constants_dump, published_decimal_checks, system_residuals, verify_constants, DecimalCheck,
};
pub use crossing::{
    build_crossing_gadget, composed_profile, crossing_allowed, crossing_symmetries, direct_profile,
    verify_crossing_gadget, Block, CrossingGadget, CrossingVerification, ATTACHMENTS, CONNECTORS,
    TERMINALS,
};
pub(crate) use report::radius_log2;
pub use report::{EntryStatus, IdentityEntry, IdentityReport};
pub use subgadget::{
    allowed_pattern, build_subgadget, check_printed_expansion, eval_symbolic_profile,
    identity_tolerance, numeric_profile, perturb_b, printed_gadget_polynomial,
    symbolic_gadget_polynomial, symbolic_profile, verify_subgadget, verify_subgadget_weights,
    ExpansionCheck, SubgadgetTemplate, PRINTED_EXPANSION,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{report}: entry {label} does not match its target")]
    VerificationFailed { report: String, label: String },
}

impl GadgetError {
    /// The first failing entry of a report as an error, or `Ok` if it passed.
    pub fn check(report: &IdentityReport) -> Result<(), GadgetError> {
        match report.first_failure() {
            Some(e) => Err(GadgetError::VerificationFailed { report: report.name.clone(), label: e.label.clone() }),
            None if !report.passed() => Err(ExactError::InsufficientPrecision { precision: report.precision }.into()),
            None => Ok(()),
        }
    }
}
