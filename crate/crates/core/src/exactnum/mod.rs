//! Certified complex arithmetic and the gadget constants.

mod ball;
mod certify;
pub mod constants;
mod mag;

pub use ball::{decimal, fixed_to_sci, BallComplex, RING_EMBED_PREC};
pub use certify::{certify_integer, PrecisionPolicy};
pub use constants::{
    crossing_constant, crossing_constant_nested, crossing_constant_with, cubic_root_residual,
    delta1_residuals, delta2_residuals, gadget_constants, gadget_constants_with,
    CrossingConstant, SubgadgetKind, SubgadgetWeights, WeightSet,
};
pub use mag::Mag;

use thiserror::Error;

/// Smallest working precision accepted by the constant builders.
pub const MIN_PRECISION: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("divisor ball contains zero")]
    DivisorContainsZero,
    #[error("root argument ball contains zero")]
    BallContainsZero,
    #[error("ball touches the branch cut; principal root is ambiguous")]
    BranchAmbiguous,
    #[error("insufficient precision ({precision} bits)")]
    InsufficientPrecision { precision: u32 },
    #[error("ball {0} contains no integer")]
    NotAnInteger(String),
    #[error("root degree {0} is not supported")]
    UnsupportedRootDegree(u32),
}

impl ExactError {
    pub fn is_insufficient_precision(&self) -> bool {
        matches!(self, ExactError::InsufficientPrecision { .. })
    }
}
