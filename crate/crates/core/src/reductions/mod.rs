//! The counting reductions: crossing replacement, weight elimination by
//! interpolation, and pendant extension.

mod crossing;
mod interp;
mod pendant;

use thiserror::Error;

use crate::exactnum::ExactError;
use crate::gadgets::GadgetError;
use crate::graph::GraphError;
use crate::matching::MatchingError;
use crate::poly::PolyError;

pub use crossing::{
    count_via_reduction, count_via_reduction_with, gadget_weight_table, lambda_integrality,
    normalized_value, replace_crossings, GadgetPlacement, LambdaCheck, ReductionCertificate,
    ReductionOptions, WeightedPlanarInstance,
};
pub use interp::{build_gi, eliminate_chain, eliminate_weight, InterpolationRun};
pub use pendant::{count_matchings_via_pendant, BijectionCheck, PendantRun};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex `{0}` carries a weight; crossing replacement needs an unweighted graph")]
    NotUnitWeighted(String),
    #[error("wiring puts an edge inside one bipartition class: {0}")]
    OrientationConflict(String),
    #[error("no vertex carries weight tag `{0}`")]
    UnknownTag(String),
    #[error("no crossing-free gadget placement found")]
    NoPlaneDrawing,
    #[error("recovered coefficients do not reproduce the values for tag `{0}`")]
    InterpolationMismatch(String),
    #[error("pendant bijection check failed: {0}")]
    BijectionMismatch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

impl ReductionError {
    pub fn is_insufficient_precision(&self) -> bool {
        matches!(self, ReductionError::Exact(e) if e.is_insufficient_precision())
    }
}
