//! Exit codes: 2 parse, 3 precondition, 4 resource, 5 verification failure.

use std::fmt;

use plbm::exactnum::ExactError;
use plbm::gadgets::GadgetError;
use plbm::graph::{GraphError, GraphFileError};
use plbm::matching::MatchingError;
use plbm::poly::PolyError;
use plbm::reductions::ReductionError;

pub const PARSE: u8 = 2;
pub const PRECONDITION: u8 = 3;
pub const RESOURCE: u8 = 4;
pub const VERIFICATION: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn precondition(m: impl Into<String>) -> Self {
        Failure { code: PRECONDITION, message: m.into() }
    }

    pub fn resource(m: impl Into<String>) -> Self {
        Failure { code: RESOURCE, message: m.into() }
    }

    pub fn verification(m: impl Into<String>) -> Self {
        Failure { code: VERIFICATION, message: m.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn exact(e: &ExactError) -> u8 {
    match e {
        ExactError::InsufficientPrecision { .. } => RESOURCE,
        ExactError::NotAnInteger(_) => VERIFICATION,
        ExactError::DivisorContainsZero
        | ExactError::BallContainsZero
        | ExactError::BranchAmbiguous => RESOURCE,
        ExactError::UnsupportedRootDegree(_) => PRECONDITION,
    }
}

fn matching(e: &MatchingError) -> u8 {
    match e {
        MatchingError::TooLargeForOracle { .. }
        | MatchingError::ResourceBudgetExceeded { .. }
        | MatchingError::TooManyVertices(_) => RESOURCE,
        MatchingError::UnmappedTag(_) | MatchingError::BadBoundary(_) | MatchingError::NotBipartite => PRECONDITION,
    }
}

fn graph(e: &GraphError) -> u8 {
    match e {
        GraphError::LayoutFailure(_) => RESOURCE,
        _ => PRECONDITION,
    }
}

fn poly(e: &PolyError) -> u8 {
    match e {
        PolyError::Parse { .. } => PARSE,
        _ => PRECONDITION,
    }
}

fn reduction(e: &ReductionError) -> u8 {
    match e {
        ReductionError::NotBipartite
        | ReductionError::NotUnitWeighted(_)
        | ReductionError::UnknownTag(_) => PRECONDITION,
        ReductionError::NoPlaneDrawing => RESOURCE,
        ReductionError::OrientationConflict(_)
        | ReductionError::InterpolationMismatch(_)
        | ReductionError::BijectionMismatch(_) => VERIFICATION,
        ReductionError::Graph(e) => graph(e),
        ReductionError::Exact(e) => exact(e),
        ReductionError::Matching(e) => matching(e),
        ReductionError::Poly(e) => poly(e),
        ReductionError::Gadget(e) => gadget(e),
    }
}

fn gadget(e: &GadgetError) -> u8 {
    match e {
        GadgetError::Exact(e) => exact(e),
        GadgetError::Matching(e) => matching(e),
        GadgetError::Poly(e) => poly(e),
        GadgetError::VerificationFailed { .. } => VERIFICATION,
    }
}

pub fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(f) = cause.downcast_ref::<Failure>() {
            return f.code;
        }
        if let Some(e) = cause.downcast_ref::<GraphFileError>() {
            return match e {
                GraphFileError::Graph(g) => match g {
                    GraphError::InvalidWeightTag(_)
                    | GraphError::DuplicateVertex(_)
                    | GraphError::UnknownVertex(_)
                    | GraphError::SelfLoop(_)
                    | GraphError::ParallelEdge(..)
                    | GraphError::SideConflict(..) => PARSE,
                    g => graph(g),
                },
                _ => PARSE,
            };
        }
        if let Some(e) = cause.downcast_ref::<ReductionError>() {
            return reduction(e);
        }
        if let Some(e) = cause.downcast_ref::<GadgetError>() {
            return gadget(e);
        }
        if let Some(e) = cause.downcast_ref::<ExactError>() {
            return exact(e);
        }
        if let Some(e) = cause.downcast_ref::<MatchingError>() {
            return matching(e);
        }
        if let Some(e) = cause.downcast_ref::<GraphError>() {
            return graph(e);
        }
        if let Some(e) = cause.downcast_ref::<PolyError>() {
            return poly(e);
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return PARSE;
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return PARSE;
        }
    }
    1
}
