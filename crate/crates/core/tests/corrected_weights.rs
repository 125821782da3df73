//! End-to-end runs with the corrected gadget weights, where the cubic
//! coefficient carries 3a.

mod common;

use num_bigint::BigInt;

use plbm::exactnum::{PrecisionPolicy, SubgadgetKind, WeightSet};
use plbm::gadgets::{verify_constants, verify_crossing_gadget, verify_subgadget};
use plbm::matching::{count_matchings, EngineConfig};
use plbm::reductions::{count_via_reduction_with, lambda_integrality, replace_crossings, ReductionOptions};

fn corrected() -> ReductionOptions {
    ReductionOptions { weights: WeightSet::Corrected, ..Default::default() }
}

#[test]
fn identities_hold() {
    assert!(verify_constants(WeightSet::Corrected, 256).unwrap().passed());
    for kind in [SubgadgetKind::Delta1, SubgadgetKind::Delta2] {
        assert!(verify_subgadget(kind, WeightSet::Corrected, 256).unwrap().passed(), "{kind}");
    }
    assert!(verify_crossing_gadget(WeightSet::Corrected, 256, true).unwrap().passed());
}

#[test]
fn reduction_counts_match() {
    for (g, d) in [common::c4_crossed(), common::c6_double_crossed(), common::c4_planar()] {
        let cert = count_via_reduction_with(&g, &d, &corrected()).unwrap();
        assert_eq!(cert.integer, count_matchings(&g).unwrap());
    }
}

#[test]
fn c6_has_two_crossings_on_one_edge() {
    let (g, d) = common::c6_double_crossed();
    let cert = count_via_reduction_with(&g, &d, &corrected()).unwrap();
    assert_eq!(cert.k, 2);
    assert_eq!(cert.integer, BigInt::from(18));
}

#[test]
fn fixed_precision_is_enough_for_c4() {
    let (g, d) = common::c4_crossed();
    let opts = ReductionOptions { policy: PrecisionPolicy::fixed(128), ..corrected() };
    assert_eq!(count_via_reduction_with(&g, &d, &opts).unwrap().integer, BigInt::from(7));
}

#[test]
#[ignore = "symbolic expansion takes about 20 s in release"]
fn lambda_certifies_c4() {
    let (g, d) = common::c4_crossed();
    let inst = replace_crossings(&g, &d).unwrap();
    let l = lambda_integrality(&inst, WeightSet::Corrected, 256, EngineConfig::default()).unwrap();
    assert!(l.integer_coefficients);
    assert_eq!(l.certified.unwrap(), BigInt::from(7));
}
