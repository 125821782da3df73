//! Closed-form weights of the two sub-gadgets and the crossing constant.
//!
//! Two weight sets exist. `Published` evaluates the closed forms exactly as
//! printed next to the equation systems they solve. `Corrected` solves the
//! same target identities against the brute-force matching polynomial of
//! the sub-gadget, whose `xyz` coefficient carries `3a` where the printed
//! expansion carries `2a`; see the README for the discrepancy.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{BallComplex, ExactError, MIN_PRECISION};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgadgetKind {
    Delta1,
    Delta2,
}

impl SubgadgetKind {
    /// Weight-tag suffix used in graph files: `a1`, `b2`, ...
    pub fn index(self) -> u8 {
        match self {
            SubgadgetKind::Delta1 => 1,
            SubgadgetKind::Delta2 => 2,
        }
    }
}

impl fmt::Display for SubgadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgadgetKind::Delta1 => write!(f, "delta1"),
            SubgadgetKind::Delta2 => write!(f, "delta2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WeightSet {
    #[default]
    Published,
    Corrected,
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSet::Published => write!(f, "published"),
            WeightSet::Corrected => write!(f, "corrected"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SubgadgetWeights {
    pub kind: SubgadgetKind,
    pub set: WeightSet,
    pub a: BallComplex,
    pub b: BallComplex,
    pub c: BallComplex,
    /// C1 for Δ1, C2 for Δ2.
    pub normalization: BallComplex,
}

#[derive(Debug, Clone)]
pub struct CrossingConstant {
    pub c: BallComplex,
    pub c1: BallComplex,
    pub c2: BallComplex,
}

fn int(n: i64, p: u32) -> BallComplex {
    BallComplex::exact_int(n).with_precision_at_least(p)
}

fn frac(n: i64, d: i64, p: u32) -> BallComplex {
    BallComplex::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)), p)
}

fn check_precision(p: u32) -> Result<(), ExactError> {
    if p < MIN_PRECISION {
        Err(ExactError::InsufficientPrecision { precision: p })
    } else {
        Ok(())
    }
}

fn add(x: &BallComplex, y: &BallComplex) -> BallComplex {
    Ring::add(x, y)
}

fn sub(x: &BallComplex, y: &BallComplex) -> BallComplex {
    Ring::sub(x, y)
}

fn mul(x: &BallComplex, y: &BallComplex) -> BallComplex {
    Ring::mul(x, y)
}

/// (11 + 9√3 i)
fn eleven_nine(p: u32) -> Result<BallComplex, ExactError> {
    let s3 = int(3, p).sqrt()?;
    Ok(add(&int(11, p), &mul(&int(9, p), &s3).mul_i()))
}

pub fn gadget_constants(kind: SubgadgetKind, precision: u32) -> Result<SubgadgetWeights, ExactError> {
    gadget_constants_with(kind, WeightSet::Published, precision)
}

pub fn gadget_constants_with(
    kind: SubgadgetKind,
    set: WeightSet,
    precision: u32,
) -> Result<SubgadgetWeights, ExactError> {
    check_precision(precision)?;
    let p = precision;
    let (a, b, c, norm) = match (kind, set) {
        (SubgadgetKind::Delta2, WeightSet::Published) => {
            let s3 = int(3, p).sqrt()?;
            let e = eleven_nine(p)?;
            let b = mul(&e, &frac(1, 4, p)).cbrt()?;
            let a = add(&int(-3, p), &s3.mul_i()).div(&mul(&int(2, p), &e).cbrt()?)?;
            let c = add(&int(2, p), &s3.mul_i()).neg().div(&b)?;
            let norm = mul(
                &mul(&b, &b),
                &mul(&sub(&int(1, p), &s3.mul_i()), &frac(1, 4, p)),
            );
            (a, b, c, norm)
        }
        (SubgadgetKind::Delta1, WeightSet::Published) => {
            let r = int(105, p).sqrt()?;
            let a = sub(&r, &int(13, p))
                .mul_i()
                .neg()
                .div(&mul(&int(2, p), &sub(&int(77, p), &r)).sqrt()?)?;
            let b = mul(&sub(&int(77, p), &r), &frac(1, 2, p))
                .sqrt()?
                .mul_i()
                .mul_rational(&BigRational::new(1.into(), 4.into()));
            let c = delta1_c_from_constraint(&a, &b)?;
            let norm = sub(&r, &int(77, p)).div(&mul(&int(2, p), &add(&r, &int(3, p))))?;
            (a, b, c, norm)
        }
        (SubgadgetKind::Delta1, WeightSet::Corrected) => {
            let s7 = int(7, p).sqrt()?;
            let b = mul(&s7, &frac(1, 2, p)).mul_i();
            let a = int(1, p).div(&s7)?.mul_i();
            let c = mul(&s7, &frac(10, 21, p)).mul_i();
            (a, b, c, frac(-7, 3, p))
        }
        (SubgadgetKind::Delta2, WeightSet::Corrected) => {
            let s3 = int(3, p).sqrt()?;
            let z = mul(&add(&int(1, p), &mul(&int(3, p), &s3).mul_i()), &frac(1, 2, p));
            let b = z.cbrt()?;
            let b2 = mul(&b, &b);
            let b5 = mul(&mul(&b2, &b2), &b);
            let five_b5 = mul(&int(5, p), &b5);
            let a = mul(&add(&five_b5, &mul(&int(2, p), &b2)), &frac(1, 21, p));
            let c = mul(&sub(&five_b5, &mul(&int(19, p), &b2)), &frac(1, 21, p));
            let norm = add(&mul(&mul(&b2, &b), &c), &mul(&int(3, p), &b2));
            (a, b, c, norm)
        }
    };
    Ok(SubgadgetWeights { kind, set, a, b, c, normalization: norm })
}

/// c = (-4 - 3ab) / (2b + ab^2).
fn delta1_c_from_constraint(a: &BallComplex, b: &BallComplex) -> Result<BallComplex, ExactError> {
    let p = a.precision();
    let ab = mul(a, b);
    let num = add(&int(-4, p), &mul(&int(-3, p), &ab));
    let den = add(&mul(&int(2, p), b), &mul(&ab, b));
    num.div(&den)
}

/// The separately printed closed form for c of Δ1,
/// -2i (71 - 3√105) / √((3/2)(679 + 29√105)).
pub fn delta1_c_display(precision: u32) -> Result<BallComplex, ExactError> {
    check_precision(precision)?;
    let p = precision;
    let r = int(105, p).sqrt()?;
    let num = sub(&int(71, p), &mul(&int(3, p), &r));
    let den = mul(&frac(3, 2, p), &add(&int(679, p), &mul(&int(29, p), &r))).sqrt()?;
    Ok(mul(&int(-2, p), &num.div(&den)?).mul_i())
}

/// Printed decimal for c of Δ2; does not match its own closed form.
pub const DELTA2_C_PRINTED: (&str, &str) = ("-1.063699", "0.921191");

pub fn crossing_constant(precision: u32) -> Result<CrossingConstant, ExactError> {
    crossing_constant_with(WeightSet::Published, precision)
}

/// C = (C1 C2)^3 from the two normalization constants.
pub fn crossing_constant_with(set: WeightSet, precision: u32) -> Result<CrossingConstant, ExactError> {
    let c1 = gadget_constants_with(SubgadgetKind::Delta1, set, precision)?.normalization;
    let c2 = gadget_constants_with(SubgadgetKind::Delta2, set, precision)?.normalization;
    let c = Ring::pow(&mul(&c1, &c2), 3);
    Ok(CrossingConstant { c, c1, c2 })
}

/// C from the single nested closed form
/// ((∛((11+9√3i)/4))^2 (1-√3i)/4 * (√105-77)/(2(√105+3)))^3.
pub fn crossing_constant_nested(precision: u32) -> Result<BallComplex, ExactError> {
    check_precision(precision)?;
    let p = precision;
    let s3 = int(3, p).sqrt()?;
    let cube = mul(&eleven_nine(p)?, &frac(1, 4, p)).cbrt()?;
    let left = mul(&mul(&cube, &cube), &sub(&int(1, p), &s3.mul_i())).mul_rational(&BigRational::new(1.into(), 4.into()));
    let r = int(105, p).sqrt()?;
    let right = sub(&r, &int(77, p)).div(&mul(&int(2, p), &add(&r, &int(3, p))))?;
    Ok(Ring::pow(&mul(&left, &right), 3))
}

fn poly_terms(w: &SubgadgetWeights) -> [BallComplex; 4] {
    let (a, b, c) = (&w.a, &w.b, &w.c);
    let p = a.precision();
    let ab = mul(a, b);
    let ab2 = mul(&ab, &ab);
    let ab3 = mul(&ab2, &ab);
    let b2 = mul(b, b);
    let b3 = mul(&b2, b);
    // printed coefficients: constant, x, xy, xyz
    let constant = add(&mul(&b3, c), &mul(&int(3, p), &b2));
    let lin = add(
        &add(&int(4, p), &mul(&int(3, p), &ab)),
        &add(&mul(&int(2, p), &mul(b, c)), &mul(&mul(&ab, b), c)),
    );
    let quad = [
        int(3, p),
        mul(&int(8, p), &ab),
        mul(&int(3, p), &mul(b, c)),
        mul(&int(3, p), &ab2),
        mul(&int(4, p), &mul(&mul(&ab, b), c)),
        mul(&mul(&ab2, b), c),
    ]
    .iter()
    .fold(BallComplex::zero_elem(), |s, t| add(&s, t));
    let cub_c = [int(2, p), mul(&int(9, p), &ab), mul(&int(6, p), &ab2), ab3.clone()]
        .iter()
        .fold(BallComplex::zero_elem(), |s, t| add(&s, t));
    let a2b = mul(&ab, a);
    let a3b2 = mul(&ab2, a);
    let cub = add(
        &mul(c, &cub_c),
        &mul(
            &int(3, p),
            &add(&add(&mul(&int(2, p), a), &mul(&int(4, p), &a2b)), &a3b2),
        ),
    );
    [constant, lin, quad, cub]
}

/// The three equations of the Δ2 system, as printed, moved to the form `lhs - rhs`.
pub fn delta2_residuals(w: &SubgadgetWeights) -> [BallComplex; 3] {
    let [constant, lin, quad, cub] = poly_terms(w);
    [sub(&cub, &constant), lin, quad]
}

/// The three equations of the Δ1 system, as printed, moved to the form `lhs - rhs`.
pub fn delta1_residuals(w: &SubgadgetWeights) -> [BallComplex; 3] {
    let [constant, lin, quad, cub] = poly_terms(w);
    [sub(&quad, &constant), lin, cub]
}

/// 4x^3 + 21x^2 + 30x + 8 at x = (√105 - 13)/8.
pub fn cubic_root_residual(precision: u32) -> Result<BallComplex, ExactError> {
    check_precision(precision)?;
    let p = precision;
    let x = mul(&sub(&int(105, p).sqrt()?, &int(13, p)), &frac(1, 8, p));
    let x2 = mul(&x, &x);
    let x3 = mul(&x2, &x);
    Ok([
        mul(&int(4, p), &x3),
        mul(&int(21, p), &x2),
        mul(&int(30, p), &x),
        int(8, p),
    ]
    .iter()
    .fold(BallComplex::zero_elem(), |s, t| add(&s, t)))
}
