use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::{BallComplex, ExactError, Mag};

/// Rounds a ball to the unique integer it encloses.
///
/// Radius at least 1/2 is a precision problem. A ball whose imaginary
/// interval excludes 0, or whose real interval holds no integer, is not an
/// integer at any precision. A ball that holds an integer but also reaches
/// the half-way point to a neighbour is again a precision problem.
pub fn certify_integer(x: &BallComplex) -> Result<BigInt, ExactError> {
    let prec = x.precision();
    let rad = x.radius();
    if rad >= Mag::pow2(-1) {
        return Err(ExactError::InsufficientPrecision { precision: prec });
    }
    let im = x.im_rational();
    let re = x.re_rational();
    // a strict lower bound on |im| above the radius proves exclusion
    if mag_down(&im) > rad {
        return Err(ExactError::NotAnInteger(x.to_string()));
    }
    let n: BigInt = Integer::div_floor(&(re.numer() * 2 + re.denom()), &(re.denom() * 2));
    let dist = re - BigRational::from_integer(n.clone());
    if mag_down(&dist) > rad {
        return Err(ExactError::NotAnInteger(x.to_string()));
    }
    if mag_up(&dist).add_up(&rad) >= Mag::pow2(-1) {
        return Err(ExactError::InsufficientPrecision { precision: prec });
    }
    Ok(n)
}

fn mag_down(q: &BigRational) -> Mag {
    Mag::from_bigint_down(q.numer(), 0).div_down(&Mag::from_bigint_up(q.denom(), 0))
}

fn mag_up(q: &BigRational) -> Mag {
    Mag::from_bigint_up(q.numer(), 0).div_up(&Mag::from_bigint_down(q.denom(), 0))
}

/// Start at `start` bits and double on `InsufficientPrecision` up to `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub cap: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start: 128, cap: 1 << 20 }
    }
}

impl PrecisionPolicy {
    pub fn fixed(bits: u32) -> Self {
        PrecisionPolicy { start: bits, cap: bits }
    }

    /// Runs `f` at increasing precision. `retry` decides which errors are
    /// worth another attempt.
    pub fn run<T, E>(
        &self,
        mut f: impl FnMut(u32) -> Result<T, E>,
        retry: impl Fn(&E) -> bool,
    ) -> Result<(T, u32), E> {
        let mut p = self.start;
        loop {
            match f(p) {
                Ok(v) => return Ok((v, p)),
                Err(e) if retry(&e) && p < self.cap => {
                    p = p.saturating_mul(2).min(self.cap);
                }
                Err(e) => return Err(e),
            }
        }
    }
}
