//! Complex ball arithmetic: a fixed-point midpoint with `prec` fractional
//! bits and a [`Mag`] radius in the complex-modulus metric. Every operation
//! returns a ball that encloses all exact results obtainable from points of
//! the input balls.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, Mag};
use crate::ring::{RationalRing, Ring};

/// Working precision used when an exact rational has to be embedded in a
/// ring context that carries no precision of its own.
pub const RING_EMBED_PREC: u32 = 512;

#[derive(Clone, PartialEq, Eq)]
pub struct BallComplex {
    re: BigInt,
    im: BigInt,
    prec: u32,
    rad: Mag,
}

impl fmt::Debug for BallComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i) +/- {}",
            fixed_to_sci(&self.re, self.prec, 12),
            fixed_to_sci(&self.im, self.prec, 12),
            self.rad
        )
    }
}

impl fmt::Display for BallComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn shl(n: &BigInt, bits: u32) -> BigInt {
    n << bits as usize
}

impl BallComplex {
    pub fn from_parts(re: BigInt, im: BigInt, prec: u32, rad: Mag) -> Self {
        BallComplex { re, im, prec, rad }
    }

    pub fn exact_int(n: i64) -> Self {
        Self::from_parts(BigInt::from(n), BigInt::zero(), 0, Mag::ZERO)
    }

    pub fn i() -> Self {
        Self::from_parts(BigInt::zero(), BigInt::one(), 0, Mag::ZERO)
    }

    /// Rounds `q` to `prec` fractional bits; the radius covers the rounding.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = shl(q.numer(), prec);
        let (fl, rem) = scaled.div_mod_floor(q.denom());
        let rad = if rem.is_zero() {
            Mag::ZERO
        } else {
            Mag::pow2(-i64::from(prec))
        };
        Self::from_parts(fl, BigInt::zero(), prec, rad)
    }

    pub fn from_complex_rational(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        let r = Self::from_rational(re, prec);
        let i = Self::from_rational(im, prec);
        Self::from_parts(r.re, i.re, prec, r.rad.add_up(&i.rad))
    }

    /// Parses a decimal such as `-0.684979` exactly.
    pub fn from_decimal(re: &str, im: &str, prec: u32) -> Self {
        Self::from_complex_rational(&decimal(re), &decimal(im), prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn radius(&self) -> Mag {
        self.rad
    }

    pub fn mid(&self) -> BallComplex {
        Self::from_parts(self.re.clone(), self.im.clone(), self.prec, Mag::ZERO)
    }

    pub fn with_radius(&self, rad: Mag) -> BallComplex {
        Self::from_parts(self.re.clone(), self.im.clone(), self.prec, rad)
    }

    pub fn add_error(&self, err: Mag) -> BallComplex {
        self.with_radius(self.rad.add_up(&err))
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (fixed_to_f64(&self.re, self.prec), fixed_to_f64(&self.im, self.prec))
    }

    pub fn re_sci(&self, sig: usize) -> String {
        fixed_to_sci(&self.re, self.prec, sig)
    }

    pub fn im_sci(&self, sig: usize) -> String {
        fixed_to_sci(&self.im, self.prec, sig)
    }

    fn rescaled(&self, prec: u32) -> (BigInt, BigInt) {
        debug_assert!(prec >= self.prec);
        let s = prec - self.prec;
        (shl(&self.re, s), shl(&self.im, s))
    }

    /// Same value at higher precision; exact.
    pub fn with_precision_at_least(&self, prec: u32) -> BallComplex {
        if prec <= self.prec {
            return self.clone();
        }
        let (re, im) = self.rescaled(prec);
        Self::from_parts(re, im, prec, self.rad)
    }

    /// Drops fractional bits down to `prec`; the radius absorbs the rounding.
    pub fn rounded_to(&self, prec: u32) -> BallComplex {
        if prec >= self.prec {
            return self.clone();
        }
        let s = (self.prec - prec) as usize;
        let re = &self.re >> s;
        let im = &self.im >> s;
        Self::from_parts(re, im, prec, self.rad.add_up(&Mag::pow2(1 - i64::from(prec))))
    }

    /// Upper bound of |mid|.
    fn mid_abs_up(&self) -> Mag {
        let p = -i64::from(self.prec);
        let r = Mag::from_bigint_up(&self.re, p);
        let i = Mag::from_bigint_up(&self.im, p);
        r.mul_up(&r).add_up(&i.mul_up(&i)).sqrt_up()
    }

    /// Lower bound of |mid|.
    fn mid_abs_down(&self) -> Mag {
        let p = -i64::from(self.prec);
        let r = Mag::from_bigint_down(&self.re, p);
        let i = Mag::from_bigint_down(&self.im, p);
        r.mul_down(&r).add_down(&i.mul_down(&i)).sqrt_down()
    }

    /// Upper bound for every |z| with z in the ball.
    pub fn abs_up(&self) -> Mag {
        self.mid_abs_up().add_up(&self.rad)
    }

    /// Lower bound for every |z| with z in the ball.
    pub fn abs_down(&self) -> Mag {
        self.mid_abs_down().sub_down(&self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// 0 is consistent with the ball (not provably outside it).
    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    /// The ball certainly excludes 0.
    pub fn excludes_zero(&self) -> bool {
        self.mid_abs_down() > self.rad
    }

    /// The two balls are not provably disjoint.
    pub fn overlaps(&self, o: &BallComplex) -> bool {
        let d = Ring::sub(&self.mid(), &o.mid());
        d.abs_down() <= self.rad.add_up(&o.rad)
    }

    /// `o` lies certainly inside `self`.
    pub fn contains(&self, o: &BallComplex) -> bool {
        let d = Ring::sub(&self.mid(), &o.mid());
        d.mid_abs_up().add_up(&d.rad).add_up(&o.rad) <= self.rad
    }

    /// Some point of the ball lies within `tol` of `target`.
    pub fn near(&self, target: &BallComplex, tol: f64) -> bool {
        let widened = self.add_error(Mag::from_f64_up(tol));
        widened.overlaps(target)
    }

    fn round_error(prec: u32) -> Mag {
        Mag::pow2(1 - i64::from(prec))
    }

    pub fn real_part(&self) -> BallComplex {
        Self::from_parts(self.re.clone(), BigInt::zero(), self.prec, self.rad)
    }

    pub fn imag_part(&self) -> BallComplex {
        Self::from_parts(self.im.clone(), BigInt::zero(), self.prec, self.rad)
    }

    pub fn conj(&self) -> BallComplex {
        Self::from_parts(self.re.clone(), -&self.im, self.prec, self.rad)
    }

    pub fn mul_i(&self) -> BallComplex {
        Self::from_parts(-&self.im, self.re.clone(), self.prec, self.rad)
    }

    /// Multiplicative inverse at working precision `prec` (at least the
    /// operand's own precision).
    pub fn inv_at(&self, prec: u32) -> Result<BallComplex, ExactError> {
        let p = prec.max(self.prec);
        let lo = self.mid_abs_down();
        if lo <= self.rad {
            return Err(ExactError::DivisorContainsZero);
        }
        let (re, im) = self.rescaled(p);
        let norm = &re * &re + &im * &im;
        let scale = 2 * p as usize;
        let out_re = (&re << scale).div_floor(&norm);
        let out_im = ((-&im) << scale).div_floor(&norm);
        // |1/z - 1/m| <= r / (|m| (|m| - r))
        let denom = lo.mul_down(&lo.sub_down(&self.rad));
        let prop = if self.rad.is_zero() {
            Mag::ZERO
        } else {
            self.rad.div_up(&denom)
        };
        Ok(Self::from_parts(
            out_re,
            out_im,
            p,
            prop.add_up(&Self::round_error(p)),
        ))
    }

    pub fn inv(&self) -> Result<BallComplex, ExactError> {
        self.inv_at(self.prec.max(64))
    }

    pub fn div(&self, o: &BallComplex) -> Result<BallComplex, ExactError> {
        let p = self.prec.max(o.prec).max(64);
        Ok(Ring::mul(self, &o.inv_at(p)?))
    }

    pub fn mul_rational(&self, q: &BigRational) -> BallComplex {
        let p = self.prec.max(64);
        Ring::mul(self, &Self::from_rational(q, p))
    }

    /// Principal square or cube root.
    pub fn root(&self, degree: u32) -> Result<BallComplex, ExactError> {
        if !(2..=3).contains(&degree) {
            return Err(ExactError::UnsupportedRootDegree(degree));
        }
        if !self.excludes_zero() {
            return Err(ExactError::BallContainsZero);
        }
        let p = self.prec.max(64);
        if self.im.is_zero() && self.rad.is_zero() && self.re.is_negative() {
            // exact point on the cut: root(-t) = root(t) * e^{i pi / degree}
            let pos = self.neg_exact().root(degree)?;
            let unit = if degree == 2 {
                BallComplex::i()
            } else {
                let sqrt3 = BallComplex::exact_int(3)
                    .with_precision_at_least(p)
                    .root(2)?;
                Ring::add(&BallComplex::exact_int(1), &sqrt3.mul_i())
                    .mul_rational(&BigRational::new(1.into(), 2.into()))
            };
            return Ok(Ring::mul(&pos, &unit).rounded_to(p));
        }

        let wp = p + 32;
        let w = self.newton_root(degree, wp)?;
        // residual ball d encloses w^n - z' for every z' in self
        let wn = Ring::pow(&w, degree);
        let d = Ring::sub(&wn, self);
        let reach = d.abs_up();
        let sector_ok = w.re.is_positive()
            && (degree == 2 || {
                let re2 = &w.re * &w.re * BigInt::from(3);
                &w.im * &w.im < re2
            });
        if !sector_ok {
            return Err(ExactError::BranchAmbiguous);
        }
        if reach.is_zero() {
            return Ok(w.rounded_to(p));
        }
        // disk around w^n of radius `reach` must avoid (-inf, 0]
        let disk = wn.add_error(reach);
        let re_lo = disk.real_part();
        let clear_of_cut = (re_lo.re.is_positive() && re_lo.mid_abs_down() > disk.rad)
            || disk.imag_part().mid_abs_down() > disk.rad;
        if !clear_of_cut {
            return Err(ExactError::BranchAmbiguous);
        }
        let dist = disk.abs_down();
        if dist.is_zero() {
            return Err(ExactError::InsufficientPrecision { precision: p });
        }
        // |root'(t)| = |t|^(1/n - 1) / n on the disk
        let deriv = dist
            .pow_neg_frac_up(degree - 1, degree)
            .mul_up(&Mag::from_u64(1).div_up(&Mag::from_u64(u64::from(degree))));
        let err = reach.mul_up(&deriv);
        Ok(w.add_error(err).rounded_to(p))
    }

    fn neg_exact(&self) -> BallComplex {
        Self::from_parts(-&self.re, -&self.im, self.prec, self.rad)
    }

    /// Approximate principal root of the midpoint (radius 0).
    fn newton_root(&self, degree: u32, wp: u32) -> Result<BallComplex, ExactError> {
        let (x, y) = self.mid_f64();
        if !x.is_finite() || !y.is_finite() || (x == 0.0 && y == 0.0) {
            return Err(ExactError::InsufficientPrecision { precision: self.prec });
        }
        let r = x.hypot(y).powf(1.0 / f64::from(degree));
        let theta = y.atan2(x) / f64::from(degree);
        let guess = |v: f64| BigInt::from(((v * 2f64.powi(52)).round()) as i64) << (wp as usize - 52);
        let mut w = Self::from_parts(guess(r * theta.cos()), guess(r * theta.sin()), wp, Mag::ZERO);
        let z = self.mid().with_precision_at_least(wp);
        let n = BallComplex::exact_int(i64::from(degree));
        let iterations = (f64::from(wp) / 40.0).log2().ceil().max(0.0) as u32 + 3;
        for _ in 0..iterations {
            let wn1 = Ring::pow(&w, degree - 1);
            let f = Ring::sub(&Ring::mul(&wn1, &w), &z).mid();
            let fp = Ring::mul(&n, &wn1).mid();
            let step = f.div(&fp)?.mid();
            w = Ring::sub(&w, &step).mid().rounded_to(wp).mid();
        }
        Ok(w)
    }

    pub fn sqrt(&self) -> Result<BallComplex, ExactError> {
        self.root(2)
    }

    pub fn cbrt(&self) -> Result<BallComplex, ExactError> {
        self.root(3)
    }

    /// Real part of the midpoint as an exact rational.
    pub fn re_rational(&self) -> BigRational {
        BigRational::new(self.re.clone(), BigInt::one() << self.prec as usize)
    }

    pub fn im_rational(&self) -> BigRational {
        BigRational::new(self.im.clone(), BigInt::one() << self.prec as usize)
    }
}

impl Ring for BallComplex {
    fn zero_elem() -> Self {
        Self::exact_int(0)
    }
    fn one_elem() -> Self {
        Self::exact_int(1)
    }
    fn add(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let (ar, ai) = self.rescaled(p);
        let (br, bi) = o.rescaled(p);
        Self::from_parts(ar + br, ai + bi, p, self.rad.add_up(&o.rad))
    }
    fn mul(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let (ar, ai) = self.rescaled(p);
        let (br, bi) = o.rescaled(p);
        let full_re = &ar * &br - &ai * &bi;
        let full_im = &ar * &bi + &ai * &br;
        let mut rad = Mag::ZERO;
        let (re, im) = if p == 0 {
            (full_re, full_im)
        } else {
            let mask_lost = |v: &BigInt| {
                let low = v.magnitude() & ((num_bigint::BigUint::one() << p as usize) - 1u8);
                !low.is_zero()
            };
            if mask_lost(&full_re) || mask_lost(&full_im) {
                rad = Self::round_error(p);
            }
            (full_re >> p as usize, full_im >> p as usize)
        };
        if !self.rad.is_zero() || !o.rad.is_zero() {
            let prop = self
                .mid_abs_up()
                .mul_up(&o.rad)
                .add_up(&o.mid_abs_up().mul_up(&self.rad))
                .add_up(&self.rad.mul_up(&o.rad));
            rad = rad.add_up(&prop);
        }
        Self::from_parts(re, im, p, rad)
    }
    fn neg(&self) -> Self {
        self.neg_exact()
    }
    fn from_integer(n: &BigInt) -> Self {
        Self::from_parts(n.clone(), BigInt::zero(), 0, Mag::ZERO)
    }
    fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }
}

impl RationalRing for BallComplex {
    fn from_rational(q: &BigRational) -> Self {
        if q.is_integer() {
            return Self::from_integer(&q.to_integer());
        }
        // dyadic rationals embed exactly
        let d = q.denom();
        if d.magnitude().count_ones() == 1 {
            let bits = d.trailing_zeros().unwrap_or(0) as u32;
            return Self::from_rational(q, bits);
        }
        BallComplex::from_rational(q, RING_EMBED_PREC)
    }
}

/// Exact rational from a plain decimal string such as `-15.24493`.
pub fn decimal(s: &str) -> BigRational {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().expect("decimal literal");
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(n, d);
    if neg {
        -q
    } else {
        q
    }
}

fn fixed_to_f64(n: &BigInt, prec: u32) -> f64 {
    let bits = n.bits() as i64;
    let drop = (bits - 60).max(0);
    let top = (n >> drop as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powf((drop - i64::from(prec)) as f64)
}

/// Scientific-notation rendering of `n * 2^-prec` with `sig` significant digits.
pub fn fixed_to_sci(n: &BigInt, prec: u32, sig: usize) -> String {
    if n.is_zero() {
        return "0".into();
    }
    let sign = if n.sign() == Sign::Minus { "-" } else { "" };
    let mag = n.abs();
    let approx = (mag.bits() as f64 - f64::from(prec)) * std::f64::consts::LOG10_2;
    let mut e10 = approx.floor() as i64;
    let ten = BigInt::from(10);
    let scaled = |e10: i64| -> BigInt {
        let k = sig as i64 - 1 - e10;
        let (num, den) = if k >= 0 {
            (&mag * num_traits::pow(ten.clone(), k as usize), BigInt::one() << prec as usize)
        } else {
            (
                mag.clone(),
                (BigInt::one() << prec as usize) * num_traits::pow(ten.clone(), (-k) as usize),
            )
        };
        // round half up
        Integer::div_floor(&(num * 2 + &den), &(den * 2))
    };
    let lo = num_traits::pow(ten.clone(), sig - 1);
    let hi = num_traits::pow(ten.clone(), sig);
    let mut s = scaled(e10);
    for _ in 0..4 {
        if s >= hi {
            e10 += 1;
        } else if s < lo {
            e10 -= 1;
        } else {
            break;
        }
        s = scaled(e10);
    }
    if s >= hi {
        s = s.div_floor(&ten);
        e10 += 1;
    }
    let digits = s.to_string();
    let (head, tail) = digits.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}
