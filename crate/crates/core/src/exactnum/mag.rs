//! Unsigned magnitude `man * 2^exp` with a short mantissa, used for ball
//! radii. Every operation has an explicit rounding direction: `*_up`
//! results are upper bounds, `*_down` results are lower bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

const MAN_BITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Default for Mag {
    fn default() -> Self {
        Mag::ZERO
    }
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    /// Normalizes so that `man < 2^MAN_BITS`, rounding in the given direction.
    fn norm(mut man: u128, mut exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits > MAN_BITS {
            let shift = bits - MAN_BITS;
            let lost = man & ((1u128 << shift) - 1);
            man >>= shift;
            exp += i64::from(shift);
            if up && lost != 0 {
                man += 1;
                if man >> MAN_BITS != 0 {
                    man >>= 1;
                    exp += 1;
                }
            }
        }
        Mag { man: man as u64, exp }
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::norm(u128::from(v), 0, true)
    }

    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    fn bigint_rounded(n: &BigUint, shift: i64, up: bool) -> Mag {
        if n.is_zero() {
            return Mag::ZERO;
        }
        let bits = n.bits() as i64;
        let drop = (bits - 64).max(0);
        let top: BigUint = n >> drop as usize;
        let mut m = Mag::norm(u128::from(top.to_u64().unwrap()), drop + shift, up);
        if up && drop > 0 {
            let lost = n - (&top << drop as usize);
            if !lost.is_zero() {
                m = m.add_up(&Mag::pow2(drop + shift));
            }
        }
        m
    }

    /// Upper bound for `|n| * 2^shift`.
    pub fn from_bigint_up(n: &BigInt, shift: i64) -> Mag {
        Mag::bigint_rounded(n.magnitude(), shift, true)
    }

    /// Lower bound for `|n| * 2^shift`.
    pub fn from_bigint_down(n: &BigInt, shift: i64) -> Mag {
        Mag::bigint_rounded(n.magnitude(), shift, false)
    }

    /// Upper bound for a finite nonnegative `f64`.
    pub fn from_f64_up(x: f64) -> Mag {
        assert!(x.is_finite() && x >= 0.0, "magnitude must be finite and nonnegative");
        if x == 0.0 {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Mag::norm(u128::from(man), exp, true)
    }

    /// Nearest-ish `f64`, saturating; suitable for reporting only.
    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        (self.man as f64) * 2f64.powi(e)
    }

    /// `log2` of the value (approximate), `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.man == 0 {
            f64::NEG_INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }

    pub fn add_up(&self, o: &Mag) -> Mag {
        self.add(o, true)
    }

    pub fn add_down(&self, o: &Mag) -> Mag {
        self.add(o, false)
    }

    fn add(&self, o: &Mag, up: bool) -> Mag {
        if self.man == 0 {
            return *o;
        }
        if o.man == 0 {
            return *self;
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let gap = hi.exp - lo.exp;
        if gap > 90 {
            // lo is far below the last mantissa bit of hi
            return if up {
                Mag::norm(u128::from(hi.man) + 1, hi.exp, true)
            } else {
                *hi
            };
        }
        let sum = (u128::from(hi.man) << gap) + u128::from(lo.man);
        Mag::norm(sum, lo.exp, up)
    }

    /// Lower bound for `max(self - o, 0)`.
    pub fn sub_down(&self, o: &Mag) -> Mag {
        if o.man == 0 {
            return *self;
        }
        if *self <= *o {
            return Mag::ZERO;
        }
        let gap = self.exp - o.exp;
        if gap > 90 {
            // o < 2^(self.exp - 60)
            return Mag::norm((u128::from(self.man) << 60) - 1, self.exp - 60, false);
        }
        if gap >= 0 {
            let diff = (u128::from(self.man) << gap) - u128::from(o.man);
            Mag::norm(diff, o.exp, false)
        } else {
            let g = -gap;
            let diff = u128::from(self.man) - (u128::from(o.man) << g);
            Mag::norm(diff, self.exp, false)
        }
    }

    pub fn mul_up(&self, o: &Mag) -> Mag {
        Mag::norm(u128::from(self.man) * u128::from(o.man), self.exp + o.exp, true)
    }

    pub fn mul_down(&self, o: &Mag) -> Mag {
        Mag::norm(u128::from(self.man) * u128::from(o.man), self.exp + o.exp, false)
    }

    /// Upper bound for `self / o`; `o` must be nonzero.
    pub fn div_up(&self, o: &Mag) -> Mag {
        assert!(o.man != 0, "division by zero magnitude");
        if self.man == 0 {
            return Mag::ZERO;
        }
        let num = u128::from(self.man) << 64;
        let q = num / u128::from(o.man);
        let q = if num % u128::from(o.man) != 0 { q + 1 } else { q };
        Mag::norm(q, self.exp - o.exp - 64, true)
    }

    /// Lower bound for `self / o`; `o` must be nonzero.
    pub fn div_down(&self, o: &Mag) -> Mag {
        assert!(o.man != 0, "division by zero magnitude");
        if self.man == 0 {
            return Mag::ZERO;
        }
        let q = (u128::from(self.man) << 64) / u128::from(o.man);
        Mag::norm(q, self.exp - o.exp - 64, false)
    }

    /// Upper bound for the square root.
    pub fn sqrt_up(&self) -> Mag {
        if self.man == 0 {
            return Mag::ZERO;
        }
        let (mut man, mut exp) = (u128::from(self.man) << 60, self.exp - 60);
        if exp % 2 != 0 {
            man <<= 1;
            exp -= 1;
        }
        let mut r = (man as f64).sqrt() as u128;
        while r * r > man {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= man {
            r += 1;
        }
        if r * r != man {
            r += 1;
        }
        Mag::norm(r, exp / 2, true)
    }

    /// Lower bound for the square root.
    pub fn sqrt_down(&self) -> Mag {
        if self.man == 0 {
            return Mag::ZERO;
        }
        let (mut man, mut exp) = (u128::from(self.man) << 60, self.exp - 60);
        if exp % 2 != 0 {
            man <<= 1;
            exp -= 1;
        }
        let mut r = (man as f64).sqrt() as u128;
        while r * r > man {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= man {
            r += 1;
        }
        Mag::norm(r, exp / 2, false)
    }

    /// Upper bound for `self^(-num/den)`, `self > 0`. Evaluated in the log
    /// domain with a factor-two safety margin, far above `f64` error.
    pub fn pow_neg_frac_up(&self, num: u32, den: u32) -> Mag {
        assert!(self.man != 0, "negative power of zero");
        let t = -(f64::from(num) / f64::from(den)) * self.log2() + 1.0;
        let fl = t.floor();
        let frac = t - fl;
        let man = (2f64.powf(frac) * f64::from(1u32 << MAN_BITS)).ceil() as u64 + 1;
        Mag::norm(u128::from(man), fl as i64 - i64::from(MAN_BITS), true)
    }

    /// `self < 2^e`.
    pub fn lt_pow2(&self, e: i64) -> bool {
        *self < Mag::pow2(e)
    }

    /// Upper bound for `self` as an integer multiple of `2^-prec`.
    pub fn to_ulps_up(&self, prec: u32) -> BigUint {
        if self.man == 0 {
            return BigUint::zero();
        }
        let e = self.exp + i64::from(prec);
        if e >= 0 {
            BigUint::from(self.man) << e as usize
        } else {
            let sh = (-e) as u32;
            if sh >= 64 {
                BigUint::from(1u8)
            } else {
                let q = self.man >> sh;
                let r = self.man & ((1u64 << sh) - 1);
                BigUint::from(q + u64::from(r != 0))
            }
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.man == 0, o.man == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let top_a = self.exp + i64::from(64 - self.man.leading_zeros());
        let top_b = o.exp + i64::from(64 - o.man.leading_zeros());
        if top_a != top_b {
            return top_a.cmp(&top_b);
        }
        let e = self.exp.min(o.exp);
        let a = u128::from(self.man) << (self.exp - e);
        let b = u128::from(o.man) << (o.exp - e);
        a.cmp(&b)
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.man == 0 {
            write!(f, "0")
        } else {
            write!(f, "2^{:.2}", self.log2())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_directions_bracket_exact_values() {
        let third_up = Mag::from_u64(1).div_up(&Mag::from_u64(3));
        assert!(third_up.mul_up(&Mag::from_u64(3)) >= Mag::from_u64(1));
        let big = BigInt::from(u128::MAX) * BigInt::from(7u8);
        let up = Mag::from_bigint_up(&big, -10);
        let down = Mag::from_bigint_down(&big, -10);
        assert!(down <= up);
        assert!(down < up);
    }

    #[test]
    fn sqrt_brackets() {
        let two = Mag::from_u64(2);
        let up = two.sqrt_up();
        let down = two.sqrt_down();
        assert!(down.mul_down(&down) <= two);
        assert!(up.mul_up(&up) >= two);
        assert!((up.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-8);
    }

    #[test]
    fn subtraction_is_lower_bound() {
        let a = Mag::from_u64(10);
        let b = Mag::from_u64(3);
        assert_eq!(a.sub_down(&b), Mag::from_u64(7));
        assert_eq!(b.sub_down(&a), Mag::ZERO);
    }

    #[test]
    fn f64_conversion_is_upper() {
        for x in [1e-30, 0.1, 1.0, 3.75, 1e20] {
            assert!(Mag::from_f64_up(x).to_f64() >= x);
        }
    }

    #[test]
    fn fractional_power_bound() {
        let m = Mag::from_u64(8);
        let b = m.pow_neg_frac_up(2, 3);
        assert!(b.to_f64() >= 0.25);
        assert!(b.to_f64() <= 0.6);
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(Mag::pow2(-100) < Mag::pow2(-99));
        assert!(Mag::from_u64(3) > Mag::pow2(1));
        assert!(Mag::ZERO < Mag::pow2(-5000));
    }

    #[test]
    fn ulps_round_up() {
        assert_eq!(Mag::pow2(-3).to_ulps_up(2), BigUint::from(1u8));
        assert_eq!(Mag::from_u64(3).to_ulps_up(2), BigUint::from(12u8));
    }
}
