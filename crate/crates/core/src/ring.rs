//! Coefficient rings used by the matching engine and the interpolation solver.
//!
//! The engine only needs `zero`, `one`, addition and multiplication. Exact
//! rings additionally expose an embedding of the rationals and, where it
//! exists, exact division by a nonzero integer.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_integer(n: &BigInt) -> Self;

    /// Exact zero. Ball elements report `true` only for the zero ball of radius 0.
    fn is_exact_zero(&self) -> bool;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_elem();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Rings that contain an image of Q.
pub trait RationalRing: Ring {
    fn from_rational(q: &BigRational) -> Self;
}

/// Rings with exact division by nonzero integers (where the quotient exists).
pub trait IntDivRing: Ring {
    fn div_integer(&self, d: &BigInt) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl IntDivRing for BigInt {
    fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, d);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for BigRational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl RationalRing for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl IntDivRing for BigRational {
    fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if Zero::is_zero(d) {
            None
        } else {
            Some(self / BigRational::from_integer(d.clone()))
        }
    }
}

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// Used for matching-size distributions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(pub Vec<BigInt>);

impl UniPoly {
    pub fn variable() -> Self {
        UniPoly(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn coefficient(&self, degree: usize) -> BigInt {
        self.0.get(degree).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !Zero::is_zero(c))
    }

    fn trimmed(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(|c| Zero::is_zero(c)) {
            v.pop();
        }
        UniPoly(v)
    }
}

impl Ring for UniPoly {
    fn zero_elem() -> Self {
        UniPoly(Vec::new())
    }
    fn one_elem() -> Self {
        UniPoly(vec![BigInt::one()])
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let v = (0..n)
            .map(|i| self.coefficient(i) + rhs.coefficient(i))
            .collect();
        Self::trimmed(v)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Self::zero_elem();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }
    fn neg(&self) -> Self {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
    fn from_integer(n: &BigInt) -> Self {
        Self::trimmed(vec![n.clone()])
    }
    fn is_exact_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "y")?,
                (1, false) => write!(f, "{a}*y")?,
                (_, true) => write!(f, "y^{d}")?,
                (_, false) => write!(f, "{a}*y^{d}")?,
            }
        }
        Ok(())
    }
}
