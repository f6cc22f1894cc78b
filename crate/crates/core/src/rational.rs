//! Exact arbitrary-precision rational arithmetic.
//!
//! Weights are stored in lowest terms with a positive denominator, so two
//! equal values always have identical representations. That canonical-form
//! property is what lets the minimizer recognize equal path weights by hash
//! lookup instead of approximate comparison. Arithmetic is backed by
//! `num-rational`/`num-bigint`; this wrapper fixes the textual form used by
//! the machine file format (`num/den`, always with the slash) and adds the
//! telemetry and quantization hooks.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// An exact rational number in lowest terms with positive denominator.
///
/// Zero is represented uniquely as `0/1`. Values are immutable once built and
/// cheap to share between threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in lowest terms. The sign ends up on the numerator.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Builds `num/den` from big integers.
    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Exact quotient, or `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    /// `self` raised to a nonnegative integer power.
    pub fn pow(&self, exp: u32) -> Rational {
        Rational(BigRational::new_raw(
            self.0.numer().pow(exp),
            self.0.denom().pow(exp),
        ))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Lossy conversion for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal digit counts of |numerator| and denominator.
    ///
    /// Weight telemetry: rationals can grow without bound under repeated
    /// arithmetic, and this is the size signal exposed instead of any
    /// implicit rounding.
    pub fn digits(&self) -> (usize, usize) {
        fn count(n: &BigInt) -> usize {
            if n.is_zero() {
                1
            } else {
                n.magnitude().to_str_radix(10).len()
            }
        }
        (count(self.0.numer()), count(self.0.denom()))
    }

    /// Rounds to the nearest multiple of `1/max_den` (ties away from zero),
    /// then reduces. Explicitly opt-in; nothing in the engine calls this
    /// implicitly.
    pub fn quantize(&self, max_den: u64) -> Result<Rational> {
        if max_den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let scaled = &self.0 * BigRational::from_integer(BigInt::from(max_den));
        let rounded = scaled.round().to_integer();
        Ok(Rational(BigRational::new(rounded, BigInt::from(max_den))))
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, matching the machine file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `num/den` or a bare integer `num`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den_str.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if den.sign() == Sign::Minus {
            // Canonical text keeps the sign on the numerator.
            return Err(bad());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_integer(i64::from(n))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::checked_div`] where the
    /// divisor is not known to be nonzero.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl PartialOrd<u32> for Rational {
    fn partial_cmp(&self, other: &u32) -> Option<Ordering> {
        self.partial_cmp(&Rational::from(*other))
    }
}

impl PartialEq<u32> for Rational {
    fn eq(&self, other: &u32) -> bool {
        self == &Rational::from(*other)
    }
}
