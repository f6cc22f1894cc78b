//! The weight algebra the machines are generic over.
//!
//! This is deliberately not a general semiring abstraction: the engine fixes
//! exact rationals as its weight type, and the only other implementation is
//! a float weight used by the merge benchmark to demonstrate how inexact
//! arithmetic defeats weight-aware state merging. The trait is sealed.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::rational::Rational;

mod private {
    pub trait Sealed {}
    impl Sealed for super::Rational {}
    impl Sealed for super::FloatWeight {}
}

/// Field operations plus the exact-equality key used for state merging.
///
/// `Hash`/`Eq` must agree with value identity as the minimizer sees it: for
/// rationals that is canonical lowest-terms identity, for floats it is bit
/// identity (which is exactly what makes the float mode fail to merge).
pub trait Weight:
    private::Sealed + Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_one(&self) -> bool;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// Exact quotient; callers guarantee `other` is nonzero.
    fn divide(&self, other: &Self) -> Self;
}

impl Weight for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn divide(&self, other: &Self) -> Self {
        self / other
    }
}

/// Double-precision weight with bitwise identity.
///
/// Only used by the merge benchmark's float mode; everything else in the
/// crate runs on [`Rational`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatWeight(f64);

impl FloatWeight {
    pub fn new(value: f64) -> Self {
        // Fold -0.0 into +0.0 so zero has a single identity.
        FloatWeight(if value == 0.0 { 0.0 } else { value })
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Eq for FloatWeight {}

impl Hash for FloatWeight {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl fmt::Display for FloatWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.0)
    }
}

impl Weight for FloatWeight {
    fn zero() -> Self {
        FloatWeight(0.0)
    }

    fn one() -> Self {
        FloatWeight(1.0)
    }

    fn is_one(&self) -> bool {
        self.0 == 1.0
    }

    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }

    fn plus(&self, other: &Self) -> Self {
        FloatWeight::new(self.0 + other.0)
    }

    fn times(&self, other: &Self) -> Self {
        FloatWeight::new(self.0 * other.0)
    }

    fn divide(&self, other: &Self) -> Self {
        FloatWeight::new(self.0 / other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_bit_identity_distinguishes_rounded_values() {
        // 1/49 * 49 != 1 in doubles: the kind of drift that keeps float
        // machines from merging.
        let w = FloatWeight::new(1.0 / 49.0).times(&FloatWeight::new(49.0));
        assert_ne!(w, FloatWeight::one());
        let sum = FloatWeight::new(0.1).plus(&FloatWeight::new(0.2));
        assert_ne!(sum, FloatWeight::new(0.3));
    }

    #[test]
    fn rational_weight_is_exact() {
        let w = Rational::new(1, 49)
            .unwrap()
            .times(&Rational::from_integer(49));
        assert!(w.is_one());
    }

    #[test]
    fn negative_zero_folds_into_zero() {
        assert_eq!(FloatWeight::new(-0.0), FloatWeight::new(0.0));
        let cancelled = FloatWeight::new(0.5).plus(&FloatWeight::new(-0.5));
        assert!(cancelled.is_zero());
    }
}
