//! Coefficient-ring abstraction shared by the polynomial, series, and
//! operator containers.

use core::fmt::Debug;

use crate::rational::GaussianRational;

/// A commutative-ring element with exact arithmetic.
///
/// Constants are derived from an existing value (`zero_like`, `one_like`) so
/// that context-carrying rings — truncated series, which must agree on their
/// truncation order — can participate without a separate ring descriptor.
/// Every ring here contains the Gaussian rationals, exposed via `scale_rat`.
pub trait Scalar: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Multiplicative inverse when the element is a unit of its ring.
    fn inv(&self) -> Option<Self>;

    /// Multiply by a machine integer.
    fn scale_int(&self, n: i128) -> Self;

    /// Multiply by an exact Gaussian-rational constant.
    fn scale_rat(&self, c: &GaussianRational) -> Self;
}

/// Rings whose multiplicative unit needs no context.
///
/// Truncated series are the deliberate exception: their unit depends on a
/// truncation order, so containers generic over any [`Scalar`] must reach
/// `one` through an existing value (`one_like`), while containers that start
/// empty (polynomials, operators) require this stronger bound.
pub trait ContextFreeOne: Scalar {
    fn one() -> Self;
}

impl Scalar for GaussianRational {
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }

    fn one_like(&self) -> Self {
        GaussianRational::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussianRational::add(self, rhs)
    }

    fn neg(&self) -> Self {
        GaussianRational::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussianRational::mul(self, rhs)
    }

    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }

    fn scale_int(&self, n: i128) -> Self {
        GaussianRational::scale_int(self, n)
    }

    fn scale_rat(&self, c: &GaussianRational) -> Self {
        GaussianRational::mul(self, c)
    }
}

impl ContextFreeOne for GaussianRational {
    fn one() -> Self {
        GaussianRational::one()
    }
}
