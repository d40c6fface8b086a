//! Truncated power series in the deformation angle `theta`.
//!
//! A [`ThetaSeries`] holds coefficients `c_0 .. c_D` for a fixed truncation
//! order `D`; all arithmetic discards powers above `D`. Operands must agree
//! on `D` — a mismatch is a programming error, surfaced by the `try_*`
//! variants as `Err` and by the [`Scalar`] impl as a panic.
//!
//! Invariant: the coefficient vector always has length `D + 1 >= 1`, so a
//! series knows its own zero and one via [`Scalar::zero_like`] /
//! [`Scalar::one_like`] even when all coefficients vanish.

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::GaussianRational;
use crate::scalar::Scalar;

/// Truncated series `c_0 + c_1*theta + ... + c_D*theta^D`.
#[derive(Clone, PartialEq, Debug)]
pub struct ThetaSeries<C: Scalar> {
    coeffs: Vec<C>,
}

/// Two series with different truncation orders were combined.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrderMismatch {
    pub left: usize,
    pub right: usize,
}

impl<C: Scalar> ThetaSeries<C> {
    /// Builds a series from explicit coefficients `c_0 ..= c_D`.
    ///
    /// Panics if `coeffs` is empty (a series must carry its order).
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the order-0 coefficient");
        ThetaSeries { coeffs }
    }

    /// The zero series of order `order`, with coefficients shaped like `like`.
    pub fn zero(order: usize, like: &C) -> Self {
        ThetaSeries {
            coeffs: vec![like.zero_like(); order + 1],
        }
    }

    /// The constant series `c` of order `order`.
    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order, &c);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize, like: &C) -> Self {
        Self::constant(like.one_like(), order)
    }

    /// The monomial `c * theta^k`; panics if `k > order`.
    pub fn theta_power(c: C, k: usize, order: usize) -> Self {
        assert!(k <= order, "theta power {k} exceeds truncation order {order}");
        let mut s = Self::zero(order, &c);
        s.coeffs[k] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `theta^k`; panics if `k > order`.
    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// True if only the `theta^0` coefficient can be nonzero.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(C::is_zero)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, OrderMismatch> {
        self.check_order(rhs)?;
        Ok(ThetaSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        ThetaSeries {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, OrderMismatch> {
        self.try_add(&rhs.neg())
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, OrderMismatch> {
        self.check_order(rhs)?;
        let d = self.order();
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > d {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(ThetaSeries { coeffs })
    }

    pub fn scale(&self, c: &C) -> Self {
        ThetaSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i128) -> Self {
        ThetaSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale_int(n)).collect(),
        }
    }

    pub fn scale_rat(&self, c: &GaussianRational) -> Self {
        ThetaSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale_rat(c)).collect(),
        }
    }

    /// Multiplies by `theta^k`, discarding coefficients pushed past the
    /// truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let d = self.order();
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= d {
                coeffs[i + k] = c.clone();
            }
        }
        ThetaSeries { coeffs }
    }

    /// Re-truncates to a lower (or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        ThetaSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> ThetaSeries<D> {
        ThetaSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplicative inverse, requiring an invertible order-0 coefficient.
    ///
    /// Writes `s = c_0 (1 + u)` with `u` of positive valuation and expands
    /// the geometric series for `(1 + u)^{-1}` — exact at the truncation
    /// order because `u^n` vanishes for `n > D`.
    pub fn theta_inverse(&self) -> Option<Self> {
        let c0_inv = self.coeffs[0].inv()?;
        let d = self.order();
        let one = self.coeffs[0].one_like();
        // u = s/c0 - 1
        let u = self
            .scale(&c0_inv)
            .try_sub(&Self::one(d, &one))
            .expect("orders match by construction");
        let mut acc = Self::one(d, &one);
        let mut upow = Self::one(d, &one);
        for n in 1..=d {
            upow = upow.try_mul(&u).expect("orders match");
            let term = if n % 2 == 0 { upow.clone() } else { upow.neg() };
            acc = acc.try_add(&term).expect("orders match");
        }
        Some(acc.scale(&c0_inv))
    }

    /// Square root of a series with order-0 coefficient equal to one,
    /// via the binomial expansion of `(1 + u)^{1/2}`.
    ///
    /// Panics if `c_0 != 1`; callers normalize first.
    pub fn theta_sqrt(&self) -> Self {
        let one = self.coeffs[0].one_like();
        assert!(
            self.coeffs[0].add(&one.neg()).is_zero(),
            "square root requires unit constant term"
        );
        let d = self.order();
        let u = self
            .clone()
            .try_sub(&Self::one(d, &one))
            .expect("orders match");
        // Binomial coefficients C(1/2, n): 1, 1/2, -1/8, 1/16, -5/128, ...
        let mut binom = GaussianRational::one();
        let mut acc = Self::one(d, &one);
        let mut upow = Self::one(d, &one);
        for n in 1..=d {
            upow = upow.try_mul(&u).expect("orders match");
            binom = binom
                .mul(&GaussianRational::ratio(1, 2).sub(&GaussianRational::from_int(n as i128 - 1)))
                .mul(&GaussianRational::ratio(1, n as i128));
            acc = acc
                .try_add(&upow.scale_rat(&binom))
                .expect("orders match");
        }
        acc
    }

    fn check_order(&self, rhs: &Self) -> Result<(), OrderMismatch> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            })
        }
    }
}

impl ThetaSeries<GaussianRational> {
    /// Embeds rational series coefficients into any ring with rational
    /// scaling.
    pub fn embed<D: Scalar>(&self, one: &D) -> ThetaSeries<D> {
        self.map(|c| one.one_like().scale_rat(c))
    }
}

impl<C: Scalar> Scalar for ThetaSeries<C> {
    fn is_zero(&self) -> bool {
        ThetaSeries::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.order(), &self.coeffs[0])
    }

    fn one_like(&self) -> Self {
        Self::one(self.order(), &self.coeffs[0])
    }

    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("series order mismatch")
    }

    fn neg(&self) -> Self {
        ThetaSeries::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("series order mismatch")
    }

    fn inv(&self) -> Option<Self> {
        self.theta_inverse()
    }

    fn scale_int(&self, n: i128) -> Self {
        ThetaSeries::scale_int(self, n)
    }

    fn scale_rat(&self, c: &GaussianRational) -> Self {
        ThetaSeries::scale_rat(self, c)
    }
}
