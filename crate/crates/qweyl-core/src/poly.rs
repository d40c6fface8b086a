//! Sparse multivariate polynomials over a fixed, finite variable set.
//!
//! [`MultiPoly<C, N>`] maps exponent vectors `[u32; N]` to nonzero
//! coefficients. Two instantiations are exported by name:
//!
//! * [`ParamPoly`] — polynomials in the seven physical parameters
//!   `{k1, k2, k3, hbar, m, omega, alpha}` over Gaussian rationals;
//! * [`CoordPoly<C>`] — polynomials in the three coordinates over an
//!   arbitrary coefficient ring (series-valued amplitudes, field
//!   components, operator application results).
//!
//! Invariant: the term map never stores a zero coefficient, so structural
//! equality is canonical-form equality.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::GaussianRational;
use crate::scalar::{ContextFreeOne, Scalar};

/// Number of physical parameters tracked by [`ParamPoly`].
pub const N_PARAMS: usize = 7;

/// The fixed parameter set, in canonical variable order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Param {
    K1,
    K2,
    K3,
    Hbar,
    Mass,
    Omega,
    Alpha,
}

impl Param {
    pub const ALL: [Param; N_PARAMS] = [
        Param::K1,
        Param::K2,
        Param::K3,
        Param::Hbar,
        Param::Mass,
        Param::Omega,
        Param::Alpha,
    ];

    pub fn index(self) -> usize {
        match self {
            Param::K1 => 0,
            Param::K2 => 1,
            Param::K3 => 2,
            Param::Hbar => 3,
            Param::Mass => 4,
            Param::Omega => 5,
            Param::Alpha => 6,
        }
    }

    pub fn name(self) -> &'static str {
        PARAM_NAMES[self.index()]
    }

    /// The wavevector component for coordinate `j` (1-based).
    pub fn k(j: usize) -> Param {
        match j {
            1 => Param::K1,
            2 => Param::K2,
            3 => Param::K3,
            _ => panic!("coordinate index out of range: {j}"),
        }
    }
}

pub const PARAM_NAMES: [&str; N_PARAMS] = ["k1", "k2", "k3", "hbar", "m", "omega", "alpha"];

/// Sparse polynomial in `N` variables with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C: Scalar, const N: usize> {
    terms: BTreeMap<[u32; N], C>,
}

impl<C: Scalar, const N: usize> MultiPoly<C, N> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    /// A single term `c * x^exps`; drops to zero if `c` is zero.
    pub fn monomial(exps: [u32; N], c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { terms }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; N], c)
    }

    /// The variable with index `idx` (0-based), with coefficient `one`.
    pub fn variable(idx: usize, one: C) -> Self {
        let mut exps = [0; N];
        exps[idx] = 1;
        Self::monomial(exps, one)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32; N]) -> Option<&C> {
        self.terms.get(exps)
    }

    /// The coefficient of the constant monomial, if present.
    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&[0; N])
    }

    /// True if the polynomial has no variable dependence.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add_term(&mut self, exps: [u32; N], c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                let mut e = [0u32; N];
                for k in 0..N {
                    e[k] = ea[k].checked_add(eb[k]).expect("exponent overflow");
                }
                out.add_term(e, &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, t) in self.terms() {
            out.add_term(*e, &t.mul(c));
        }
        out
    }

    pub fn scale_int(&self, n: i128) -> Self {
        if n == 0 {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.scale_int(n))).collect(),
        }
    }

    pub fn scale_rat(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, t)| (*e, t.scale_rat(c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self
    where
        C: Scalar,
    {
        let mut out = None;
        for _ in 0..n {
            out = Some(match out {
                None => self.clone(),
                Some(acc) => self.mul(&acc),
            });
        }
        match out {
            Some(p) => p,
            // x^0 needs a unit; derive it from any coefficient, or give the
            // canonical empty-product answer for the zero polynomial.
            None => match self.terms.values().next() {
                Some(c) => Self::constant(c.one_like()),
                None => Self::zero(),
            },
        }
    }

    /// Partial derivative with respect to variable `idx` (0-based).
    pub fn diff(&self, idx: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            if e[idx] == 0 {
                continue;
            }
            let mut d = *e;
            d[idx] -= 1;
            out.add_term(d, &c.scale_int(e[idx] as i128));
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D, N> {
        let mut out = MultiPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(*e, &f(c));
        }
        out
    }

    /// Total degree of the highest term, or `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl<C: Scalar, const N: usize> fmt::Debug for MultiPoly<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Polynomials in the seven physical parameters over Gaussian rationals.
pub type ParamPoly = MultiPoly<GaussianRational, N_PARAMS>;

/// Polynomials in the three spatial coordinates.
pub type CoordPoly<C> = MultiPoly<C, 3>;

impl ParamPoly {
    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn symbol(p: Param) -> Self {
        Self::variable(p.index(), GaussianRational::one())
    }

    pub fn rational(c: GaussianRational) -> Self {
        Self::constant(c)
    }

    /// True if every term carries at least `min` powers of `p`.
    pub fn divisible_by(&self, p: Param, min: u32) -> bool {
        self.terms.keys().all(|e| e[p.index()] >= min)
    }

    /// True if the parameter appears in any term.
    pub fn mentions(&self, p: Param) -> bool {
        self.terms.keys().any(|e| e[p.index()] > 0)
    }
}

/// Polynomials over a context-free ring are themselves a coefficient ring;
/// the units are the constant polynomials with invertible value.
impl<C: ContextFreeOne, const N: usize> Scalar for MultiPoly<C, N> {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::constant(C::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }

    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }

    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().expect("nonempty");
        if e.iter().any(|&x| x != 0) {
            return None;
        }
        c.inv().map(Self::constant)
    }

    fn scale_int(&self, n: i128) -> Self {
        MultiPoly::scale_int(self, n)
    }

    fn scale_rat(&self, c: &GaussianRational) -> Self {
        MultiPoly::scale_rat(self, c)
    }
}

impl<C: ContextFreeOne, const N: usize> ContextFreeOne for MultiPoly<C, N> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

/// Collects terms in deterministic (exponent-lexicographic) order; used by
/// the serializers.
pub fn sorted_terms<C: Scalar, const N: usize>(p: &MultiPoly<C, N>) -> Vec<([u32; N], C)> {
    p.terms().map(|(e, c)| (*e, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(j: usize) -> ParamPoly {
        ParamPoly::symbol(Param::k(j))
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        let p = k(1).add(&k(2));
        let q = k(1).sub(&k(2));
        let prod = p.mul(&q);
        // k1^2 - k2^2
        let mut expect = ParamPoly::zero();
        expect.add_term([2, 0, 0, 0, 0, 0, 0], &GaussianRational::one());
        expect.add_term([0, 2, 0, 0, 0, 0, 0], &GaussianRational::from_int(-1));
        assert_eq!(prod, expect);
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&p).num_terms(), 0);
    }

    #[test]
    fn units_are_nonzero_constants() {
        assert!(Scalar::inv(&k(1)).is_none());
        let two = ParamPoly::rational(GaussianRational::from_int(2));
        assert_eq!(
            Scalar::inv(&two).unwrap(),
            ParamPoly::rational(GaussianRational::ratio(1, 2))
        );
        assert!(Scalar::inv(&ParamPoly::zero()).is_none());
    }

    #[test]
    fn differentiation() {
        // d/dx (x^2 y) = 2 x y
        let x = CoordPoly::<GaussianRational>::variable(0, GaussianRational::one());
        let y = CoordPoly::<GaussianRational>::variable(1, GaussianRational::one());
        let p = x.mul(&x).mul(&y);
        assert_eq!(p.diff(0), x.mul(&y).scale_int(2));
        assert!(p.diff(2).is_zero());
    }
}
