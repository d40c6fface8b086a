//! Laurent polynomials in the deformation parameter `q` and the scale `alpha`.
//!
//! This is the exact coefficient ring for the abstract algebra and the
//! symmetry checks: every structure constant there is a Gaussian-rational
//! combination of integer powers of `q` and `alpha`. Keys are `(q exponent,
//! alpha exponent)` pairs; the map never stores a zero coefficient.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::numeric::Complex64;
use crate::rational::GaussianRational;
use crate::scalar::{ContextFreeOne, Scalar};

/// Exact element `sum c * q^a * alpha^b` with `a, b` integers.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentQ {
    terms: BTreeMap<(i64, i64), GaussianRational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        Self::from_rational(GaussianRational::one())
    }

    pub fn from_rational(c: GaussianRational) -> Self {
        Self::term(0, 0, c)
    }

    pub fn from_int(n: i128) -> Self {
        Self::from_rational(GaussianRational::from_int(n))
    }

    /// `c * q^qe * alpha^ae`.
    pub fn term(qe: i64, ae: i64, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((qe, ae), c);
        }
        LaurentQ { terms }
    }

    pub fn q_power(n: i64) -> Self {
        Self::term(n, 0, GaussianRational::one())
    }

    pub fn alpha_power(n: i64) -> Self {
        Self::term(0, n, GaussianRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, key: (i64, i64), c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentQ {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((qa, aa), ca) in self.terms() {
            for ((qb, ab), cb) in rhs.terms() {
                out.add_term((qa + qb, aa + ab), &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale_rat(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, t) in self.terms() {
            out.add_term(*k, &t.mul(c));
        }
        out
    }

    pub fn scale_int(&self, n: i128) -> Self {
        self.scale_rat(&GaussianRational::from_int(n))
    }

    /// Inverse of a single-term element; `None` otherwise (the ring has no
    /// other units).
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((qe, ae), c) = self.terms.iter().next().expect("nonempty");
        c.inv().map(|ci| Self::term(-qe, -ae, ci))
    }

    /// Exact specialization `q -> 1, alpha -> 1`: the classical limit.
    pub fn at_q_one(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (_, c) in self.terms() {
            acc = acc.add(c);
        }
        acc
    }

    /// Numeric evaluation at given complex values of `q` and `alpha`.
    pub fn eval(&self, q: Complex64, alpha: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((qe, ae), c) in self.terms() {
            acc += c.to_complex() * q.powi(*qe as i32) * alpha.powi(*ae as i32);
        }
        acc
    }

    /// The exponent range of `q` across all terms, or `None` for zero.
    pub fn q_degree_range(&self) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for ((qe, _), _) in self.terms() {
            range = Some(match range {
                None => (*qe, *qe),
                Some((lo, hi)) => (lo.min(*qe), hi.max(*qe)),
            });
        }
        range
    }

    /// The alpha-degrees present, ascending.
    pub fn alpha_degrees(&self) -> Vec<i64> {
        let mut degs: Vec<i64> = self.terms.keys().map(|(_, ae)| *ae).collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    /// Exact quotient `self / rhs`, or `None` when the division leaves a
    /// remainder (the quotient would be an infinite Laurent series).
    ///
    /// Leading-term elimination in lexicographic `(q, alpha)` exponent
    /// order; each step strictly lowers the largest key, and a step cap
    /// covers the non-exact case, where keys can descend forever.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (lead_key, lead_coeff) = rhs.terms.iter().next_back().expect("nonzero divisor");
        let lead_inv = lead_coeff.inv().expect("field coefficient");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let cap = 4 * (self.num_terms() + 1) * rhs.num_terms() + 16;
        for _ in 0..cap {
            let Some((rk, rc)) = rem.terms.iter().next_back() else {
                return Some(quot);
            };
            let qk = (rk.0 - lead_key.0, rk.1 - lead_key.1);
            let qc = rc.mul(&lead_inv);
            let qterm = Self::term(qk.0, qk.1, qc);
            quot = quot.add(&qterm);
            rem = rem.sub(&qterm.mul(rhs));
        }
        None
    }
}

impl Scalar for LaurentQ {
    fn is_zero(&self) -> bool {
        LaurentQ::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn add(&self, rhs: &Self) -> Self {
        LaurentQ::add(self, rhs)
    }

    fn neg(&self) -> Self {
        LaurentQ::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        LaurentQ::mul(self, rhs)
    }

    fn inv(&self) -> Option<Self> {
        LaurentQ::inv(self)
    }

    fn scale_int(&self, n: i128) -> Self {
        LaurentQ::scale_int(self, n)
    }

    fn scale_rat(&self, c: &GaussianRational) -> Self {
        LaurentQ::scale_rat(self, c)
    }
}

impl ContextFreeOne for LaurentQ {
    fn one() -> Self {
        LaurentQ::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_arithmetic() {
        let q = LaurentQ::q_power(1);
        let qi = LaurentQ::q_power(-1);
        assert_eq!(q.mul(&qi), LaurentQ::one());
        // (q - q^-1)(q + q^-1) = q^2 - q^-2
        let prod = q.sub(&qi).mul(&q.add(&qi));
        assert_eq!(prod, LaurentQ::q_power(2).sub(&LaurentQ::q_power(-2)));
    }

    #[test]
    fn inverse_only_for_monomials() {
        let q = LaurentQ::q_power(3).scale_int(2);
        assert_eq!(
            q.inv().unwrap(),
            LaurentQ::term(-3, 0, GaussianRational::ratio(1, 2))
        );
        assert!(LaurentQ::one().add(&LaurentQ::q_power(1)).inv().is_none());
        assert!(LaurentQ::zero().inv().is_none());
    }

    #[test]
    fn classical_specialization_sums_coefficients() {
        // q^2 - 1 vanishes at q = 1
        let x = LaurentQ::q_power(2).sub(&LaurentQ::one());
        assert!(x.at_q_one().is_zero());
        let y = LaurentQ::term(5, 1, GaussianRational::from_int(3));
        assert_eq!(y.at_q_one(), GaussianRational::from_int(3));
    }

    #[test]
    fn numeric_eval_matches_structure() {
        let x = LaurentQ::q_power(2).sub(&LaurentQ::alpha_power(1));
        let q = Complex64::new(0.0, 1.0); // q = i => q^2 = -1
        let a = Complex64::new(2.0, 0.0);
        let v = x.eval(q, a);
        assert!((v - Complex64::new(-3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn exact_division_recovers_factors() {
        // (q - q^-1)(q^2 + alpha) / (q - q^-1) == q^2 + alpha
        let a = LaurentQ::q_power(1).sub(&LaurentQ::q_power(-1));
        let b = LaurentQ::q_power(2).add(&LaurentQ::alpha_power(1));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        // 1 / (1 + q) is an infinite series: not exact.
        let one_plus_q = LaurentQ::one().add(&LaurentQ::q_power(1));
        assert_eq!(LaurentQ::one().div_exact(&one_plus_q), None);
        assert_eq!(LaurentQ::one().div_exact(&LaurentQ::zero()), None);
    }
}
