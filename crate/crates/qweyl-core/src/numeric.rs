//! Complex floating-point evaluation of the exact structures, plus small
//! numeric utilities (log-log slope fitting) used by the convergence oracles.

use alloc::vec::Vec;

use num_traits::Float;

use crate::poly::{CoordPoly, ParamPoly, N_PARAMS};
use crate::rational::GaussianRational;
use crate::scalar::{ContextFreeOne, Scalar};
use crate::series::ThetaSeries;

pub type Complex64 = num_complex::Complex<f64>;

/// Floating-point complex numbers as a coefficient ring for the numeric
/// oracle. Zero tests are exact (only true zeros are dropped from canonical
/// forms); tolerances belong to the comparison layer, not the arithmetic.
impl Scalar for Complex64 {
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }

    fn scale_int(&self, n: i128) -> Self {
        self * (n as f64)
    }

    fn scale_rat(&self, c: &GaussianRational) -> Self {
        self * c.to_complex()
    }
}

impl ContextFreeOne for Complex64 {
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
}

/// Real parameter values for `{k1, k2, k3, hbar, m, omega, alpha}` in the
/// canonical order of [`crate::poly::Param`].
#[derive(Clone, Copy, Debug)]
pub struct ParamValues(pub [f64; N_PARAMS]);

impl ParamValues {
    /// `k = (k1,k2,k3)`, `hbar`, and unit mass/frequency/scale.
    pub fn with_wave(k: [f64; 3], hbar: f64) -> Self {
        ParamValues([k[0], k[1], k[2], hbar, 1.0, 1.0, 1.0])
    }
}

pub fn eval_param_poly(p: &ParamPoly, vals: &ParamValues) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (exps, c) in p.terms() {
        let mut m = 1.0f64;
        for (e, v) in exps.iter().zip(vals.0.iter()) {
            m *= v.powi(*e as i32);
        }
        acc += c.to_complex() * m;
    }
    acc
}

pub fn eval_series_rational(s: &ThetaSeries<GaussianRational>, theta: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in s.coeffs().iter().rev() {
        acc = acc * theta + c.to_complex();
    }
    acc
}

pub fn eval_series_param(
    s: &ThetaSeries<ParamPoly>,
    theta: f64,
    vals: &ParamValues,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in s.coeffs().iter().rev() {
        acc = acc * theta + eval_param_poly(c, vals);
    }
    acc
}

/// Evaluates a coordinate polynomial with series coefficients at a spatial
/// point, a deformation angle, and numeric parameter values.
pub fn eval_coord_poly(
    p: &CoordPoly<ThetaSeries<ParamPoly>>,
    point: [f64; 3],
    theta: f64,
    vals: &ParamValues,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (exps, c) in p.terms() {
        let mut m = 1.0f64;
        for (e, v) in exps.iter().zip(point.iter()) {
            m *= v.powi(*e as i32);
        }
        acc += eval_series_param(c, theta, vals) * m;
    }
    acc
}

/// Least-squares slope of `log10(y)` against `log10(x)`.
///
/// Requires at least two samples with positive coordinates; returns `None`
/// otherwise (a zero error would make the logarithm meaningless, and a
/// single point cannot determine an order).
pub fn log_log_slope(samples: &[(f64, f64)]) -> Option<f64> {
    if samples.len() < 2 {
        return None;
    }
    let mut pts = Vec::with_capacity(samples.len());
    for &(x, y) in samples {
        if x <= 0.0 || y <= 0.0 {
            return None;
        }
        pts.push((Float::log10(x), Float::log10(y)));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}
