//! Exact-arithmetic kernel for the three-dimensional q-deformed Weyl algebra
//! and the effective gauge field it induces on a plane wave.
//!
//! Everything symbolic is computed over exact scalar rings (Gaussian
//! rationals, multivariate parameter polynomials, truncated power series in
//! the deformation angle `theta`, Laurent polynomials in `q`); floating point
//! appears only in the independent numeric oracles used to cross-check the
//! symbolic results.
//!
//! Module map:
//!
//! * [`rational`] — arbitrary-precision Gaussian rationals `a + b*i`.
//! * [`scalar`] — the coefficient-ring trait shared by all containers.
//! * [`poly`] — sparse multivariate polynomials over a fixed variable set.
//! * [`series`] — truncated power series in `theta` with explicit order.
//! * [`laurent`] — Laurent polynomials in `q` with an `alpha` scale.
//! * [`weyl`] — normal-ordered polynomial differential operators.
//! * [`realize`] — the oscillator realization of the deformed generators,
//!   its series expansions, the exact diagonal action, and relation checks.
//! * [`aq`] — the abstract algebra on generators `X1..X3, d1..d3` with PBW
//!   normal ordering by term rewriting.
//! * [`spq6`] — the rank-three symplectic R-matrix, its quadratic covariance
//!   identity for the generators, and mutation sensitivity checks.
//! * [`freeparticle`] — momentum action on a plane wave, the induced gauge
//!   potential, its curl, and the decomposition of the resulting field.
//! * [`text`] — canonical text serialization and parsing for every ring.
//! * [`numeric`] — complex floating-point evaluation and oracle helpers.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aq;
pub mod freeparticle;
pub mod laurent;
pub mod numeric;
pub mod poly;
pub mod rational;
pub mod realize;
pub mod scalar;
pub mod series;
pub mod spq6;
pub mod text;
pub mod weyl;

pub use laurent::LaurentQ;
pub use poly::{CoordPoly, MultiPoly, Param, ParamPoly};
pub use rational::GaussianRational;
pub use scalar::{ContextFreeOne, Scalar};
pub use series::ThetaSeries;
pub use weyl::{DiffOp, DiffOpMonomial};
