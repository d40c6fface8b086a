//! Oscillator realization of the deformed coordinate and derivative
//! generators, with three independent verification paths for the defining
//! relations.
//!
//! With `q = e^{i theta}` and number operators `M_j = x_j d_j`, the deformed
//! generators are realized as
//!
//! ```text
//! X_j  = x_j * beta_j * q^(M_{j+1} + ... + M_3)
//! dX_j = q^(M_{j+1} + ... + M_3) * beta_j * d_j
//! ```
//!
//! where `beta_j = f(M_j)` is the diagonal scaling with squared eigenvalue
//!
//! ```text
//! beta(n)^2 = (q^(2(n+1)) - 1) / ((q^2 - 1) (n + 1))
//!           = (1 + q^2 + ... + q^(2n)) / (n + 1),
//! ```
//!
//! a Laurent polynomial in `q` — so the action on monomials is exact.
//!
//! The defining relations are checked three ways:
//!
//! 1. symbolically, on the theta-truncated operator series (residual must be
//!    the zero series at every truncation order);
//! 2. exactly, on the monomial basis, with `beta(n)` kept as a formal symbol
//!    whose square reduces to the Laurent polynomial above;
//! 3. numerically, with `beta(n)` computed from the trigonometric form
//!    `e^(i n theta / 2) * sqrt(sin((n+1) theta) / ((n+1) sin theta))` —
//!    a floating-point path that shares no code with (1) or (2).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::laurent::LaurentQ;
use crate::numeric::{eval_series_rational, Complex64};
use crate::poly::MultiPoly;
use crate::rational::GaussianRational;
use crate::series::ThetaSeries;
use crate::weyl::DiffOp;

/// Polynomials in the three number operators `(M_1, M_2, M_3)`.
pub type MPoly3 = MultiPoly<GaussianRational, 3>;

/// A differential operator with exact rational coefficients.
pub type RationalOp = DiffOp<GaussianRational>;

/// An operator-valued truncated series in theta.
pub type OpSeries = ThetaSeries<RationalOp>;

fn rat(n: i128, d: i128) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

fn factorial_rat_inv(n: u32) -> GaussianRational {
    let mut acc = 1i128;
    for i in 2..=n as i128 {
        acc = acc.checked_mul(i).expect("factorial overflow");
    }
    rat(1, acc)
}

/// Exact squared eigenvalue `beta(n)^2 = (1 + q^2 + ... + q^(2n)) / (n+1)`.
pub fn beta_point_squared(n: u32) -> LaurentQ {
    let mut acc = LaurentQ::zero();
    for m in 0..=n {
        acc = acc.add(&LaurentQ::q_power(2 * m as i64));
    }
    acc.scale_rat(&rat(1, (n + 1) as i128))
}

/// Numeric `beta(n)` from the trigonometric form, valid while
/// `(n+1) |theta| < pi` (the eigenvalue stays in the principal branch).
pub fn beta_point(n: u32, theta: f64) -> Complex64 {
    if theta == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let np1 = (n + 1) as f64;
    assert!(
        np1 * theta.abs() < core::f64::consts::PI,
        "eigenvalue outside principal branch: n = {n}, theta = {theta}"
    );
    let ratio = Float::sin(np1 * theta) / (np1 * Float::sin(theta));
    debug_assert!(ratio > 0.0);
    let phase = Complex64::new(0.0, n as f64 * theta / 2.0).exp();
    phase * Float::sqrt(ratio)
}

/// The scalar series `e^(i k theta)` truncated at `order` — the image of
/// `q^k` for integer `k`.
pub fn q_scalar_series(k: i64, order: usize) -> ThetaSeries<GaussianRational> {
    let ik = GaussianRational::i().scale_int(k as i128);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pow = GaussianRational::one();
    for n in 0..=order {
        if n > 0 {
            pow = pow.mul(&ik);
        }
        coeffs.push(pow.mul(&factorial_rat_inv(n as u32)));
    }
    ThetaSeries::from_coeffs(coeffs)
}

/// `e^(s theta L)` for a polynomial `L` in the number operators, as a series
/// of `M`-polynomials: coefficient of `theta^n` is `s^n L^n / n!`.
fn exp_theta_m(l: &MPoly3, s: &GaussianRational, order: usize) -> ThetaSeries<MPoly3> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pow = MPoly3::constant(GaussianRational::one());
    let mut spow = GaussianRational::one();
    for n in 0..=order {
        if n > 0 {
            pow = pow.mul(l);
            spow = spow.mul(s);
        }
        coeffs.push(pow.scale_rat(&spow.mul(&factorial_rat_inv(n as u32))));
    }
    ThetaSeries::from_coeffs(coeffs)
}

/// The diagonal scaling `beta_j` as a series of polynomials in `M_j`.
///
/// Built from the defining ratio: with `q^2 = e^(2 i theta)`,
///
/// ```text
/// q^(2(M+1)) - 1 = 2 i theta (M+1) * N,   N = sum_n (2 i theta (M+1))^n / (n+1)!
/// q^2 - 1        = 2 i theta * E,         E = sum_n (2 i theta)^n / (n+1)!
/// ```
///
/// so `beta^2 = N / E` after the common factor `2 i theta (M+1)` cancels,
/// and `beta` is the square root of that series (constant term one).
pub fn beta_m_series(j: usize, order: usize) -> ThetaSeries<MPoly3> {
    let one = MPoly3::constant(GaussianRational::one());
    let m_plus_1 = MPoly3::variable(j - 1, GaussianRational::one()).add(&one);
    let two_i = GaussianRational::i().scale_int(2);

    // N: coefficient of theta^n is (2i)^n (M+1)^n / (n+1)!
    let mut n_coeffs = Vec::with_capacity(order + 1);
    // E: same with (M+1) replaced by 1.
    let mut e_coeffs = Vec::with_capacity(order + 1);
    let mut mp = one.clone();
    let mut cp = GaussianRational::one();
    for n in 0..=order {
        if n > 0 {
            mp = mp.mul(&m_plus_1);
            cp = cp.mul(&two_i);
        }
        let inv = factorial_rat_inv(n as u32 + 1);
        n_coeffs.push(mp.scale_rat(&cp.mul(&inv)));
        e_coeffs.push(one.scale_rat(&cp.mul(&inv)));
    }
    let num = ThetaSeries::from_coeffs(n_coeffs);
    let den = ThetaSeries::from_coeffs(e_coeffs);
    let beta_sq = num
        .try_mul(&den.theta_inverse().expect("unit constant term"))
        .expect("orders match");
    beta_sq.theta_sqrt()
}

fn m_poly_series_to_ops(s: &ThetaSeries<MPoly3>) -> OpSeries {
    s.map(RationalOp::from_m_poly)
}

/// Normal-ordered series for `beta_j`.
pub fn beta_series(j: usize, order: usize) -> OpSeries {
    m_poly_series_to_ops(&beta_m_series(j, order))
}

/// Normal-ordered series for `q^(w1 M_1 + w2 M_2 + w3 M_3)` with integer
/// weights.
pub fn qpower_series(weights: [i64; 3], order: usize) -> OpSeries {
    let mut l = MPoly3::zero();
    for (idx, w) in weights.iter().enumerate() {
        if *w != 0 {
            l = l.add(&MPoly3::variable(idx, GaussianRational::from_int(*w as i128)));
        }
    }
    m_poly_series_to_ops(&exp_theta_m(&l, &GaussianRational::i(), order))
}

/// Weights selecting the trailing number operators `M_k` for `k > j`.
pub fn tail_weights(j: usize) -> [i64; 3] {
    let mut w = [0i64; 3];
    for k in j..3 {
        w[k] = 1;
    }
    w
}

/// Realized deformed coordinate `X_j = x_j beta_j q^(M_{k>j})`.
pub fn realized_x(j: usize, order: usize) -> OpSeries {
    let x = ThetaSeries::constant(RationalOp::x_op(j), order);
    x.try_mul(&beta_series(j, order))
        .and_then(|s| s.try_mul(&qpower_series(tail_weights(j), order)))
        .expect("orders match")
}

/// Realized deformed derivative `dX_j = q^(M_{k>j}) beta_j d_j`.
pub fn realized_dx(j: usize, order: usize) -> OpSeries {
    let d = ThetaSeries::constant(RationalOp::d_op(j), order);
    qpower_series(tail_weights(j), order)
        .try_mul(&beta_series(j, order))
        .and_then(|s| s.try_mul(&d))
        .expect("orders match")
}

/// One deformed generator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    /// Deformed coordinate `X_j` (1-based).
    X(usize),
    /// Deformed derivative `dX_j` (1-based).
    Dx(usize),
}

impl Gen {
    pub fn series(self, order: usize) -> OpSeries {
        match self {
            Gen::X(j) => realized_x(j, order),
            Gen::Dx(j) => realized_dx(j, order),
        }
    }

    pub fn label(self) -> String {
        match self {
            Gen::X(j) => format!("X{j}"),
            Gen::Dx(j) => format!("d{j}"),
        }
    }
}

/// One additive term of a relation residual: `coeff * q^q_exp * word`,
/// where the word is an operator product written left to right.
#[derive(Clone, Debug)]
pub struct RelTerm {
    pub coeff: GaussianRational,
    pub q_exp: i64,
    pub word: Vec<Gen>,
}

/// A defining relation, stored as the combination that must vanish.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<RelTerm>,
}

fn term(coeff: GaussianRational, q_exp: i64, word: Vec<Gen>) -> RelTerm {
    RelTerm { coeff, q_exp, word }
}

/// All defining relations of the three-dimensional deformed algebra:
///
/// ```text
/// X_i X_j  = q X_j X_i          (i < j)
/// dX_i dX_j = q^-1 dX_j dX_i    (i < j)
/// dX_i X_j = q X_j dX_i         (i != j)
/// dX_i X_i = 1 + q^2 X_i dX_i + (q^2 - 1) sum_{j > i} X_j dX_j
/// ```
pub fn relations() -> Vec<Relation> {
    let one = GaussianRational::one();
    let neg = GaussianRational::from_int(-1);
    let mut rels = Vec::new();
    for i in 1..=3usize {
        for j in (i + 1)..=3 {
            rels.push(Relation {
                name: format!("X{i} X{j} - q X{j} X{i}"),
                terms: vec![
                    term(one.clone(), 0, vec![Gen::X(i), Gen::X(j)]),
                    term(neg.clone(), 1, vec![Gen::X(j), Gen::X(i)]),
                ],
            });
            rels.push(Relation {
                name: format!("d{i} d{j} - q^-1 d{j} d{i}"),
                terms: vec![
                    term(one.clone(), 0, vec![Gen::Dx(i), Gen::Dx(j)]),
                    term(neg.clone(), -1, vec![Gen::Dx(j), Gen::Dx(i)]),
                ],
            });
        }
    }
    for i in 1..=3usize {
        for j in 1..=3usize {
            if i == j {
                continue;
            }
            rels.push(Relation {
                name: format!("d{i} X{j} - q X{j} d{i}"),
                terms: vec![
                    term(one.clone(), 0, vec![Gen::Dx(i), Gen::X(j)]),
                    term(neg.clone(), 1, vec![Gen::X(j), Gen::Dx(i)]),
                ],
            });
        }
    }
    for i in 1..=3usize {
        let mut terms = vec![
            term(one.clone(), 0, vec![Gen::Dx(i), Gen::X(i)]),
            term(neg.clone(), 2, vec![Gen::X(i), Gen::Dx(i)]),
            term(neg.clone(), 0, vec![]),
        ];
        for j in (i + 1)..=3 {
            terms.push(term(neg.clone(), 2, vec![Gen::X(j), Gen::Dx(j)]));
            terms.push(term(one.clone(), 0, vec![Gen::X(j), Gen::Dx(j)]));
        }
        rels.push(Relation {
            name: format!(
                "d{i} X{i} - q^2 X{i} d{i} - 1 - (q^2 - 1) sum_(j>{i}) Xj dj"
            ),
            terms,
        });
    }
    rels
}

// ---------------------------------------------------------------------------
// Path 1: symbolic residual on theta-truncated operator series.
// ---------------------------------------------------------------------------

/// The relation residual as an operator series; the realization is correct
/// iff this is the zero series at every truncation order.
pub fn series_relation_residual(rel: &Relation, order: usize) -> OpSeries {
    let id = RationalOp::identity();
    let mut acc = ThetaSeries::zero(order, &id);
    for t in &rel.terms {
        let mut prod = ThetaSeries::constant(id.clone(), order);
        for g in &t.word {
            prod = prod.try_mul(&g.series(order)).expect("orders match");
        }
        let scalar = q_scalar_series(t.q_exp, order).embed(&id);
        let scaled = scalar
            .try_mul(&prod)
            .expect("orders match")
            .scale_rat(&t.coeff);
        acc = acc.try_add(&scaled).expect("orders match");
    }
    acc
}

/// Checks every relation symbolically at the given truncation order.
/// Returns the relations paired with their residuals (all zero on success).
pub fn verify_relations_series(order: usize) -> Vec<(Relation, OpSeries)> {
    relations()
        .into_iter()
        .map(|r| {
            let res = series_relation_residual(&r, order);
            (r, res)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Path 2: exact residual on the monomial basis, with formal beta symbols.
// ---------------------------------------------------------------------------

/// An exact coefficient `sum_k c_k * prod_n beta(n)` where each `beta(n)`
/// appears at most once per term — squares reduce to the Laurent polynomial
/// [`beta_point_squared`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BetaScalar {
    terms: BTreeMap<Vec<u32>, LaurentQ>,
}

impl BetaScalar {
    pub fn zero() -> Self {
        BetaScalar::default()
    }

    pub fn from_laurent(c: LaurentQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        BetaScalar { terms }
    }

    /// The formal symbol `beta(n)`.
    pub fn beta(n: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![n], LaurentQ::one());
        BetaScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Vec<u32>, c: &LaurentQ) {
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
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        BetaScalar {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                // Merge the beta multisets, reducing squares exactly.
                let mut merged: Vec<u32> = ka.iter().chain(kb.iter()).copied().collect();
                merged.sort_unstable();
                let mut reduced = Vec::new();
                let mut scalar = ca.mul(cb);
                let mut idx = 0;
                while idx < merged.len() {
                    if idx + 1 < merged.len() && merged[idx] == merged[idx + 1] {
                        scalar = scalar.mul(&beta_point_squared(merged[idx]));
                        idx += 2;
                    } else {
                        reduced.push(merged[idx]);
                        idx += 1;
                    }
                }
                out.add_term(reduced, &scalar);
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        self.mul(&Self::from_laurent(c.clone()))
    }

    /// Numeric evaluation with the trigonometric `beta` — used to cross-foot
    /// the two exact paths against floating point.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let q = Complex64::new(0.0, theta).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let mut v = c.eval(q, Complex64::new(1.0, 0.0));
            for n in k {
                v *= beta_point(*n, theta);
            }
            acc += v;
        }
        acc
    }
}

/// A vector in the monomial basis with [`BetaScalar`] coefficients.
pub type ExactVector = BTreeMap<[u32; 3], BetaScalar>;

fn exact_add_to(target: &mut ExactVector, p: [u32; 3], c: BetaScalar) {
    if c.is_zero() {
        return;
    }
    match target.get_mut(&p) {
        Some(existing) => {
            let sum = existing.add(&c);
            if sum.is_zero() {
                target.remove(&p);
            } else {
                *existing = sum;
            }
        }
        None => {
            target.insert(p, c);
        }
    }
}

fn sigma(p: &[u32; 3], j: usize) -> i64 {
    p[j..].iter().map(|&e| e as i64).sum()
}

/// Exact action of one generator on one monomial `x^p`.
///
/// * `X_j  x^p = beta(p_j) q^(sum_{k>j} p_k) x^(p + e_j)`
/// * `dX_j x^p = p_j beta(p_j - 1) q^(sum_{k>j} p_k) x^(p - e_j)`
pub fn exact_gen_action(g: Gen, p: [u32; 3]) -> Option<([u32; 3], BetaScalar)> {
    match g {
        Gen::X(j) => {
            let mut out = p;
            out[j - 1] += 1;
            let coeff = BetaScalar::beta(p[j - 1]).scale(&LaurentQ::q_power(sigma(&p, j)));
            Some((out, coeff))
        }
        Gen::Dx(j) => {
            if p[j - 1] == 0 {
                return None;
            }
            let mut out = p;
            out[j - 1] -= 1;
            let coeff = BetaScalar::beta(p[j - 1] - 1)
                .scale(&LaurentQ::q_power(sigma(&p, j)))
                .scale(&LaurentQ::from_int(p[j - 1] as i128));
            Some((out, coeff))
        }
    }
}

fn exact_apply_gen(g: Gen, v: &ExactVector) -> ExactVector {
    let mut out = ExactVector::new();
    for (p, c) in v {
        if let Some((np, gc)) = exact_gen_action(g, *p) {
            exact_add_to(&mut out, np, c.mul(&gc));
        }
    }
    out
}

/// Exact relation residual applied to the monomial `x^p`; the realization
/// satisfies the relation iff the result is empty for every `p`.
pub fn exact_relation_residual(rel: &Relation, p: [u32; 3]) -> ExactVector {
    let mut acc = ExactVector::new();
    for t in &rel.terms {
        let mut v = ExactVector::new();
        v.insert(p, BetaScalar::from_laurent(LaurentQ::one()));
        for g in t.word.iter().rev() {
            v = exact_apply_gen(*g, &v);
        }
        let scale = BetaScalar::from_laurent(
            LaurentQ::q_power(t.q_exp).scale_rat(&t.coeff),
        );
        for (np, c) in v {
            exact_add_to(&mut acc, np, c.mul(&scale));
        }
    }
    acc
}

/// Checks every relation exactly on all monomials of total degree at most
/// `max_degree`; returns the offending `(relation name, monomial)` pairs.
pub fn verify_relations_exact(max_degree: u32) -> Vec<(String, [u32; 3])> {
    let mut failures = Vec::new();
    for rel in relations() {
        for p in monomials_up_to(max_degree) {
            if !exact_relation_residual(&rel, p).is_empty() {
                failures.push((rel.name.clone(), p));
            }
        }
    }
    failures
}

/// All exponent triples with total degree at most `max_degree`.
pub fn monomials_up_to(max_degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in 0..=(max_degree - a) {
            for c in 0..=(max_degree - a - b) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Path 3: numeric residual with the trigonometric beta.
// ---------------------------------------------------------------------------

type NumVector = BTreeMap<[u32; 3], Complex64>;

fn numeric_gen_action(g: Gen, p: [u32; 3], theta: f64) -> Option<([u32; 3], Complex64)> {
    let qs = |s: i64| Complex64::new(0.0, theta * s as f64).exp();
    match g {
        Gen::X(j) => {
            let mut out = p;
            out[j - 1] += 1;
            Some((out, beta_point(p[j - 1], theta) * qs(sigma(&p, j))))
        }
        Gen::Dx(j) => {
            if p[j - 1] == 0 {
                return None;
            }
            let mut out = p;
            out[j - 1] -= 1;
            Some((
                out,
                beta_point(p[j - 1] - 1, theta) * qs(sigma(&p, j)) * p[j - 1] as f64,
            ))
        }
    }
}

/// Largest coefficient magnitude of the relation residual applied to `x^p`,
/// with all scalars evaluated in floating point at the given angle.
pub fn numeric_relation_residual(rel: &Relation, p: [u32; 3], theta: f64) -> f64 {
    let mut acc = NumVector::new();
    for t in &rel.terms {
        let mut v = NumVector::new();
        v.insert(p, Complex64::new(1.0, 0.0));
        for g in t.word.iter().rev() {
            let mut next = NumVector::new();
            for (mp, c) in &v {
                if let Some((np, gc)) = numeric_gen_action(*g, *mp, theta) {
                    *next.entry(np).or_insert(Complex64::new(0.0, 0.0)) += c * gc;
                }
            }
            v = next;
        }
        let scale = Complex64::new(0.0, theta * t.q_exp as f64).exp() * t.coeff.to_complex();
        for (np, c) in v {
            *acc.entry(np).or_insert(Complex64::new(0.0, 0.0)) += c * scale;
        }
    }
    acc.values().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Worst numeric residual over all relations and all monomials with total
/// degree at most `max_degree`.
pub fn verify_relations_numeric(max_degree: u32, theta: f64) -> f64 {
    let mut worst = 0.0f64;
    for rel in relations() {
        for p in monomials_up_to(max_degree) {
            worst = worst.max(numeric_relation_residual(&rel, p, theta));
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Convergence of the truncated series toward the exact action.
// ---------------------------------------------------------------------------

/// Applies a truncated generator series to the monomial `x^p` and returns
/// the scalar series multiplying the (single) resulting monomial, together
/// with that monomial's exponents. `None` if the generator annihilates it.
pub fn series_gen_coeff(
    g: Gen,
    p: [u32; 3],
    order: usize,
) -> Option<([u32; 3], ThetaSeries<GaussianRational>)> {
    let (target, _) = exact_gen_action(g, p)?;
    let series = g.series(order);
    let mono = MultiPoly::monomial(p, GaussianRational::one());
    let mut coeffs = Vec::with_capacity(order + 1);
    for op in series.coeffs() {
        let image = op.apply_poly(&mono);
        for (e, _) in image.terms() {
            debug_assert_eq!(e, &target, "generator action is not monomial");
        }
        coeffs.push(image.coeff(&target).cloned().unwrap_or_else(GaussianRational::zero));
    }
    Some((target, ThetaSeries::from_coeffs(coeffs)))
}

/// `(theta, |series - exact|)` samples for one generator on one monomial.
pub fn convergence_samples(
    g: Gen,
    p: [u32; 3],
    order: usize,
    thetas: &[f64],
) -> Vec<(f64, f64)> {
    let (_, series) = series_gen_coeff(g, p, order).expect("generator must act nontrivially");
    thetas
        .iter()
        .map(|&theta| {
            let approx = eval_series_rational(&series, theta);
            let exact = match g {
                Gen::X(j) => {
                    beta_point(p[j - 1], theta)
                        * Complex64::new(0.0, theta * sigma(&p, j) as f64).exp()
                }
                Gen::Dx(j) => {
                    beta_point(p[j - 1] - 1, theta)
                        * Complex64::new(0.0, theta * sigma(&p, j) as f64).exp()
                        * p[j - 1] as f64
                }
            };
            (theta, (approx - exact).norm())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::log_log_slope;
    use crate::weyl::DiffOpMonomial;

    fn mono_coeff(op: &RationalOp, x: [u32; 3], d: [u32; 3]) -> GaussianRational {
        op.coeff(&DiffOpMonomial { x, d })
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    #[test]
    fn beta_squared_points() {
        assert_eq!(beta_point_squared(0), LaurentQ::one());
        // beta(1)^2 = (1 + q^2) / 2
        let expect = LaurentQ::one().add(&LaurentQ::q_power(2)).scale_rat(&rat(1, 2));
        assert_eq!(beta_point_squared(1), expect);
    }

    #[test]
    fn beta_series_order_two() {
        let s = beta_series(1, 2);
        // 1 + (1/2) i theta x1 d1 - theta^2 ((3/8) x1 d1 + (5/24) x1^2 d1^2)
        assert_eq!(s.coeff(0), &RationalOp::identity());
        assert_eq!(
            mono_coeff(s.coeff(1), [1, 0, 0], [1, 0, 0]),
            GaussianRational::i().mul(&rat(1, 2))
        );
        assert_eq!(mono_coeff(s.coeff(2), [1, 0, 0], [1, 0, 0]), rat(-3, 8));
        assert_eq!(mono_coeff(s.coeff(2), [2, 0, 0], [2, 0, 0]), rat(-5, 24));
        assert_eq!(s.coeff(1).num_terms(), 1);
        assert_eq!(s.coeff(2).num_terms(), 2);
    }

    #[test]
    fn beta_series_order_three_term() {
        let s = beta_series(1, 3);
        // theta^3 coefficient: -i ((1/16) x^3 d^3 + (13/48) x^2 d^2 + (7/48) x d)
        let c3 = s.coeff(3);
        let neg_i = GaussianRational::i().neg();
        assert_eq!(
            mono_coeff(c3, [3, 0, 0], [3, 0, 0]),
            neg_i.mul(&rat(1, 16))
        );
        assert_eq!(
            mono_coeff(c3, [2, 0, 0], [2, 0, 0]),
            neg_i.mul(&rat(13, 48))
        );
        assert_eq!(
            mono_coeff(c3, [1, 0, 0], [1, 0, 0]),
            neg_i.mul(&rat(7, 48))
        );
        assert_eq!(c3.num_terms(), 3);
    }

    #[test]
    fn beta_eigenvalues_from_series() {
        // Diagonal action on x1^1 must reproduce the Taylor coefficients of
        // sqrt((1 + q^2)/2): 1 + i/2 theta - 3/8 theta^2 - 7/48 i theta^3.
        let (target, s) = series_gen_coeff(Gen::X(1), [0, 0, 0], 3).unwrap();
        assert_eq!(target, [1, 0, 0]);
        assert_eq!(s.coeff(0), &GaussianRational::one());
        // beta(0) = 1 exactly: X1 on the constant monomial picks up beta(0).
        assert!(s.coeff(1).is_zero());
        assert!(s.coeff(2).is_zero());
        assert!(s.coeff(3).is_zero());

        let (_, s1) = series_gen_coeff(Gen::X(1), [1, 0, 0], 3).unwrap();
        assert_eq!(s1.coeff(0), &GaussianRational::one());
        assert_eq!(s1.coeff(1), &GaussianRational::i().mul(&rat(1, 2)));
        assert_eq!(s1.coeff(2), &rat(-3, 8));
        assert_eq!(s1.coeff(3), &GaussianRational::i().mul(&rat(-7, 48)));

        let (_, s2) = series_gen_coeff(Gen::X(1), [2, 0, 0], 3).unwrap();
        assert_eq!(s2.coeff(1), &GaussianRational::i());
        assert_eq!(s2.coeff(2), &rat(-7, 6));
        assert_eq!(s2.coeff(3), &GaussianRational::i().mul(&rat(-5, 6)));
    }

    #[test]
    fn qpower_series_order_two() {
        let s = qpower_series([0, 1, 1], 2);
        // i theta (M2 + M3) at first order.
        assert_eq!(
            mono_coeff(s.coeff(1), [0, 1, 0], [0, 1, 0]),
            GaussianRational::i()
        );
        assert_eq!(
            mono_coeff(s.coeff(1), [0, 0, 1], [0, 0, 1]),
            GaussianRational::i()
        );
        // -(1/2)(M2 + M3)^2 at second order; cross term -(1) x2 x3 d2 d3.
        assert_eq!(
            mono_coeff(s.coeff(2), [0, 1, 1], [0, 1, 1]),
            GaussianRational::from_int(-1)
        );
        assert_eq!(mono_coeff(s.coeff(2), [0, 2, 0], [0, 2, 0]), rat(-1, 2));
        assert_eq!(mono_coeff(s.coeff(2), [0, 1, 0], [0, 1, 0]), rat(-1, 2));
    }

    #[test]
    fn relations_hold_symbolically_at_order_two() {
        for (rel, res) in verify_relations_series(2) {
            assert!(res.is_zero(), "nonzero residual for {}: {:?}", rel.name, res);
        }
    }

    #[test]
    fn relations_hold_exactly_on_low_degrees() {
        assert!(verify_relations_exact(3).is_empty());
    }

    #[test]
    fn relations_hold_numerically() {
        let worst = verify_relations_numeric(4, 0.3);
        assert!(worst < 1e-10, "numeric residual {worst}");
    }

    #[test]
    fn beta_scalar_square_reduction() {
        let b1 = BetaScalar::beta(1);
        let sq = b1.mul(&b1);
        assert_eq!(
            sq,
            BetaScalar::from_laurent(beta_point_squared(1))
        );
        // Exact vs numeric evaluation agree.
        let theta = 0.2;
        let diff = (sq.eval(theta) - beta_point(1, theta) * beta_point(1, theta)).norm();
        assert!(diff < 1e-12);
    }

    #[test]
    fn truncation_error_scales_at_order_plus_one() {
        let thetas = [1e-1, 1e-2, 1e-3];
        for order in [1usize, 2, 3] {
            let samples = convergence_samples(Gen::X(1), [2, 1, 0], order, &thetas);
            let slope = log_log_slope(&samples).unwrap();
            let expect = (order + 1) as f64;
            assert!(
                (slope - expect).abs() < 0.1,
                "order {order}: slope {slope}, expected about {expect}"
            );
        }
    }
}
