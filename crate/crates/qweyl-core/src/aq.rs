//! The abstract deformed algebra on generators `X1..X3, d1..d3` over exact
//! `q`-Laurent coefficients, normal-ordered by term rewriting.
//!
//! The defining relations, oriented left to right, form the rewrite system
//!
//! ```text
//! X_j X_i -> q^-1 X_i X_j                          (j > i)
//! d_j d_i -> q    d_i d_j                          (j > i)
//! d_i X_j -> q    X_j d_i                          (i != j)
//! d_i X_i -> 1 + q^2 X_i d_i + (q^2 - 1) sum_{k>i} X_k d_k
//! ```
//!
//! whose normal forms are the PBW monomials `X1^a1 X2^a2 X3^a3 d1^b1 d2^b2
//! d3^b3`. Rewriting terminates: each step strictly decreases the measure
//! `(derivative-before-coordinate inversions, within-block inversions)` in
//! lexicographic order, which the rewriter also asserts in debug builds.
//! Confluence — the same normal form from any reduction strategy — is not
//! assumed; it is exercised by tests that reduce with leftmost and rightmost
//! strategies and compare.
//!
//! Setting `q = 1` collapses every relation to the classical Weyl algebra,
//! giving an exact cross-check against flat differential operators.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::laurent::LaurentQ;
use crate::rational::GaussianRational;
use crate::realize::{q_scalar_series, realized_dx, realized_x, OpSeries, RationalOp};
use crate::series::ThetaSeries;
use crate::weyl::{DiffOp, DiffOpMonomial};

/// One abstract generator (1-based coordinate index).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AqGen {
    /// Deformed coordinate `X_j`.
    X(usize),
    /// Deformed derivative `d_j`.
    D(usize),
}

/// A product of generators, written left to right.
pub type Word = Vec<AqGen>;

/// Normal-form exponent record — structurally the same data as a flat
/// operator monomial, and reused for the `q = 1` specialization.
pub type PBWMonomial = DiffOpMonomial;

/// Reduction strategy: which redex to contract first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// An element of the abstract algebra in PBW normal form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AqElement {
    terms: BTreeMap<PBWMonomial, LaurentQ>,
}

impl AqElement {
    pub fn zero() -> Self {
        AqElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(PBWMonomial::IDENTITY, LaurentQ::one())
    }

    pub fn monomial(m: PBWMonomial, c: LaurentQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AqElement { terms }
    }

    pub fn generator(g: AqGen) -> Self {
        let mut m = PBWMonomial::IDENTITY;
        match g {
            AqGen::X(j) => m.x[j - 1] = 1,
            AqGen::D(j) => m.d[j - 1] = 1,
        }
        Self::monomial(m, LaurentQ::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Option<&LaurentQ> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: &LaurentQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        AqElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, t) in self.terms() {
            out.add_term(*m, &t.mul(c));
        }
        out
    }

    /// Product in the algebra: concatenate the PBW words and renormalize.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                let mut w = word_of_monomial(ma);
                w.extend(word_of_monomial(mb));
                let nf = normal_form_with(&w, Strategy::Leftmost);
                for (m, c) in nf.terms() {
                    out.add_term(*m, &ca.mul(cb).mul(c));
                }
            }
        }
        out
    }

    /// Exact specialization `q = 1, alpha = 1` onto flat differential
    /// operators (`X_j -> x_j`, `d_j -> d_j`).
    pub fn classical(&self) -> DiffOp<GaussianRational> {
        let mut out = DiffOp::zero();
        for (m, c) in self.terms() {
            out.add_term(*m, &c.at_q_one());
        }
        out
    }

    /// Image under the oscillator realization, as an operator series
    /// truncated at `order`. Coefficients must be free of `alpha`.
    pub fn realize_series(&self, order: usize) -> OpSeries {
        let id = RationalOp::identity();
        let mut acc = ThetaSeries::zero(order, &id);
        for (m, c) in self.terms() {
            let mut prod = ThetaSeries::constant(id.clone(), order);
            for g in word_of_monomial(m) {
                let factor = match g {
                    AqGen::X(j) => realized_x(j, order),
                    AqGen::D(j) => realized_dx(j, order),
                };
                prod = prod.try_mul(&factor).expect("orders match");
            }
            let mut scalar = ThetaSeries::zero(order, &GaussianRational::zero());
            for ((qe, ae), r) in c.terms() {
                assert_eq!(*ae, 0, "realization is defined for alpha-free coefficients");
                scalar = scalar
                    .try_add(&q_scalar_series(*qe, order).scale(r))
                    .expect("orders match");
            }
            acc = acc
                .try_add(&scalar.embed(&id).try_mul(&prod).expect("orders match"))
                .expect("orders match");
        }
        acc
    }
}

/// The letters of a PBW monomial: coordinates ascending, then derivatives
/// ascending.
pub fn word_of_monomial(m: &PBWMonomial) -> Word {
    let mut w = Vec::new();
    for j in 0..3 {
        for _ in 0..m.x[j] {
            w.push(AqGen::X(j + 1));
        }
    }
    for j in 0..3 {
        for _ in 0..m.d[j] {
            w.push(AqGen::D(j + 1));
        }
    }
    w
}

/// Termination measure: lexicographic pair of inversion counts.
fn measure(w: &[AqGen]) -> (usize, usize) {
    let mut dx = 0;
    let mut block = 0;
    for p in 0..w.len() {
        for r in (p + 1)..w.len() {
            match (w[p], w[r]) {
                (AqGen::D(_), AqGen::X(_)) => dx += 1,
                (AqGen::X(a), AqGen::X(b)) if a > b => block += 1,
                (AqGen::D(a), AqGen::D(b)) if a > b => block += 1,
                _ => {}
            }
        }
    }
    (dx, block)
}

fn is_redex(a: AqGen, b: AqGen) -> bool {
    match (a, b) {
        (AqGen::D(_), AqGen::X(_)) => true,
        (AqGen::X(i), AqGen::X(j)) => i > j,
        (AqGen::D(i), AqGen::D(j)) => i > j,
        _ => false,
    }
}

fn find_redex(w: &[AqGen], strategy: Strategy) -> Option<usize> {
    let positions = 0..w.len().saturating_sub(1);
    match strategy {
        Strategy::Leftmost => positions.into_iter().find(|&p| is_redex(w[p], w[p + 1])),
        Strategy::Rightmost => positions.into_iter().rev().find(|&p| is_redex(w[p], w[p + 1])),
    }
}

/// The one-step contractions of the redex at `pos`: a list of
/// `(coefficient, replacement word)` whose sum equals the original word.
fn rewrite_at(w: &[AqGen], pos: usize) -> Vec<(LaurentQ, Word)> {
    let swap = |g1: AqGen, g2: AqGen| -> Word {
        let mut nw = w.to_vec();
        nw[pos] = g1;
        nw[pos + 1] = g2;
        nw
    };
    match (w[pos], w[pos + 1]) {
        (AqGen::X(j), AqGen::X(i)) if j > i => {
            vec![(LaurentQ::q_power(-1), swap(AqGen::X(i), AqGen::X(j)))]
        }
        (AqGen::D(j), AqGen::D(i)) if j > i => {
            vec![(LaurentQ::q_power(1), swap(AqGen::D(i), AqGen::D(j)))]
        }
        (AqGen::D(i), AqGen::X(j)) if i != j => {
            vec![(LaurentQ::q_power(1), swap(AqGen::X(j), AqGen::D(i)))]
        }
        (AqGen::D(i), AqGen::X(same)) => {
            debug_assert_eq!(i, same);
            let mut shorter = w.to_vec();
            shorter.drain(pos..pos + 2);
            let mut out = vec![
                (LaurentQ::one(), shorter.clone()),
                (LaurentQ::q_power(2), swap(AqGen::X(i), AqGen::D(i))),
            ];
            let q2m1 = LaurentQ::q_power(2).sub(&LaurentQ::one());
            for k in (i + 1)..=3 {
                out.push((q2m1.clone(), swap(AqGen::X(k), AqGen::D(k))));
            }
            out
        }
        _ => panic!("rewrite_at called on a non-redex"),
    }
}

/// Fully normal-orders a word with the given strategy.
pub fn normal_form_with(word: &[AqGen], strategy: Strategy) -> AqElement {
    let mut acc = AqElement::zero();
    let mut stack: Vec<(LaurentQ, Word)> = vec![(LaurentQ::one(), word.to_vec())];
    while let Some((c, w)) = stack.pop() {
        match find_redex(&w, strategy) {
            None => {
                let mut m = PBWMonomial::IDENTITY;
                for g in &w {
                    match g {
                        AqGen::X(j) => m.x[j - 1] += 1,
                        AqGen::D(j) => m.d[j - 1] += 1,
                    }
                }
                acc.add_term(m, &c);
            }
            Some(pos) => {
                let before = measure(&w);
                for (rc, rw) in rewrite_at(&w, pos) {
                    debug_assert!(measure(&rw) < before, "measure must decrease");
                    stack.push((c.mul(&rc), rw));
                }
            }
        }
    }
    acc
}

/// Normal form under the canonical (leftmost) strategy.
pub fn normal_form(word: &[AqGen]) -> AqElement {
    normal_form_with(word, Strategy::Leftmost)
}

/// All six generators, for enumeration in tests and the CLI.
pub const GENERATORS: [AqGen; 6] = [
    AqGen::X(1),
    AqGen::X(2),
    AqGen::X(3),
    AqGen::D(1),
    AqGen::D(2),
    AqGen::D(3),
];
