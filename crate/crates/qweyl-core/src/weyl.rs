//! Normal-ordered polynomial differential operators in three coordinates.
//!
//! A [`DiffOpMonomial`] is `x1^a1 x2^a2 x3^a3 d1^b1 d2^b2 d3^b3` with every
//! coordinate factor to the left of every derivative (normal order). A
//! [`DiffOp`] is a finite sum of such monomials with nonzero coefficients,
//! so equality of maps is equality of operators.
//!
//! Composition uses the closed form
//!
//! ```text
//! (x^a d^b)(x^a' d^b') = sum_j prod_c C(b_c, j_c) C(a'_c, j_c) j_c! *
//!                        x^(a + a' - j) d^(b + b' - j)
//! ```
//!
//! which is what iterating the single commutation `d x = x d + 1` produces;
//! the unit tests pin that agreement. Number operators `M_j = x_j d_j`
//! convert to and from normal order through Stirling numbers.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::poly::MultiPoly;
use crate::rational::GaussianRational;
use crate::scalar::{ContextFreeOne, Scalar};

/// Normal-ordered monomial `x^a d^b` over the three coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiffOpMonomial {
    pub x: [u32; 3],
    pub d: [u32; 3],
}

impl DiffOpMonomial {
    pub const IDENTITY: DiffOpMonomial = DiffOpMonomial { x: [0; 3], d: [0; 3] };

    pub fn total_degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.d.iter().sum::<u32>()
    }

    /// True if each coordinate carries equally many `x` and `d` factors
    /// (the operator preserves every monomial degree).
    pub fn is_diagonal(&self) -> bool {
        self.x == self.d
    }
}

impl Ord for DiffOpMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded lexicographic: lower total degree first, then x, then d.
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for DiffOpMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for DiffOpMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total_degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.x.iter().enumerate() {
            for _ in 0..e.min(1) {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "x{}^{}", j + 1, e)?;
                first = false;
            }
        }
        for (j, &e) in self.d.iter().enumerate() {
            for _ in 0..e.min(1) {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "d{}^{}", j + 1, e)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Finite sum of normal-ordered monomials with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct DiffOp<C: Scalar> {
    terms: BTreeMap<DiffOpMonomial, C>,
}

impl<C: Scalar> DiffOp<C> {
    pub fn zero() -> Self {
        DiffOp { terms: BTreeMap::new() }
    }

    pub fn monomial(m: DiffOpMonomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffOp { terms }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(DiffOpMonomial::IDENTITY, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffOpMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &DiffOpMonomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: DiffOpMonomial, c: &C) {
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
        DiffOp {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, t) in self.terms() {
            out.add_term(*m, &t.mul(c));
        }
        out
    }

    pub fn scale_int(&self, n: i128) -> Self {
        if n == 0 {
            return Self::zero();
        }
        DiffOp {
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale_int(n))).collect(),
        }
    }

    pub fn scale_rat(&self, r: &GaussianRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        DiffOp {
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale_rat(r))).collect(),
        }
    }

    /// Operator composition (`self` applied after `rhs`), renormalized to
    /// normal order via the closed product formula.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                compose_monomials(ma, mb, &ca.mul(cb), &mut out);
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> DiffOp<D> {
        let mut out = DiffOp::zero();
        for (m, c) in self.terms() {
            out.add_term(*m, &f(c));
        }
        out
    }

    /// Applies the operator to a polynomial in the coordinates.
    pub fn apply_poly(&self, p: &MultiPoly<C, 3>) -> MultiPoly<C, 3> {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            for (exps, pc) in p.terms() {
                let mut coeff = 1i128;
                let mut ok = true;
                let mut new_exps = [0u32; 3];
                for j in 0..3 {
                    if exps[j] < m.d[j] {
                        ok = false;
                        break;
                    }
                    coeff = coeff
                        .checked_mul(falling_factorial_i128(exps[j], m.d[j]))
                        .expect("derivative factor overflow");
                    new_exps[j] = exps[j] - m.d[j] + m.x[j];
                }
                if !ok || coeff == 0 {
                    continue;
                }
                out.add_term(new_exps, &pc.mul(c).scale_int(coeff));
            }
        }
        out
    }

    /// Largest total degree among the monomials, or `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// True if every monomial preserves coordinate degrees.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|m| m.is_diagonal())
    }
}

impl<C: ContextFreeOne> DiffOp<C> {
    pub fn identity() -> Self {
        Self::constant(C::one())
    }

    /// Multiplication by the coordinate `x_j` (1-based `j`).
    pub fn x_op(j: usize) -> Self {
        let mut m = DiffOpMonomial::IDENTITY;
        m.x[j - 1] = 1;
        Self::monomial(m, C::one())
    }

    /// The derivative `d_j` (1-based `j`).
    pub fn d_op(j: usize) -> Self {
        let mut m = DiffOpMonomial::IDENTITY;
        m.d[j - 1] = 1;
        Self::monomial(m, C::one())
    }

    /// The number operator `M_j = x_j d_j`.
    pub fn m_op(j: usize) -> Self {
        let mut m = DiffOpMonomial::IDENTITY;
        m.x[j - 1] = 1;
        m.d[j - 1] = 1;
        Self::monomial(m, C::one())
    }

    /// `(x_j d_j)^n` in normal order: `sum_k S(n, k) x_j^k d_j^k` with
    /// Stirling numbers of the second kind.
    pub fn power_of_m(j: usize, n: u32) -> Self {
        let s = stirling_second(n);
        let mut out = Self::zero();
        for (k, coeff) in s.iter().enumerate() {
            if *coeff == 0 {
                continue;
            }
            let mut m = DiffOpMonomial::IDENTITY;
            m.x[j - 1] = k as u32;
            m.d[j - 1] = k as u32;
            out.add_term(m, &C::one().scale_int(*coeff));
        }
        out
    }

    /// Normal-orders a polynomial in the three number operators
    /// `(M_1, M_2, M_3)`.
    pub fn from_m_poly(p: &MultiPoly<C, 3>) -> Self {
        let mut out = Self::zero();
        for (exps, c) in p.terms() {
            let mut term = Self::identity();
            for j in 0..3 {
                if exps[j] > 0 {
                    term = term.compose(&Self::power_of_m(j + 1, exps[j]));
                }
            }
            out = out.add(&term.scale(c));
        }
        out
    }

    /// Inverse of [`Self::from_m_poly`] for diagonal operators:
    /// `x^k d^k = M (M-1) ... (M-k+1) = sum_j s(k, j) M^j` with signed
    /// Stirling numbers of the first kind. Returns `None` when any
    /// monomial is off-diagonal.
    pub fn to_m_poly(&self) -> Option<MultiPoly<C, 3>> {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            if !m.is_diagonal() {
                return None;
            }
            // Expand the product over coordinates of falling factorials.
            let mut partial: Vec<([u32; 3], i128)> = vec![([0; 3], 1)];
            for j in 0..3 {
                if m.x[j] == 0 {
                    continue;
                }
                let s = stirling_first_signed(m.x[j]);
                let mut next = Vec::new();
                for (exps, f) in &partial {
                    for (p, coeff) in s.iter().enumerate() {
                        if *coeff == 0 {
                            continue;
                        }
                        let mut e = *exps;
                        e[j] = p as u32;
                        next.push((e, f.checked_mul(*coeff).expect("Stirling overflow")));
                    }
                }
                partial = next;
            }
            for (e, f) in partial {
                out.add_term(e, &c.scale_int(f));
            }
        }
        Some(out)
    }
}

impl<C: Scalar> fmt::Debug for DiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Operators over a context-free ring form a (noncommutative) coefficient
/// ring, so operator-valued series get product and inverse for free.
impl<C: ContextFreeOne> Scalar for DiffOp<C> {
    fn is_zero(&self) -> bool {
        DiffOp::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::identity()
    }

    fn add(&self, rhs: &Self) -> Self {
        DiffOp::add(self, rhs)
    }

    fn neg(&self) -> Self {
        DiffOp::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.compose(rhs)
    }

    fn inv(&self) -> Option<Self> {
        // Only scalar multiples of the identity are invertible here.
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().expect("nonempty");
        if *m != DiffOpMonomial::IDENTITY {
            return None;
        }
        c.inv().map(Self::constant)
    }

    fn scale_int(&self, n: i128) -> Self {
        DiffOp::scale_int(self, n)
    }

    fn scale_rat(&self, c: &GaussianRational) -> Self {
        DiffOp::scale_rat(self, c)
    }
}

impl<C: ContextFreeOne> ContextFreeOne for DiffOp<C> {
    fn one() -> Self {
        Self::identity()
    }
}

fn compose_monomials<C: Scalar>(
    a: &DiffOpMonomial,
    b: &DiffOpMonomial,
    c: &C,
    out: &mut DiffOp<C>,
) {
    // Contraction counts j_c range over 0..=min(b.d, a'.x) per coordinate.
    let max: [u32; 3] = [
        a.d[0].min(b.x[0]),
        a.d[1].min(b.x[1]),
        a.d[2].min(b.x[2]),
    ];
    let mut j = [0u32; 3];
    loop {
        let mut factor = 1u128;
        for cidx in 0..3 {
            factor = factor
                .checked_mul(contraction_factor(a.d[cidx], b.x[cidx], j[cidx]))
                .expect("contraction factor overflow");
        }
        let m = DiffOpMonomial {
            x: [
                a.x[0] + b.x[0] - j[0],
                a.x[1] + b.x[1] - j[1],
                a.x[2] + b.x[2] - j[2],
            ],
            d: [
                a.d[0] + b.d[0] - j[0],
                a.d[1] + b.d[1] - j[1],
                a.d[2] + b.d[2] - j[2],
            ],
        };
        let factor_i = i128::try_from(factor).expect("contraction factor overflow");
        out.add_term(m, &c.scale_int(factor_i));
        // Advance the multi-index j.
        let mut cidx = 0;
        loop {
            if cidx == 3 {
                return;
            }
            if j[cidx] < max[cidx] {
                j[cidx] += 1;
                break;
            }
            j[cidx] = 0;
            cidx += 1;
        }
    }
}

/// `C(b, j) * C(x, j) * j!` — the number of ways `j` derivatives contract
/// against `j` coordinate factors.
fn contraction_factor(b: u32, x: u32, j: u32) -> u128 {
    binomial_u128(b, j) * binomial_u128(x, j) * factorial_u128(j)
}

fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflow");
        acc /= (i + 1) as u128;
    }
    acc
}

fn factorial_u128(n: u32) -> u128 {
    let mut acc = 1u128;
    for i in 2..=n {
        acc = acc.checked_mul(i as u128).expect("factorial overflow");
    }
    acc
}

fn falling_factorial_i128(n: u32, k: u32) -> i128 {
    let mut acc = 1i128;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as i128)
            .expect("falling factorial overflow");
    }
    acc
}

/// Row `n` of the Stirling-second-kind triangle: `S(n, 0) ..= S(n, n)`.
fn stirling_second(n: u32) -> Vec<i128> {
    let mut row: Vec<i128> = vec![1];
    for _ in 0..n {
        let mut next = vec![0i128; row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            // S(n, k) = k * S(n-1, k) + S(n-1, k-1)
            next[k] = next[k]
                .checked_add(v.checked_mul(k as i128).expect("Stirling overflow"))
                .expect("Stirling overflow");
            next[k + 1] = next[k + 1].checked_add(*v).expect("Stirling overflow");
        }
        row = next;
    }
    row
}

/// Row `n` of the signed Stirling-first-kind triangle: coefficients of
/// `M (M-1) ... (M-n+1)` as a polynomial in `M`.
fn stirling_first_signed(n: u32) -> Vec<i128> {
    let mut row: Vec<i128> = vec![1];
    for m in 0..n {
        // multiply by (M - m)
        let mut next = vec![0i128; row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            next[k + 1] = next[k + 1].checked_add(*v).expect("Stirling overflow");
            next[k] = next[k]
                .checked_sub(v.checked_mul(m as i128).expect("Stirling overflow"))
                .expect("Stirling overflow");
        }
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = DiffOp<GaussianRational>;

    fn mono(x: [u32; 3], d: [u32; 3]) -> Op {
        Op::monomial(DiffOpMonomial { x, d }, GaussianRational::one())
    }

    /// Reference composition by repeated single-step rewriting
    /// `d_j x_j -> x_j d_j + 1` — a completely independent path to normal
    /// order, used to pin the closed-form product.
    fn compose_by_rewriting(a: &Op, b: &Op) -> Op {
        // Represent words over letters (coordinate, is_x) and push x's left.
        #[derive(Clone)]
        struct Word(Vec<(usize, bool)>, GaussianRational);
        let mut queue: Vec<Word> = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut letters = Vec::new();
                for j in 0..3 {
                    for _ in 0..ma.x[j] {
                        letters.push((j, true));
                    }
                }
                for j in 0..3 {
                    for _ in 0..ma.d[j] {
                        letters.push((j, false));
                    }
                }
                for j in 0..3 {
                    for _ in 0..mb.x[j] {
                        letters.push((j, true));
                    }
                }
                for j in 0..3 {
                    for _ in 0..mb.d[j] {
                        letters.push((j, false));
                    }
                }
                queue.push(Word(letters, ca.mul(cb)));
            }
        }
        let mut out = Op::zero();
        while let Some(Word(letters, coeff)) = queue.pop() {
            // Find a d immediately left of an x.
            let pos = letters
                .windows(2)
                .position(|w| !w[0].1 && w[1].1);
            match pos {
                None => {
                    let mut m = DiffOpMonomial::IDENTITY;
                    for (j, is_x) in &letters {
                        if *is_x {
                            m.x[*j] += 1;
                        } else {
                            m.d[*j] += 1;
                        }
                    }
                    out.add_term(m, &coeff);
                }
                Some(p) => {
                    let (dj, xj) = (letters[p].0, letters[p + 1].0);
                    // Swap (always allowed; different coordinates commute).
                    let mut swapped = letters.clone();
                    swapped.swap(p, p + 1);
                    queue.push(Word(swapped, coeff.clone()));
                    if dj == xj {
                        // Plus the contraction term.
                        let mut contracted = letters.clone();
                        contracted.drain(p..p + 2);
                        queue.push(Word(contracted, coeff));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn d_squared_times_x_squared() {
        let d2 = mono([0; 3], [2, 0, 0]);
        let x2 = mono([2, 0, 0], [0; 3]);
        let got = d2.compose(&x2);
        let mut expect = mono([2, 0, 0], [2, 0, 0]);
        expect = expect.add(&mono([1, 0, 0], [1, 0, 0]).scale_int(4));
        expect = expect.add(&Op::identity().scale_int(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn number_operator_square() {
        let m1 = Op::m_op(1);
        let got = m1.compose(&m1);
        let expect = mono([2, 0, 0], [2, 0, 0]).add(&mono([1, 0, 0], [1, 0, 0]));
        assert_eq!(got, expect);
        assert_eq!(Op::power_of_m(1, 2), expect);
    }

    #[test]
    fn power_of_m_cubed() {
        // (x d)^3 = x^3 d^3 + 3 x^2 d^2 + x d
        let expect = mono([3, 0, 0], [3, 0, 0])
            .add(&mono([2, 0, 0], [2, 0, 0]).scale_int(3))
            .add(&mono([1, 0, 0], [1, 0, 0]));
        assert_eq!(Op::power_of_m(1, 3), expect);
        let m1 = Op::m_op(1);
        assert_eq!(m1.compose(&m1).compose(&m1), expect);
    }

    #[test]
    fn closed_form_matches_single_step_rewriting() {
        let cases = [
            (mono([1, 2, 0], [2, 0, 1]), mono([2, 1, 0], [0, 1, 1])),
            (mono([0, 0, 0], [3, 0, 0]), mono([3, 0, 0], [0, 0, 0])),
            (mono([1, 0, 2], [1, 1, 2]), mono([2, 1, 2], [1, 0, 0])),
        ];
        for (a, b) in cases {
            assert_eq!(a.compose(&b), compose_by_rewriting(&a, &b));
            assert_eq!(b.compose(&a), compose_by_rewriting(&b, &a));
        }
    }

    #[test]
    fn canonical_commutator() {
        // [d1, x1] = 1, [d1, x2] = 0
        let d1 = Op::d_op(1);
        assert_eq!(d1.commutator(&Op::x_op(1)), Op::identity());
        assert!(d1.commutator(&Op::x_op(2)).is_zero());
    }

    #[test]
    fn apply_to_polynomial() {
        // (x1 d1^2) applied to x1^3 = 6 x1^2
        let op = mono([1, 0, 0], [2, 0, 0]);
        let p = MultiPoly::monomial([3, 0, 0], GaussianRational::one());
        let got = op.apply_poly(&p);
        assert_eq!(
            got,
            MultiPoly::monomial([2, 0, 0], GaussianRational::from_int(6))
        );
        // d1 kills constants
        assert!(Op::d_op(1)
            .apply_poly(&MultiPoly::constant(GaussianRational::one()))
            .is_zero());
    }

    #[test]
    fn m_poly_round_trip() {
        // M1^2 M2 + 3 M3 -> normal order -> back
        let mut p = MultiPoly::<GaussianRational, 3>::zero();
        p.add_term([2, 1, 0], &GaussianRational::one());
        p.add_term([0, 0, 1], &GaussianRational::from_int(3));
        let op = Op::from_m_poly(&p);
        assert!(op.is_diagonal());
        assert_eq!(op.to_m_poly().unwrap(), p);
        // Spot-check one piece: M1^2 = x1^2 d1^2 + x1 d1.
        let m2 = Op::from_m_poly(&MultiPoly::monomial([2, 0, 0], GaussianRational::one()));
        assert_eq!(
            m2,
            mono([2, 0, 0], [2, 0, 0]).add(&mono([1, 0, 0], [1, 0, 0]))
        );
    }

    #[test]
    fn diagonal_eigenvalues_via_apply() {
        // M_j acts on x^p as p_j; (x d)^3 on x1^4 gives 64 x1^4.
        let op = Op::power_of_m(1, 3);
        let p = MultiPoly::monomial([4, 0, 0], GaussianRational::one());
        assert_eq!(
            op.apply_poly(&p),
            MultiPoly::monomial([4, 0, 0], GaussianRational::from_int(64))
        );
    }
}
