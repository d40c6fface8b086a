//! Canonical plain-text rendering.
//!
//! One deterministic grammar shared by every report surface:
//!
//! - sums join with ` + ` / ` - `, a leading negative prints as `-term`,
//!   the empty sum prints as `0`;
//! - a term is `coeff*factor*factor*...` with a unit coefficient omitted,
//!   non-integer rationals parenthesised (`(1/3)*theta^2`), and `i` the
//!   imaginary unit (`(1/2)*i*theta*x1*d1`);
//! - powers print as `name^e` (`q^-2` for Laurent exponents);
//! - variables: `theta`, `q`, `alpha`, `k1..k3`, `hbar`, `m`, `omega`,
//!   flat coordinates `x1..x3` and derivatives `d1..d3`, algebra
//!   generators `X1..X3` and `D1..D3`.
//!
//! Terms are listed by total degree, ties broken so that earlier variables
//! lead (`x1^2` before `x1*x2` before `x2^2`), theta powers ascending and
//! outermost. Laurent polynomials in `q` print highest power first.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::aq::AqElement;
use crate::laurent::LaurentQ;
use crate::poly::{CoordPoly, ParamPoly, N_PARAMS, PARAM_NAMES};
use crate::rational::GaussianRational;
use crate::realize::{OpSeries, RationalOp};
use crate::series::ThetaSeries;
use crate::weyl::DiffOpMonomial;

/// Parameter emission order inside a product: `hbar`, `m`, `omega`,
/// `alpha`, then the wave numbers (term *ordering* still uses the raw
/// exponent arrays).
const PARAM_EMIT: [usize; N_PARAMS] = [3, 4, 5, 6, 0, 1, 2];

fn upower(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(String::from(name)),
        _ => Some(format!("{name}^{e}")),
    }
}

fn ipower(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(String::from(name)),
        _ => Some(format!("{name}^{e}")),
    }
}

/// Graded sort key: total degree first, then earlier variables lead.
fn graded_key<const N: usize>(e: &[u32; N]) -> (u32, [u32; N]) {
    let mut r = *e;
    r.reverse();
    (e.iter().sum(), r)
}

fn op_key(m: &DiffOpMonomial) -> (u32, [u32; 3], [u32; 3]) {
    let (dx, rx) = graded_key(&m.x);
    let (dd, rd) = graded_key(&m.d);
    (dx + dd, rx, rd)
}

/// Joins sign-tagged term bodies into a sum.
pub fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

/// One product term: sign tag plus `coeff*factors` body.
fn term(c: &GaussianRational, factors: &[String]) -> (bool, String) {
    let (neg, mag) = c.sign_split();
    if factors.is_empty() {
        return (neg, mag.display_standalone());
    }
    let mut parts = Vec::new();
    if let Some(f) = GaussianRational::display_product_factor(&mag) {
        parts.push(f);
    }
    parts.extend(factors.iter().cloned());
    (neg, parts.join("*"))
}

fn param_factors(e: &[u32; N_PARAMS], out: &mut Vec<String>) {
    for idx in PARAM_EMIT {
        out.extend(upower(PARAM_NAMES[idx], e[idx]));
    }
}

fn indexed_factors(prefix: &str, e: &[u32; 3], out: &mut Vec<String>) {
    for (j, &exp) in e.iter().enumerate() {
        out.extend(upower(&format!("{prefix}{}", j + 1), exp));
    }
}

fn theta_factor(t: usize, out: &mut Vec<String>) {
    out.extend(upower("theta", t as u32));
}

/// Coordinate monomial on its own: `x1*x3^2`, or `1` when trivial.
pub fn coord_monomial_string(e: &[u32; 3]) -> String {
    let mut fs = Vec::new();
    indexed_factors("x", e, &mut fs);
    if fs.is_empty() {
        String::from("1")
    } else {
        fs.join("*")
    }
}

/// Parameter monomial on its own: `hbar*k1^2`, or `1` when trivial.
pub fn param_monomial_string(e: &[u32; N_PARAMS]) -> String {
    let mut fs = Vec::new();
    param_factors(e, &mut fs);
    if fs.is_empty() {
        String::from("1")
    } else {
        fs.join("*")
    }
}

/// Flat operator monomial on its own: `x1*d1^2`, or `1` when trivial.
pub fn op_monomial_string(m: &DiffOpMonomial) -> String {
    let mut fs = Vec::new();
    indexed_factors("x", &m.x, &mut fs);
    indexed_factors("d", &m.d, &mut fs);
    if fs.is_empty() {
        String::from("1")
    } else {
        fs.join("*")
    }
}

/// Polynomial in the symbolic parameters.
pub fn param_poly_string(p: &ParamPoly) -> String {
    let mut ts: Vec<_> = p.terms().collect();
    ts.sort_by_key(|(e, _)| graded_key(e));
    let rendered: Vec<_> = ts
        .iter()
        .map(|(e, c)| {
            let mut fs = Vec::new();
            param_factors(e, &mut fs);
            term(c, &fs)
        })
        .collect();
    join_terms(&rendered)
}

/// Coordinate polynomial over the parameters, fully expanded.
pub fn coord_poly_string(p: &CoordPoly<ParamPoly>) -> String {
    let mut flat: Vec<([u32; 3], [u32; N_PARAMS], GaussianRational)> = Vec::new();
    for (ce, inner) in p.terms() {
        for (pe, c) in inner.terms() {
            flat.push((*ce, *pe, c.clone()));
        }
    }
    flat.sort_by_key(|(ce, pe, _)| (graded_key(ce), graded_key(pe)));
    let rendered: Vec<_> = flat
        .iter()
        .map(|(ce, pe, c)| {
            let mut fs = Vec::new();
            param_factors(pe, &mut fs);
            indexed_factors("x", ce, &mut fs);
            term(c, &fs)
        })
        .collect();
    join_terms(&rendered)
}

/// One amplitude term in canonical order: theta power, coordinate
/// exponents, parameter exponents, coefficient.
pub type AmplitudeTerm = (usize, [u32; 3], [u32; N_PARAMS], GaussianRational);

/// Nonzero amplitude terms in the canonical display order.
pub fn flatten_amplitude(a: &CoordPoly<ThetaSeries<ParamPoly>>) -> Vec<AmplitudeTerm> {
    let mut flat: Vec<AmplitudeTerm> = Vec::new();
    for (ce, series) in a.terms() {
        for (t, inner) in series.coeffs().iter().enumerate() {
            for (pe, c) in inner.terms() {
                flat.push((t, *ce, *pe, c.clone()));
            }
        }
    }
    flat.sort_by_key(|(t, ce, pe, _)| (*t, graded_key(ce), graded_key(pe)));
    flat
}

/// Coordinate polynomial with theta-series coefficients, theta ascending.
pub fn amplitude_string(a: &CoordPoly<ThetaSeries<ParamPoly>>) -> String {
    let rendered: Vec<_> = flatten_amplitude(a)
        .iter()
        .map(|(t, ce, pe, c)| {
            let mut fs = Vec::new();
            theta_factor(*t, &mut fs);
            param_factors(pe, &mut fs);
            indexed_factors("x", ce, &mut fs);
            term(c, &fs)
        })
        .collect();
    join_terms(&rendered)
}

/// Flat operator with exact coefficients.
pub fn diff_op_string(op: &RationalOp) -> String {
    let mut ts: Vec<_> = op.terms().collect();
    ts.sort_by_key(|(m, _)| op_key(m));
    let rendered: Vec<_> = ts
        .iter()
        .map(|(m, c)| {
            let mut fs = Vec::new();
            indexed_factors("x", &m.x, &mut fs);
            indexed_factors("d", &m.d, &mut fs);
            term(c, &fs)
        })
        .collect();
    join_terms(&rendered)
}

/// One operator-series term in canonical order.
pub type OpSeriesTerm = (usize, DiffOpMonomial, GaussianRational);

/// Nonzero operator-series terms in the canonical display order.
pub fn flatten_op_series(s: &OpSeries) -> Vec<OpSeriesTerm> {
    let mut flat: Vec<OpSeriesTerm> = Vec::new();
    for (t, op) in s.coeffs().iter().enumerate() {
        for (m, c) in op.terms() {
            flat.push((t, *m, c.clone()));
        }
    }
    flat.sort_by_key(|(t, m, _)| (*t, op_key(m)));
    flat
}

/// Operator-valued theta series, theta ascending and outermost.
pub fn op_series_string(s: &OpSeries) -> String {
    let rendered: Vec<_> = flatten_op_series(s)
        .iter()
        .map(|(t, m, c)| {
            let mut fs = Vec::new();
            theta_factor(*t, &mut fs);
            indexed_factors("x", &m.x, &mut fs);
            indexed_factors("d", &m.d, &mut fs);
            term(c, &fs)
        })
        .collect();
    join_terms(&rendered)
}

/// Scalar theta series.
pub fn scalar_series_string(s: &ThetaSeries<GaussianRational>) -> String {
    let rendered: Vec<_> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, c)| {
            let mut fs = Vec::new();
            theta_factor(t, &mut fs);
            term(c, &fs)
        })
        .collect();
    join_terms(&rendered)
}

fn laurent_term_body(
    key: &(i64, i64),
    c: &GaussianRational,
) -> (bool, String) {
    let mut fs = Vec::new();
    fs.extend(ipower("q", key.0));
    fs.extend(ipower("alpha", key.1));
    term(c, &fs)
}

/// Laurent polynomial in `q` and `alpha`, highest `q` power first.
pub fn laurent_string(l: &LaurentQ) -> String {
    let mut ts: Vec<_> = l.terms().collect();
    ts.reverse();
    let rendered: Vec<_> = ts
        .iter()
        .map(|(key, c)| laurent_term_body(key, c))
        .collect();
    join_terms(&rendered)
}

/// Laurent coefficient in product position: `None` for a unit, an
/// unbracketed product for a single term, a parenthesised sum otherwise.
/// The sign tag carries a single term's sign.
pub fn laurent_factor(l: &LaurentQ) -> (bool, Option<String>) {
    let mut ts = l.terms();
    let first = ts.next();
    let rest = ts.next().is_some();
    match (first, rest) {
        (None, _) => (false, Some(String::from("0"))),
        (Some((key, c)), false) => {
            let (neg, body) = laurent_term_body(key, c);
            if *key == (0, 0) && c.sign_split().1.is_one() {
                (neg, None)
            } else {
                (neg, Some(body))
            }
        }
        _ => (false, Some(format!("({})", laurent_string(l)))),
    }
}

/// Element of the abstract algebra in normal form.
pub fn aq_element_string(e: &AqElement) -> String {
    let mut ts: Vec<_> = e.terms().collect();
    ts.sort_by_key(|(m, _)| op_key(m));
    let rendered: Vec<_> = ts
        .iter()
        .map(|(m, c)| {
            let mut fs = Vec::new();
            indexed_factors("X", &m.x, &mut fs);
            indexed_factors("D", &m.d, &mut fs);
            let (neg, coeff) = laurent_factor(c);
            let mut parts = Vec::new();
            parts.extend(coeff);
            parts.extend(fs);
            if parts.is_empty() {
                (neg, String::from("1"))
            } else {
                (neg, parts.join("*"))
            }
        })
        .collect();
    join_terms(&rendered)
}
