//! LaTeX rendering of the symbolic report values. Variable names follow
//! standard math notation (`\theta`, `\hbar`, `k_{1}`, `x_{1}`,
//! `\partial_{1}`) so the output can be diffed against typeset displays by
//! eye.

use qweyl_core::freeparticle::Amplitude;
use qweyl_core::poly::N_PARAMS;
use qweyl_core::rational::GaussianRational;
use qweyl_core::realize::OpSeries;
use qweyl_core::text::{flatten_amplitude, flatten_op_series};

const PARAM_LATEX: [&str; N_PARAMS] = [
    "k_{1}", "k_{2}", "k_{3}", "\\hbar", "m", "\\omega", "\\alpha",
];

/// Parameter emission order: `\hbar` first, wave numbers last, matching the
/// plain-text grammar.
const PARAM_EMIT: [usize; N_PARAMS] = [3, 4, 5, 6, 0, 1, 2];

fn power(name: &str, e: u32, out: &mut Vec<String>) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{{{e}}}")),
    }
}

fn theta(t: usize, out: &mut Vec<String>) {
    power("\\theta", t as u32, out);
}

fn params(e: &[u32; N_PARAMS], out: &mut Vec<String>) {
    for idx in PARAM_EMIT {
        power(PARAM_LATEX[idx], e[idx], out);
    }
}

fn coords(e: &[u32; 3], out: &mut Vec<String>) {
    for (j, &exp) in e.iter().enumerate() {
        power(&format!("x_{{{}}}", j + 1), exp, out);
    }
}

fn derivatives(e: &[u32; 3], out: &mut Vec<String>) {
    for (j, &exp) in e.iter().enumerate() {
        power(&format!("\\partial_{{{}}}", j + 1), exp, out);
    }
}

fn join(terms: &[(bool, String)]) -> String {
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

fn term(c: &GaussianRational, factors: Vec<String>) -> (bool, String) {
    let (neg, mag) = c.sign_split();
    if factors.is_empty() {
        let body = GaussianRational::latex_product_factor(&mag)
            .unwrap_or_else(|| String::from("1"));
        return (neg, body);
    }
    let mut parts = Vec::new();
    if let Some(f) = GaussianRational::latex_product_factor(&mag) {
        parts.push(f);
    }
    parts.extend(factors);
    (neg, parts.join(" "))
}

/// Operator series as a display-math expression.
pub fn op_series(s: &OpSeries) -> String {
    let rendered: Vec<_> = flatten_op_series(s)
        .iter()
        .map(|(t, m, c)| {
            let mut fs = Vec::new();
            theta(*t, &mut fs);
            coords(&m.x, &mut fs);
            derivatives(&m.d, &mut fs);
            term(c, fs)
        })
        .collect();
    join(&rendered)
}

/// Amplitude as a display-math expression.
pub fn amplitude(a: &Amplitude) -> String {
    let rendered: Vec<_> = flatten_amplitude(a)
        .iter()
        .map(|(t, ce, pe, c)| {
            let mut fs = Vec::new();
            theta(*t, &mut fs);
            params(pe, &mut fs);
            coords(ce, &mut fs);
            term(c, fs)
        })
        .collect();
    join(&rendered)
}

/// A set of labelled expressions as an align* block.
pub fn align_block(lines: &[(String, String)]) -> String {
    let mut out = String::from("\\begin{align*}\n");
    for (i, (label, expr)) in lines.iter().enumerate() {
        out.push_str(&format!(
            "{label} &= {expr}{}\n",
            if i + 1 < lines.len() { " \\\\" } else { "" }
        ));
    }
    out.push_str("\\end{align*}\n");
    out
}

/// A plain label/status table for check-style commands.
pub fn status_table(rows: &[(String, String)]) -> String {
    let mut out = String::from("\\begin{tabular}{ll}\n");
    for (label, status) in rows {
        out.push_str(&format!("{label} & {status} \\\\\n"));
    }
    out.push_str("\\end{tabular}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qweyl_core::realize::beta_series;

    #[test]
    fn beta_expansion_latex() {
        assert_eq!(
            op_series(&beta_series(1, 2)),
            "1 + \\frac{1}{2}i \\theta x_{1} \\partial_{1} - \\frac{3}{8} \\theta^{2} x_{1} \\partial_{1} - \\frac{5}{24} \\theta^{2} x_{1}^{2} \\partial_{1}^{2}"
        );
    }

    #[test]
    fn amplitude_latex_uses_hbar() {
        let a = qweyl_core::freeparticle::gauge_potential(3, 1);
        assert_eq!(
            amplitude(&a),
            "\\frac{1}{2} \\theta \\hbar k_{3}^{2} x_{3}"
        );
    }
}
