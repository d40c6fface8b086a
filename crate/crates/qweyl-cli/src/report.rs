//! Report model shared by every command: one serializable value rendered as
//! JSON, plain text, or LaTeX. Identical configuration must produce
//! byte-identical JSON, so every container here is either a `Vec` in a
//! deterministic order or a `BTreeMap`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Top-level report. The field order is the JSON schema.
#[derive(Serialize)]
pub struct Report<R: Serialize> {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub results: R,
    pub discrepancies: Vec<EquationComparison>,
    pub pass: bool,
}

/// Three-way comparison of one displayed equation against the engine.
#[derive(Serialize, Clone, Debug)]
pub struct EquationComparison {
    pub equation: String,
    /// `match`, `mismatch`, or `not_comparable`.
    pub status: String,
    pub mismatches: Vec<TermMismatch>,
    /// Mismatches not covered by the curated discrepancy file.
    pub undocumented: usize,
}

impl EquationComparison {
    pub fn not_comparable(equation: &str) -> Self {
        EquationComparison {
            equation: equation.to_string(),
            status: "not_comparable".to_string(),
            mismatches: Vec::new(),
            undocumented: 0,
        }
    }
}

/// One differing coefficient slot, with both sides shown.
#[derive(Serialize, Clone, Debug)]
pub struct TermMismatch {
    pub theta_power: usize,
    pub monomial: String,
    pub parameters: String,
    pub reference: String,
    pub engine: String,
    pub documented: bool,
    pub note: String,
}

/// A fully rendered command outcome.
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub latex: String,
    pub pass: bool,
}

impl<R: Serialize> Report<R> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Text rendering of the comparison section, shared by all commands.
pub fn comparison_text(comparisons: &[EquationComparison]) -> String {
    let mut out = String::new();
    out.push_str("comparison with reference displays:\n");
    for c in comparisons {
        out.push_str(&format!("  {}: {}\n", c.equation, c.status));
        for m in &c.mismatches {
            out.push_str(&format!(
                "    theta^{} [{}] [{}]: reference {} vs engine {}{}\n",
                m.theta_power,
                m.monomial,
                m.parameters,
                m.reference,
                m.engine,
                if m.documented {
                    " (documented)"
                } else {
                    " (UNDOCUMENTED)"
                },
            ));
        }
    }
    out
}

/// True when every mismatch in every comparison is documented.
pub fn all_documented(comparisons: &[EquationComparison]) -> bool {
    comparisons.iter().all(|c| c.undocumented == 0)
}

/// Config echo helpers.
pub fn cfg_str(map: &mut BTreeMap<String, Value>, key: &str, v: &str) {
    map.insert(key.to_string(), Value::String(v.to_string()));
}

pub fn cfg_u64(map: &mut BTreeMap<String, Value>, key: &str, v: u64) {
    map.insert(key.to_string(), Value::from(v));
}

pub fn cfg_f64(map: &mut BTreeMap<String, Value>, key: &str, v: f64) {
    map.insert(key.to_string(), Value::from(v));
}

pub fn cfg_f64s(map: &mut BTreeMap<String, Value>, key: &str, vs: &[f64]) {
    map.insert(
        key.to_string(),
        Value::Array(vs.iter().map(|&v| Value::from(v)).collect()),
    );
}
