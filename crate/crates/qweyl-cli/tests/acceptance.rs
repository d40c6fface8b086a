//! The acceptance gate: ten numbered conformance checks, one test per
//! criterion, each printing a single `criterion NN: PASS/FAIL` line with the
//! measured evidence before asserting.
//!
//! Two criteria fail by design and the failures are kept honest rather than
//! masked:
//!
//! * criterion 01 requires the transcribed display's `-1/3 theta^2` constant
//!   in the beta expansion, which the normal-ordered expansion does not
//!   produce (the discrepancy is curated in `data/known_discrepancies.json`);
//! * criterion 07 requires the constant imaginary part of each field
//!   component to be `-1/2` times its first-order part, while the derivation
//!   yields `+1/2` times it.

use std::collections::BTreeMap;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use qweyl_core::aq::{normal_form, normal_form_with, AqElement, AqGen, Strategy as Redex};
use qweyl_core::freeparticle::{
    curl_two_path_error, decompose_component, divergence, magnetic_field,
    momentum_two_path_error, Amplitude,
};
use qweyl_core::laurent::LaurentQ;
use qweyl_core::numeric::ParamValues;
use qweyl_core::poly::{CoordPoly, ParamPoly};
use qweyl_core::rational::GaussianRational;
use qweyl_core::realize::{
    beta_series, relations, verify_relations_numeric, verify_relations_series, Gen, RationalOp,
    Relation,
};
use qweyl_core::text::{amplitude_string, flatten_op_series, param_poly_string};
use qweyl_core::weyl::DiffOpMonomial;

use qweyl_cli::commands::{self, DeriveStage};

const POINT: [f64; 3] = [0.3, -0.2, 0.4];
const WAVE: [f64; 3] = [1.1, 0.7, -0.5];
const HBAR: f64 = 1.3;

fn report(number: u32, pass: bool, detail: &str) {
    println!(
        "criterion {number:02}: {} -- {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn rat(n: i128, d: i128) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_01_beta_expansion_coefficient_table() {
    let start = Instant::now();
    let series = beta_series(1, 2);
    let elapsed = start.elapsed();

    let id = DiffOpMonomial::IDENTITY;
    let mut xd = id;
    xd.x[0] = 1;
    xd.d[0] = 1;
    let mut xxdd = id;
    xxdd.x[0] = 2;
    xxdd.d[0] = 2;
    // The required table, including the theta^2 constant of the transcribed
    // display.
    let required: BTreeMap<(usize, DiffOpMonomial), GaussianRational> = [
        ((0, id), rat(1, 1)),
        ((2, id), rat(-1, 3)),
        ((1, xd), GaussianRational::ratio_i(1, 2)),
        ((2, xd), rat(-3, 8)),
        ((2, xxdd), rat(-5, 24)),
    ]
    .into_iter()
    .collect();

    let engine: BTreeMap<(usize, DiffOpMonomial), GaussianRational> = flatten_op_series(&series)
        .into_iter()
        .map(|(t, m, c)| ((t, m), c))
        .collect();

    let mut differing = Vec::new();
    for key in required.keys().chain(engine.keys()) {
        let want = required.get(key).cloned().unwrap_or_else(GaussianRational::zero);
        let got = engine.get(key).cloned().unwrap_or_else(GaussianRational::zero);
        if want != got {
            differing.push(format!(
                "theta^{} slot: required {} vs engine {}",
                key.0,
                want.display_standalone(),
                got.display_standalone()
            ));
        }
    }
    differing.dedup();

    let fast = elapsed.as_secs_f64() < 1.0;
    let pass = differing.is_empty() && fast;
    let detail = if differing.is_empty() {
        format!("all five coefficients exact in {elapsed:.2?}")
    } else {
        format!(
            "{} (curated in data/known_discrepancies.json; the normal-ordered \
             expansion has no theta^2 constant); computed in {elapsed:.2?}",
            differing.join("; ")
        )
    };
    report(1, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

fn touches_only_upper_coordinates(rel: &Relation) -> bool {
    rel.terms.iter().all(|t| {
        t.word.iter().all(|g| match *g {
            Gen::X(j) | Gen::Dx(j) => j >= 2,
        })
    })
}

#[test]
fn criterion_02_relations_exact_in_two_and_three_coordinates() {
    let start = Instant::now();
    // The two-coordinate algebra embeds as the span of the last two
    // coordinates: its six relations never mention the first coordinate.
    let two_coord: Vec<String> = verify_relations_series(2)
        .into_iter()
        .filter(|(rel, _)| touches_only_upper_coordinates(rel))
        .filter(|(_, res)| !res.is_zero())
        .map(|(rel, _)| rel.name)
        .collect();
    let two_count = relations()
        .iter()
        .filter(|r| touches_only_upper_coordinates(r))
        .count();
    let three_coord: Vec<String> = verify_relations_series(3)
        .into_iter()
        .filter(|(_, res)| !res.is_zero())
        .map(|(rel, _)| rel.name)
        .collect();
    let elapsed = start.elapsed();

    let fast = elapsed.as_secs_f64() < 10.0;
    let pass = two_coord.is_empty() && three_coord.is_empty() && two_count == 6 && fast;
    let detail = format!(
        "{two_count} two-coordinate relations exact through theta^2, 15 \
         three-coordinate relations exact through theta^3 in {elapsed:.2?}{}",
        if two_coord.is_empty() && three_coord.is_empty() {
            String::new()
        } else {
            format!("; nonzero residuals: {:?} {:?}", two_coord, three_coord)
        }
    );
    report(2, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_03_numeric_relation_residuals() {
    let mut worst = 0.0f64;
    for theta in [0.3, 0.05] {
        worst = worst.max(verify_relations_numeric(5, theta));
    }
    let pass = worst < 1e-10;
    let detail = format!(
        "max residual {worst:.3e} over theta in {{0.3, 0.05}}, all monomials \
         of total degree <= 5 (tolerance 1e-10)"
    );
    report(3, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_04_truncation_error_slopes() {
    let outcome = commands::oracle_convergence(&[1, 2, 3], &[1e-1, 1e-2, 1e-3])
        .expect("valid configuration");
    let v: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
    let slopes = v["results"]["slopes"].as_array().unwrap();
    let count = slopes.len();
    let max_dev = slopes
        .iter()
        .map(|s| (s["slope"].as_f64().unwrap() - s["expected"].as_f64().unwrap()).abs())
        .fold(0.0f64, f64::max);
    let pass = outcome.pass && count == 18;
    let detail = format!(
        "{count} slope fits (six generators x orders 1..3) within {max_dev:.4} \
         of order+1 (tolerance 0.1)"
    );
    report(4, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_05_momentum_report_adjudicated_by_curated_file() {
    let outcome = commands::derive(DeriveStage::Momentum, 2);
    let v: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
    let comparisons = v["discrepancies"].as_array().unwrap();
    let mut counts = Vec::new();
    let mut undocumented = 0u64;
    for c in comparisons {
        counts.push(c["mismatches"].as_array().unwrap().len());
        undocumented += c["undocumented"].as_u64().unwrap();
    }
    let pass = outcome.pass && counts == vec![4, 4, 1] && undocumented == 0;
    let detail = format!(
        "component mismatch counts {counts:?}, every one listed in the curated \
         discrepancy file ({undocumented} undocumented)"
    );
    report(5, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_06_first_order_field_components() {
    let b = magnetic_field(1);
    let got: Vec<String> = b.iter().map(amplitude_string).collect();
    let want = [
        "-theta*hbar*k2*k3",
        "theta*hbar*k1*k3",
        "-theta*hbar*k1*k2",
    ];
    let pass = got == want;
    let detail = format!("B = ({}, {}, {})", got[0], got[1], got[2]);
    report(6, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_07_constant_imaginary_part_of_the_field() {
    let b = magnetic_field(2);
    let mut lines = Vec::new();
    let mut pass = true;
    for (i, component) in b.iter().enumerate() {
        let d = decompose_component(component, 2);
        let ok = d.actual_constant_imag == d.claimed_constant_imag;
        pass &= ok;
        lines.push(format!(
            "component {}: engine {} vs required {}",
            i + 1,
            param_poly_string(&d.actual_constant_imag),
            param_poly_string(&d.claimed_constant_imag)
        ));
    }
    let detail = format!(
        "required constant imaginary part is -1/2 x first order; the \
         derivation yields +1/2 x first order ({})",
        lines.join("; ")
    );
    report(7, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_08_comparison_report_with_numeric_validation() {
    let vals = ParamValues::with_wave(WAVE, HBAR);
    let momentum_err = (1..=3)
        .map(|j| momentum_two_path_error(j, 2, POINT, 0.05, &vals))
        .fold(0.0f64, f64::max);
    let curl_err = curl_two_path_error(2, POINT, 0.05, &vals, 0.25);

    let outcome = commands::derive(DeriveStage::Bfield, 2);
    let v: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
    let produced = !v["discrepancies"].as_array().unwrap().is_empty()
        && v["results"]["numeric_validation"]["pass"] == true;

    let pass = outcome.pass && produced && momentum_err < 1e-8 && curl_err < 1e-8;
    let detail = format!(
        "comparison report emitted; two-path momentum error {momentum_err:.3e} \
         and curl error {curl_err:.3e} at theta = 0.05 (tolerance 1e-8)"
    );
    report(8, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_09_symplectic_covariance_and_mutation_sensitivity() {
    let start = Instant::now();
    let outcome = commands::check_spq6(Some(12), 7, None);
    let elapsed = start.elapsed();
    let v: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
    let residuals = v["results"]["residuals"].as_array().unwrap().len();
    let all_zero = v["results"]["all_residuals_zero"] == true;
    let detected = v["results"]["self_test"]["detected"].as_u64().unwrap();
    let mutations = v["results"]["self_test"]["mutations"].as_u64().unwrap();

    let fast = elapsed.as_secs_f64() < 60.0;
    let pass = outcome.pass && residuals == 36 && all_zero && detected == mutations && fast;
    let detail = format!(
        "{residuals} covariance residuals exactly zero, {detected}/{mutations} \
         corrupted matrices detected, in {elapsed:.2?}"
    );
    report(9, pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------------------------
// Criterion 10: five randomized structural suites, 1000 cases each.

fn letters() -> impl Strategy<Value = AqGen> {
    (0usize..6).prop_map(|n| {
        if n < 3 {
            AqGen::X(n + 1)
        } else {
            AqGen::D(n - 2)
        }
    })
}

fn words(max_len: usize) -> impl Strategy<Value = Vec<AqGen>> {
    proptest::collection::vec(letters(), 0..=max_len)
}

fn rationals() -> impl Strategy<Value = GaussianRational> {
    (-4i128..=4, 1i128..=3, -4i128..=4, 1i128..=3).prop_map(|(a, b, c, d)| {
        GaussianRational::ratio(a, b).add(&GaussianRational::ratio_i(c, d))
    })
}

fn laurents() -> impl Strategy<Value = LaurentQ> {
    proptest::collection::vec(((-3i64..=3, -2i64..=2), rationals()), 0..=3).prop_map(|ts| {
        ts.into_iter().fold(LaurentQ::zero(), |acc, ((qe, ae), c)| {
            acc.add(&LaurentQ::term(qe, ae, c))
        })
    })
}

fn elements() -> impl Strategy<Value = AqElement> {
    proptest::collection::vec((words(4), laurents()), 0..=3).prop_map(|parts| {
        parts.into_iter().fold(AqElement::zero(), |acc, (w, c)| {
            acc.add(&normal_form(&w).scale(&c))
        })
    })
}

fn param_polys() -> impl Strategy<Value = ParamPoly> {
    proptest::collection::vec(((0u32..=2, 0u32..=2), rationals()), 0..=2).prop_map(|ts| {
        ts.into_iter().fold(ParamPoly::zero(), |acc, ((ek, eh), c)| {
            let mut exps = [0u32; 7];
            exps[0] = ek;
            exps[3] = eh;
            acc.add(&ParamPoly::monomial(exps, c))
        })
    })
}

fn amplitudes() -> impl Strategy<Value = Amplitude> {
    proptest::collection::vec(
        (
            proptest::array::uniform3(0u32..=2),
            proptest::collection::vec(param_polys(), 3),
        ),
        0..=3,
    )
    .prop_map(|ts| {
        ts.into_iter().fold(Amplitude::zero(), |acc, (exps, cs)| {
            acc.add(&CoordPoly::monomial(exps, qweyl_core::series::ThetaSeries::from_coeffs(cs)))
        })
    })
}

fn flat_letter(g: AqGen) -> RationalOp {
    match g {
        AqGen::X(j) => RationalOp::x_op(j),
        AqGen::D(j) => RationalOp::d_op(j),
    }
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        ..Config::default()
    })
}

#[test]
fn criterion_10_randomized_structural_suites() {
    let mut failures = Vec::new();

    if let Err(e) = runner().run(&(elements(), elements(), elements()), |(a, b, c)| {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&AqElement::one()), a.clone());
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(c.mul(&a.add(&b)), c.mul(&a).add(&c.mul(&b)));
        Ok(())
    }) {
        failures.push(format!("ring axioms: {e}"));
    }

    if let Err(e) = runner().run(&words(6), |w| {
        prop_assert_eq!(
            normal_form_with(&w, Redex::Leftmost),
            normal_form_with(&w, Redex::Rightmost)
        );
        Ok(())
    }) {
        failures.push(format!("rewrite confluence: {e}"));
    }

    if let Err(e) = runner().run(&(words(4), words(4)), |(w1, w2)| {
        let mut cat = w1.clone();
        cat.extend_from_slice(&w2);
        prop_assert_eq!(normal_form(&cat), normal_form(&w1).mul(&normal_form(&w2)));
        Ok(())
    }) {
        failures.push(format!("straightening homomorphism: {e}"));
    }

    if let Err(e) = runner().run(&(amplitudes(), amplitudes(), amplitudes()), |(a1, a2, a3)| {
        let b = [
            a3.diff(1).sub(&a2.diff(2)),
            a1.diff(2).sub(&a3.diff(0)),
            a2.diff(0).sub(&a1.diff(1)),
        ];
        prop_assert!(divergence(&b).is_zero());
        Ok(())
    }) {
        failures.push(format!("divergence-free curls: {e}"));
    }

    if let Err(e) = runner().run(&words(5), |w| {
        let flat = w
            .iter()
            .fold(RationalOp::identity(), |acc, &g| acc.compose(&flat_letter(g)));
        prop_assert_eq!(normal_form(&w).classical(), flat);
        Ok(())
    }) {
        failures.push(format!("flat limit vs composition: {e}"));
    }

    let pass = failures.is_empty();
    let detail = if pass {
        "five structural suites x 1000 random cases each".to_string()
    } else {
        failures.join("; ")
    };
    report(10, pass, &detail);
    assert!(pass, "{detail}");
}
