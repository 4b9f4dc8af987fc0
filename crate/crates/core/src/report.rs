//! The nonvanishing pipeline: each hypothesis is checked in order and recorded
//! with its certificate or witness. The first failing stage ends the run.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::branching::{BranchingOptions, PureWeightPair};
use crate::cohomology::{
    coh_poincare, coh_table_bruteforce_with, cuspidal_parameters, gl_sl_poincare, kunneth_assemble,
    lefschetz_infinity, lefschetz_local, sl_degree_window, steinberg_shift, theta_selfdual_check,
    verify_unique_character_with, BRUTEFORCE_MAX_N,
};
use crate::error::{Error, Result};
use crate::exterior::{wedge_u_all, CharacterMultiset, MAX_ROOTS_FOR_PAIRS};
use crate::galois::{group_elements, FieldDatum, DEFAULT_GROUP_CAP};
use crate::rational::{self, Rational};
use crate::weight::{
    base_change_factor_in, d_matches_half_w, is_algebraic, purity_check, strong_purity_check_in,
    Weight,
};

pub const REPORT_VERSION: &str = "cuspcoh-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRecord {
    pub stage: &'static str,
    pub status: Status,
    pub certificate: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<&'static str>,
    pub stages: Vec<StageRecord>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn stage(&self, name: &str) -> Option<&StageRecord> {
        self.stages.iter().find(|s| s.stage == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub group_cap: usize,
    pub branching: BranchingOptions,
    /// Ranks `r_v` of the finite places in `S`, for the Steinberg shift.
    pub steinberg_ranks: Vec<usize>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            group_cap: DEFAULT_GROUP_CAP,
            branching: BranchingOptions::default(),
            steinberg_ranks: Vec::new(),
        }
    }
}

struct Builder<'a> {
    datum: &'a FieldDatum,
    stages: Vec<StageRecord>,
    warnings: Vec<String>,
}

impl Builder<'_> {
    fn pass(&mut self, stage: &'static str, certificate: Value) {
        self.record(stage, Status::Pass, certificate);
    }

    fn record(&mut self, stage: &'static str, status: Status, certificate: Value) {
        self.stages.push(StageRecord {
            stage,
            status,
            certificate,
        });
    }

    fn fail(mut self, stage: &'static str, witness: Value) -> Report {
        self.stages.push(StageRecord {
            stage,
            status: Status::Fail,
            certificate: witness,
        });
        self.finish(Outcome::Fail, Some(stage))
    }

    fn finish(self, outcome: Outcome, failed_stage: Option<&'static str>) -> Report {
        Report {
            version: REPORT_VERSION,
            outcome,
            failed_stage,
            stages: self.stages,
            warnings: self.warnings,
        }
    }

    fn label(&self, i: usize) -> &str {
        self.datum.label(i)
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// One complex place: the conjugate pair of embeddings and its weight pair.
struct Place {
    eta: usize,
    eta_bar: usize,
    pair: PureWeightPair,
}

fn unique_character_entry(
    place: &Place,
    labels: (&str, &str),
    wedge_u: Option<&[CharacterMultiset]>,
    opts: &BranchingOptions,
) -> Result<(Status, Value)> {
    let Some(wu) = wedge_u else {
        return Ok((
            Status::Skipped,
            json!({"place": [labels.0, labels.1], "reason": "rank above the exterior-algebra enumeration cap"}),
        ));
    };
    match verify_unique_character_with(&place.pair, wu, opts) {
        Ok(rep) => {
            let mut cert = json!({"place": [labels.0, labels.1], "character": rep.character,
                "degree": rep.degree, "mult_in_u": rep.mult_in_u, "mult_in_chi_m": rep.mult_in_chi_m});
            if place.pair.n() <= BRUTEFORCE_MAX_N {
                let table = coh_table_bruteforce_with(&place.pair, wu, opts)?;
                let closed = coh_poincare(place.pair.n());
                if table != closed {
                    return Ok((
                        Status::Fail,
                        json!({"place": [labels.0, labels.1], "bruteforce_dimensions": table,
                            "closed_form": closed}),
                    ));
                }
                cert["bruteforce_dimensions"] = to_value(&table);
            }
            Ok((Status::Pass, cert))
        }
        Err(Error::ResourceCap { what, cap }) => Ok((
            Status::Skipped,
            json!({"place": [labels.0, labels.1], "reason": format!("{what} exceeds cap {cap}")}),
        )),
        Err(Error::Contract(msg)) => Ok((
            Status::Fail,
            json!({"place": [labels.0, labels.1], "mismatch": msg}),
        )),
        Err(e) => Err(e),
    }
}

/// Run the pipeline on `weight` over `datum`.
///
/// Input errors (a weight that does not fit the datum) and exceeded resource
/// caps are returned as `Err`; mathematical failures end up in the report.
pub fn nonvanishing_report(
    weight: &Weight,
    datum: &FieldDatum,
    opts: &ReportOptions,
) -> Result<Report> {
    if weight.len() != datum.len() {
        return Err(Error::invalid(format!(
            "weight has {} entries but the datum has {} embeddings",
            weight.len(),
            datum.len()
        )));
    }
    let n = weight.n();
    let mut b = Builder {
        datum,
        stages: Vec::new(),
        warnings: Vec::new(),
    };
    if !datum.is_transitive() {
        b.warnings
            .push("Galois action on embeddings is not transitive".to_string());
    }

    if let Some(i) = weight.first_non_dominant() {
        let w = json!({"embedding": b.label(i), "b": weight.at(i)});
        return Ok(b.fail("dominance", w));
    }
    b.pass("dominance", json!({"n": n, "embeddings": datum.len()}));

    let rule = if datum.has_real_place() {
        "d^η = 𝗐"
    } else {
        "d^η + d^{c(η)} = 𝗐"
    };
    let d_values: Vec<String> = (0..datum.len())
        .map(|i| rational::to_string(&weight.d(i)))
        .collect();
    match is_algebraic(weight, datum)? {
        Some(w) => b.pass("algebraicity", json!({"w": w, "rule": rule, "d": d_values})),
        None => {
            let w = json!({"rule": rule, "d": d_values});
            return Ok(b.fail("algebraicity", w));
        }
    }

    let w = match purity_check(weight, datum)? {
        Ok(cert) => cert.w,
        Err(v) => {
            let w = json!({"embedding": b.label(v.embedding), "index": v.index,
                "sum": v.sum, "expected": v.expected});
            return Ok(b.fail("purity", w));
        }
    };
    let half = d_matches_half_w(weight, w);
    if !half {
        b.warnings.push(format!(
            "d^η ≠ 𝗐/2 at some embedding although the weight is pure (𝗐 = {w}); only d^η + d^(c(η)) = 𝗐 holds"
        ));
    }
    b.pass("purity", json!({"w": w, "d_equals_half_w": half}));

    let gamma = group_elements(datum, opts.group_cap)?;
    match strong_purity_check_in(weight, datum, &gamma)? {
        Ok(cert) => b.pass(
            "strong_purity",
            json!({"w": cert.w, "group_order": gamma.len()}),
        ),
        Err(v) => {
            let w = json!({"twist": v.twist, "embedding": b.label(v.violation.embedding),
                "index": v.violation.index, "sum": v.violation.sum, "expected": v.violation.expected});
            return Ok(b.fail("strong_purity", w));
        }
    }

    match base_change_factor_in(weight, datum, &gamma, opts.group_cap) {
        Ok(bc) => {
            let cert = json!({"blocks": bc.partition.labelled(datum), "kappa": bc.kappa});
            b.pass("base_change", cert);
        }
        Err(Error::Contract(msg)) | Err(Error::Precondition(msg)) => {
            return Ok(b.fail("base_change", json!({"error": msg})));
        }
        Err(e) => return Err(e),
    }

    if !datum.totally_imaginary() {
        b.stages.push(StageRecord {
            stage: "archimedean",
            status: Status::Skipped,
            certificate: json!({"reason": "pipeline out of scope beyond purity: the datum has a real place"}),
        });
        return Ok(b.finish(Outcome::OutOfScope, None));
    }

    let mut places = Vec::new();
    for (eta, eta_bar) in datum.complex_places() {
        match PureWeightPair::new(weight.at(eta).clone(), weight.at(eta_bar).clone(), w) {
            Ok(pair) => places.push(Place { eta, eta_bar, pair }),
            Err(e) => {
                let w = json!({"place": [b.label(eta), b.label(eta_bar)], "error": e.to_string()});
                return Ok(b.fail("place_pairs", w));
            }
        }
    }
    let r2 = places.len();
    let mut pair_certs = Vec::with_capacity(r2);
    for p in &places {
        let params = cuspidal_parameters(&p.pair)?;
        pair_certs.push(json!({"place": [b.label(p.eta), b.label(p.eta_bar)],
            "lambda": p.pair.lambda(), "lambda_star": p.pair.lambda_star(),
            "cuspidal_parameters": params}));
    }
    b.pass("place_pairs", json!({"r2": r2, "pairs": pair_certs}));

    if !theta_selfdual_check(weight, datum)? {
        return Ok(b.fail("theta_selfdual", json!({"selfdual": false})));
    }
    b.pass("theta_selfdual", json!({"selfdual": true}));

    let rs_count = n * n.saturating_sub(1) / 2;
    let wedge_u = if rs_count <= MAX_ROOTS_FOR_PAIRS {
        Some(wedge_u_all(n)?)
    } else {
        None
    };
    let entries: Vec<Result<(Status, Value)>> = places
        .par_iter()
        .map(|p| {
            unique_character_entry(
                p,
                (datum.label(p.eta), datum.label(p.eta_bar)),
                wedge_u.as_deref(),
                &opts.branching,
            )
        })
        .collect();
    let mut certs = Vec::with_capacity(r2);
    let mut failed = false;
    let mut verified = 0;
    for e in entries {
        let (status, cert) = e?;
        match status {
            Status::Fail => failed = true,
            Status::Pass => verified += 1,
            Status::Skipped => b.warnings.push(format!(
                "canonical character not verified at a place: {}",
                cert["reason"]
            )),
        }
        certs.push(cert);
    }
    if failed {
        return Ok(b.fail("unique_character", json!({"places": certs})));
    }
    let status = if verified == 0 && r2 > 0 {
        Status::Skipped
    } else {
        Status::Pass
    };
    b.record("unique_character", status, json!({"places": certs}));

    let local = lefschetz_local(n);
    b.pass(
        "local_lefschetz",
        json!({"traces": local.traces, "total": local.total, "places": r2}),
    );

    let at_infinity = lefschetz_infinity(&vec![local.total; r2], r2)?;
    if !at_infinity.is_nonzero() {
        return Ok(b.fail("lefschetz_infinity", json!({"value": at_infinity})));
    }
    b.pass(
        "lefschetz_infinity",
        json!({"value": at_infinity, "nonzero": true}),
    );

    let sl = kunneth_assemble(&vec![coh_poincare(n); r2], r2)?;
    let expected = sl_degree_window(n, r2);
    if sl.window() != Some(expected) {
        return Ok(b.fail(
            "sl_degree_window",
            json!({"poincare": sl, "expected": [expected.0, expected.1]}),
        ));
    }
    b.pass(
        "sl_degree_window",
        json!({"poincare": sl, "window": [expected.0, expected.1]}),
    );

    let rf = steinberg_shift(&opts.steinberg_ranks);
    b.pass(
        "steinberg_shift",
        json!({"ranks": opts.steinberg_ranks, "r_f": rf, "shift": format!("[-{rf}]")}),
    );

    let gl = gl_sl_poincare(&sl, r2)?;
    let (lo, hi) = gl.window().expect("nonzero polynomial");
    b.pass(
        "gl_window",
        json!({"poincare": gl, "window": [lo, hi],
            "central_exponent": r2 - 1,
            "central_exponent_note": "dim(z/s) = r2 - 1 is derived from the Lie algebra decomposition",
            "twist": format!("pi({})", rational::to_string(&Rational::new(-w, 2)))}),
    );

    Ok(b.finish(Outcome::Pass, None))
}
