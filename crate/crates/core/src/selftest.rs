//! Formula-versus-oracle suites run by `cuspcoh selftest`.

use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::branching::{
    m_blambda_compact_characters, weight_multiset_freudenthal, weight_multiset_gt, weyl_dimension,
    BranchingOptions,
};
use crate::cohomology::{
    canonical_character, chi_lambda_restricted, coh_dimension, coh_poincare,
    coh_table_bruteforce_with, cuspidal_parameters, gl_sl_poincare, kunneth_assemble,
    lefschetz_infinity, lefschetz_local, sl_degree_window, theta_selfdual_check,
    verify_unique_character_with, BRUTEFORCE_MAX_N,
};
use crate::error::{Error, Result};
use crate::exterior::{adjoint_wedge_oracle_all, wedge_p_all, wedge_u_all};
use crate::galois::{group_elements, models, DEFAULT_GROUP_CAP};
use crate::lie::{dominance_interval_check, two_rho, CompactTorusCharacter, RootSystem};
use crate::rational::Rational;
use crate::sample::{all_pure_pairs, Sampler};
use crate::weight::{
    ab_from_b, b_from_ab, base_change_factor, is_strongly_pure, purity_weight, Weight,
};

pub const MAX_SELFTEST_N: usize = 5;
/// Largest `n` for the exhaustive wedge oracle inside the self-test.
const ORACLE_SELFTEST_N: usize = 4;
const SEED: u64 = 0x5eed;
const MAX_RECORDED_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: u64,
    pub total: u64,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub max_n: usize,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn table(&self) -> String {
        let width = self.suites.iter().map(|s| s.name.len()).max().unwrap_or(5);
        let mut out = format!("{:width$}  {:>9}  status\n", "suite", "passed");
        for s in &self.suites {
            out.push_str(&format!(
                "{:width$}  {:>9}  {}\n",
                s.name,
                format!("{}/{}", s.passed, s.total),
                if s.ok() { "ok" } else { "FAIL" }
            ));
            for f in &s.failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out
    }
}

struct Tally {
    name: &'static str,
    passed: u64,
    total: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, results: Vec<std::result::Result<(), String>>) {
        for r in results {
            match r {
                Ok(()) => self.check(true, String::new),
                Err(e) => self.check(false, || e),
            }
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.passed,
            total: self.total,
            failures: self.failures,
        }
    }
}

fn ab_roundtrip(max_n: usize, s: &mut Sampler) -> SuiteResult {
    let mut t = Tally::new("ab_roundtrip");
    for i in 0..2000 {
        let n = 1 + i % max_n.max(1);
        let lw = s.dominant(n, -20, 20);
        let back = b_from_ab(&ab_from_b(&lw), n);
        t.check(back.as_ref() == Ok(&lw), || format!("{lw:?} -> {back:?}"));
    }
    t.done()
}

fn purity_identities(max_n: usize, s: &mut Sampler) -> SuiteResult {
    let mut t = Tally::new("purity_d_sum");
    let data = [
        models::imaginary_quadratic(),
        models::cyclic_cm(3),
        models::s3_sextic(),
    ];
    for i in 0..600 {
        let d = &data[i % data.len()];
        let n = 1 + i % max_n;
        let sample = match s.strongly_pure(d, n, -6, 6, DEFAULT_GROUP_CAP) {
            Ok(x) => x,
            Err(e) => {
                t.check(false, || e.to_string());
                continue;
            }
        };
        let weight = &sample.weight;
        let cert = purity_weight(weight, d).ok().flatten();
        let c = d.conjugation();
        let ok = cert.map(|c| c.w) == Some(sample.w)
            && (0..d.len())
                .all(|e| weight.d(e) + weight.d(c.apply(e)) == Rational::from_integer(sample.w));
        t.check(ok, || format!("{weight:?} with 𝗐 = {}", sample.w));
    }
    t.done()
}

fn strong_purity(max_n: usize, s: &mut Sampler) -> Vec<SuiteResult> {
    let mut bc = Tally::new("base_change");
    let mut inj = Tally::new("injected_violation_detected");
    let mut twist = Tally::new("strong_purity_twist_stable");
    for i in 0..150 {
        let datum = if i % 5 == 0 {
            models::s3_sextic()
        } else {
            match s.field_datum(DEFAULT_GROUP_CAP) {
                Ok(d) => d,
                Err(e) => {
                    bc.check(false, || e.to_string());
                    continue;
                }
            }
        };
        let n = 1 + i % max_n;
        let sample = match s.strongly_pure(&datum, n, -4, 4, DEFAULT_GROUP_CAP) {
            Ok(x) => x,
            Err(e) => {
                bc.check(false, || e.to_string());
                continue;
            }
        };
        let sp = is_strongly_pure(&sample.weight, &datum, DEFAULT_GROUP_CAP);
        let factored = base_change_factor(&sample.weight, &datum, DEFAULT_GROUP_CAP);
        bc.check(
            matches!(&sp, Ok(Some(c)) if c.w == sample.w)
                && matches!(&factored, Ok(f) if f.kappa == sample.kappa),
            || format!("{:?}: {sp:?} / {factored:?}", datum.labels()),
        );
        if let Ok(gamma) = group_elements(&datum, DEFAULT_GROUP_CAP) {
            for g in gamma.iter().take(8) {
                let tw: Weight = sample.weight.twist(g);
                let r = is_strongly_pure(&tw, &datum, DEFAULT_GROUP_CAP);
                twist.check(matches!(&r, Ok(Some(c)) if c.w == sample.w), || {
                    format!("twist by {g:?} of {:?}", sample.weight)
                });
            }
        }
        if let Some(bad) = s.inject_block_violation(&sample, &datum) {
            let pure = purity_weight(&bad, &datum).ok().flatten().is_some();
            let sp = is_strongly_pure(&bad, &datum, DEFAULT_GROUP_CAP);
            inj.check(pure && matches!(sp, Ok(None)), || {
                format!(
                    "{bad:?} on {:?}: pure = {pure}, strongly pure = {sp:?}",
                    datum.labels()
                )
            });
        }
    }
    vec![bc.done(), inj.done(), twist.done()]
}

fn lie_suite(max_n: usize) -> SuiteResult {
    let mut t = Tally::new("two_rho_and_interval");
    for n in 1..=max_n.max(7) {
        let rs = RootSystem::type_a(n);
        let sum = rs
            .positive_roots()
            .iter()
            .fold(CompactTorusCharacter::zero(n), |acc, &r| {
                acc.add(&rs.root_character(r))
            });
        t.check(sum == two_rho(n).compact, || format!("2ρ for n = {n}"));
        let both = dominance_interval_check(&two_rho(n).compact, n)
            .and_then(|a| Ok(a && dominance_interval_check(&two_rho(n).compact.neg(), n)?));
        t.check(both == Ok(true), || format!("±2ρ interval for n = {n}"));
    }
    t.done()
}

fn exterior_suite(max_n: usize) -> Result<Vec<SuiteResult>> {
    let mut oracle = Tally::new("wedge_p_vs_adjoint_oracle");
    let mut totals = Tally::new("wedge_p_totals_interval_duality");
    for n in 1..=max_n {
        let fast = wedge_p_all(n)?;
        let dim = n * n - 1;
        for (q, m) in fast.iter().enumerate() {
            let inside = m
                .characters()
                .all(|g| dominance_interval_check(g, n).unwrap_or(false));
            let dual = fast[dim - q].negate() == *m;
            totals.check(
                m.total() == binomial(dim as u64, q as u64) && inside && dual,
                || format!("n = {n}, q = {q}"),
            );
        }
        if n <= ORACLE_SELFTEST_N {
            let slow = adjoint_wedge_oracle_all(n, false)?;
            for q in 0..=dim {
                oracle.check(slow[q] == fast[q], || format!("n = {n}, q = {q}"));
            }
        }
    }
    Ok(vec![oracle.done(), totals.done()])
}

fn branching_suite(max_n: usize, s: &mut Sampler) -> Result<Vec<SuiteResult>> {
    let mut weyl = Tally::new("gt_total_is_weyl_dimension");
    let mut perm = Tally::new("weight_multiplicity_symmetric");
    let mut freud = Tally::new("freudenthal_matches_gt");
    let mut mtot = Tally::new("m_blambda_total");
    let opts = BranchingOptions::default();
    for i in 0..120 {
        let n = 1 + i % max_n.min(4);
        let lw = s.dominant(n, 0, 6 - n as i64);
        let gt = weight_multiset_gt(&lw)?;
        weyl.check(gt.values().sum::<u64>() == weyl_dimension(&lw), || {
            format!("{lw:?}")
        });
        let symmetric = gt.iter().all(|(mu, m)| {
            let mut r = mu.clone();
            r.reverse();
            let mut rot = mu.clone();
            rot.rotate_left(1);
            gt.get(&r) == Some(m) && gt.get(&rot) == Some(m)
        });
        perm.check(symmetric, || format!("{lw:?}"));
        freud.check(weight_multiset_freudenthal(&lw)? == gt, || {
            format!("{lw:?}")
        });
        let pair = s.pure_pair(n, -2, 2);
        let m = m_blambda_compact_characters(&pair, &opts)?;
        mtot.check(
            m.total() == weyl_dimension(pair.lambda()) * weyl_dimension(pair.lambda_star()),
            || format!("{pair:?}"),
        );
    }
    Ok(vec![weyl.done(), perm.done(), freud.done(), mtot.done()])
}

/// The pair corpus: exhaustive over entries in `[−3, 3]` for `n ≤ 3`,
/// random otherwise.
pub fn pair_corpus(n: usize, samples: usize, seed: u64) -> Vec<crate::branching::PureWeightPair> {
    if n <= 3 {
        all_pure_pairs(n, -3, 3)
    } else {
        let mut s = Sampler::new(seed ^ n as u64);
        let (lo, hi) = if n == 4 { (-2, 2) } else { (-1, 1) };
        (0..samples).map(|_| s.pure_pair(n, lo, hi)).collect()
    }
}

type Check = std::result::Result<(), String>;

fn cohomology_suite(max_n: usize) -> Result<Vec<SuiteResult>> {
    let mut dims = Tally::new("coh_dimension_bruteforce");
    let mut unique = Tally::new("unique_canonical_character");
    let mut params = Tally::new("cuspidal_parameter_sum");
    let mut selfdual = Tally::new("theta_selfdual_for_pure");
    let opts = BranchingOptions::default();
    for n in 1..=max_n {
        let wu = wedge_u_all(n)?;
        let corpus = pair_corpus(n, 60, SEED);
        let closed = coh_poincare(n);
        let results: Vec<(Option<Check>, Check)> = corpus
            .par_iter()
            .map(|pair| {
                let d = (n <= BRUTEFORCE_MAX_N).then(|| {
                    match coh_table_bruteforce_with(pair, &wu, &opts) {
                        Ok(t) if t == closed => Ok(()),
                        Ok(t) => Err(format!("{pair:?}: {t:?} vs {closed:?}")),
                        Err(e) => Err(format!("{pair:?}: {e}")),
                    }
                });
                let u = verify_unique_character_with(pair, &wu, &opts)
                    .map(|_| ())
                    .map_err(|e| e.to_string());
                (d, u)
            })
            .collect();
        for (d, u) in results {
            if let Some(d) = d {
                dims.absorb(vec![d]);
            }
            unique.absorb(vec![u]);
        }
        for pair in &corpus {
            let ok = cuspidal_parameters(pair).is_ok();
            params.check(ok, || format!("{pair:?}"));
            let d = models::imaginary_quadratic();
            let w = Weight::new(n, vec![pair.lambda().clone(), pair.lambda_star().clone()])?;
            selfdual.check(theta_selfdual_check(&w, &d)?, || format!("{pair:?}"));
        }
    }
    Ok(vec![
        dims.done(),
        unique.done(),
        params.done(),
        selfdual.done(),
    ])
}

fn closed_forms(max_n: usize) -> Result<Vec<SuiteResult>> {
    let mut lef = Tally::new("lefschetz_closed_form");
    let mut glob = Tally::new("kunneth_window_and_gl_ratio");
    let mut chi = Tally::new("trivial_pair_character_is_2rho");
    for n in 1..=8usize {
        let l = lefschetz_local(n);
        let base = n * (n - 1) / 2;
        let traces_ok = l.traces.iter().all(|(&q, v)| {
            let sign = if q % 2 == 0 { 1 } else { -1 };
            v.coeff == sign * coh_dimension(n, q) as i128 && v.c_power == 1
        }) && l.traces.len() == n
            && l.traces.keys().next() == Some(&base);
        lef.check(
            traces_ok && l.total.coeff == 1i128 << (n - 1) && l.total.c_power == 1,
            || format!("n = {n}: {l:?}"),
        );
    }
    for n in 1..=max_n {
        for r2 in 1..=3usize {
            let sl = kunneth_assemble(&vec![coh_poincare(n); r2], r2)?;
            let gl = gl_sl_poincare(&sl, r2)?;
            let lv = lefschetz_infinity(&vec![lefschetz_local(n).total; r2], r2)?;
            glob.check(
                sl.window() == Some(sl_degree_window(n, r2))
                    && gl.total() == sl.total() << (r2 - 1)
                    && lv.coeff == 1i128 << (r2 * (n - 1))
                    && lv.c_power == r2 as u32,
                || format!("n = {n}, r₂ = {r2}"),
            );
        }
        let pair =
            crate::branching::PureWeightPair::from_lambda(crate::weight::LocalWeight::zero(n), 0)?;
        chi.check(
            chi_lambda_restricted(&pair) == canonical_character(n),
            || format!("n = {n}"),
        );
    }
    Ok(vec![lef.done(), glob.done(), chi.done()])
}

/// Run every suite for ranks `1..=max_n`.
pub fn run(max_n: usize) -> Result<SelftestReport> {
    if !(1..=MAX_SELFTEST_N).contains(&max_n) {
        return Err(Error::invalid(format!(
            "max-n must be between 1 and {MAX_SELFTEST_N}, got {max_n}"
        )));
    }
    let mut s = Sampler::new(SEED);
    let mut suites = vec![
        ab_roundtrip(max_n, &mut s),
        purity_identities(max_n, &mut s),
    ];
    suites.extend(strong_purity(max_n, &mut s));
    suites.push(lie_suite(max_n));
    suites.extend(exterior_suite(max_n)?);
    suites.extend(branching_suite(max_n, &mut s)?);
    suites.extend(cohomology_suite(max_n)?);
    suites.extend(closed_forms(max_n)?);
    Ok(SelftestReport { max_n, suites })
}
