use std::collections::BTreeMap;

use cuspcoh_core::branching::{weight_multiset_gt, weyl_dimension};
use cuspcoh_core::galois::models;
use cuspcoh_core::report::{nonvanishing_report, Outcome, ReportOptions, Status};
use cuspcoh_core::sample::Sampler;
use cuspcoh_core::weight::{LocalWeight, Weight};
use serde_json::json;

/// Weight multiplicities by counting semistandard tableaux of the shifted shape.
fn ssyt_weights(lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let n = lambda.len();
    let shift = *lambda.last().unwrap();
    let shape: Vec<usize> = lambda.iter().map(|&x| (x - shift) as usize).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = BTreeMap::new();

    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        n: usize,
        shift: i64,
        out: &mut BTreeMap<Vec<i64>, u64>,
    ) {
        if k == cells.len() {
            let mut content = vec![shift; n];
            for row in grid.iter() {
                for &v in row {
                    content[v] += 1;
                }
            }
            *out.entry(content).or_default() += 1;
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            grid[r][c] = v;
            fill(k + 1, cells, grid, n, shift, out);
        }
    }

    fill(0, &cells, &mut grid, n, shift, &mut out);
    out
}

#[test]
fn gelfand_tsetlin_matches_tableaux() {
    let mut s = Sampler::new(7);
    for i in 0..40 {
        let n = 1 + i % 4;
        let lambda = s.dominant(n, -2, 2);
        let gt = weight_multiset_gt(&lambda).unwrap();
        let ssyt = ssyt_weights(lambda.as_slice());
        assert_eq!(gt, ssyt, "λ = {:?}", lambda.as_slice());
        assert_eq!(ssyt.values().sum::<u64>(), weyl_dimension(&lambda));
    }
}

#[test]
fn cyclic_cm_windows_and_lefschetz() {
    for (half, n) in [(1, 1), (1, 3), (2, 2), (3, 2), (2, 3)] {
        let d = models::cyclic_cm(half);
        let r2 = d.len() / 2;
        assert_eq!(r2, half);
        let w = Weight::zero(n, &d);
        let r = nonvanishing_report(&w, &d, &ReportOptions::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Pass, "{half}, {n}: {r:#?}");
        let top = r2 * n * (n - 1) / 2;
        let width = r2 * (n - 1);
        assert_eq!(
            r.stage("sl_degree_window").unwrap().certificate["window"],
            json!([top, top + width])
        );
        assert_eq!(
            r.stage("gl_window").unwrap().certificate["window"],
            json!([top, top + width + r2 - 1])
        );
        let gl = &r.stage("gl_window").unwrap().certificate["poincare"];
        let total: u64 = gl
            .as_object()
            .unwrap()
            .values()
            .map(|v| v.as_u64().unwrap())
            .sum();
        assert_eq!(total, 1 << (width + r2 - 1));
        assert_eq!(gl[top.to_string()], 1);
        if width + r2 > 1 {
            assert_eq!(gl[(top + 1).to_string()], width + r2 - 1);
        }
        assert_eq!(
            r.stage("lefschetz_infinity").unwrap().certificate["value"],
            json!({"coeff": 1u64 << width, "c_power": r2})
        );
    }
}

#[test]
fn report_is_deterministic_and_complete() {
    let d = models::s3_sextic();
    let mut s = Sampler::new(11);
    let sample = s.strongly_pure(&d, 2, -3, 3, 1000).unwrap();
    let a = nonvanishing_report(&sample.weight, &d, &ReportOptions::default()).unwrap();
    let b = nonvanishing_report(&sample.weight, &d, &ReportOptions::default()).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(a.outcome, Outcome::Pass);
    assert!(a.stages.iter().all(|st| st.status == Status::Pass));
    let names: Vec<&str> = a.stages.iter().map(|st| st.stage).collect();
    assert_eq!(names.first(), Some(&"dominance"));
    assert_eq!(names.last(), Some(&"gl_window"));
}

#[test]
fn injected_violation_fails_strong_purity() {
    let d = models::s3_sextic();
    let mut s = Sampler::new(3);
    let mut seen = 0;
    for _ in 0..20 {
        let sample = s.strongly_pure(&d, 2, -3, 3, 1000).unwrap();
        if let Some(bad) = s.inject_block_violation(&sample, &d) {
            let r = nonvanishing_report(&bad, &d, &ReportOptions::default()).unwrap();
            assert_eq!(r.outcome, Outcome::Fail);
            assert_eq!(r.failed_stage, Some("strong_purity"));
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn purity_with_uneven_halves_still_passes() {
    let d = models::imaginary_quadratic();
    let w = Weight::new(2, vec![LocalWeight::new([3, 1]), LocalWeight::new([0, -2])]).unwrap();
    let r = nonvanishing_report(&w, &d, &ReportOptions::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Pass, "{r:#?}");
    assert_eq!(
        r.stage("purity").unwrap().certificate["d_equals_half_w"],
        false
    );
    assert!(!r.warnings.is_empty());
}
