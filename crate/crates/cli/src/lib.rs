//! Scenario handling and the three subcommands behind the `cuspcoh` binary.
//!
//! Exit codes: 0 success, 1 invalid input or I/O error, 2 a mathematical
//! stage failed.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use cuspcoh_core::branching::{
    chi_tensor_m_characters, BranchingOptions, Method, PureWeightPair, DEFAULT_DIM_SQ_CAP,
};
use cuspcoh_core::cohomology::{coh_poincare, lefschetz_local};
use cuspcoh_core::exterior::{wedge_p_all, wedge_p_characters, wedge_u_all, wedge_u_characters};
use cuspcoh_core::galois::{FieldDatum, FieldDatumJson, DEFAULT_GROUP_CAP};
use cuspcoh_core::report::{nonvanishing_report, Outcome, Report, ReportOptions};
use cuspcoh_core::selftest;
use cuspcoh_core::weight::{LocalWeight, Weight, WeightJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_STAGE_FAILED: i32 = 2;

/// Options shared by every subcommand (`--cap`, `--jobs`).
#[derive(Debug, Clone, Default)]
pub struct GlobalOptions {
    pub cap: Option<u64>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOptions {
    /// Cap on `dim 𝓜_λ · dim 𝓜_λ*`.
    #[serde(default)]
    pub cap: Option<u64>,
    #[serde(default)]
    pub group_cap: Option<usize>,
    #[serde(default)]
    pub jobs: Option<usize>,
    #[serde(default)]
    pub report: Option<PathBuf>,
    #[serde(default)]
    pub steinberg_ranks: Vec<usize>,
    #[serde(default)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioJson {
    pub n: usize,
    pub field: FieldDatumJson,
    pub weight: WeightJson,
    #[serde(default)]
    pub options: ScenarioOptions,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub datum: FieldDatum,
    pub weight: Weight,
    pub options: ScenarioOptions,
}

impl Scenario {
    pub fn parse(text: &str) -> anyhow::Result<Scenario> {
        let raw: ScenarioJson = serde_json::from_str(text).context("scenario JSON")?;
        let datum = FieldDatum::from_json(&raw.field).context("field")?;
        if raw.weight.n != raw.n {
            bail!("weight.n = {} does not match n = {}", raw.weight.n, raw.n);
        }
        if raw.n == 0 {
            bail!("n: must be at least 1");
        }
        let weight = Weight::from_json(&raw.weight, &datum).context("weight")?;
        if raw.options.group_cap == Some(0) {
            bail!("options.group_cap: must be positive");
        }
        if raw.options.jobs == Some(0) {
            bail!("options.jobs: must be positive");
        }
        Ok(Scenario {
            datum,
            weight,
            options: raw.options,
        })
    }

    pub fn load(path: &Path) -> anyhow::Result<Scenario> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Scenario::parse(&text)
    }

    pub fn report_options(&self, global: &GlobalOptions) -> ReportOptions {
        ReportOptions {
            group_cap: self.options.group_cap.unwrap_or(DEFAULT_GROUP_CAP),
            branching: BranchingOptions {
                method: self.options.method.unwrap_or_default(),
                dim_sq_cap: global
                    .cap
                    .or(self.options.cap)
                    .unwrap_or(DEFAULT_DIM_SQ_CAP),
            },
            steinberg_ranks: self.options.steinberg_ranks.clone(),
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => bail!("--jobs must be positive"),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| anyhow!("thread pool: {e}"))?;
            Ok(pool.install(f))
        }
    }
}

/// Write `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| anyhow!("writing {}: {}", path.display(), e.error))?;
    Ok(())
}

pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn run_check(
    input: &Path,
    report_path: Option<&Path>,
    global: &GlobalOptions,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let scenario = Scenario::load(input)?;
    let opts = scenario.report_options(global);
    let jobs = global.jobs.or(scenario.options.jobs);
    let report = with_jobs(jobs, || {
        nonvanishing_report(&scenario.weight, &scenario.datum, &opts)
    })??;
    let text = report_json(&report);
    match report_path.or(scenario.options.report.as_deref()) {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(match report.outcome {
        Outcome::Pass | Outcome::OutOfScope => EXIT_OK,
        Outcome::Fail => EXIT_STAGE_FAILED,
    })
}

/// `check --input F [--report F]`.
pub fn cmd_check(
    input: &Path,
    report_path: Option<&Path>,
    global: &GlobalOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match run_check(input, report_path, global, out) {
        Ok(code) => {
            if code == EXIT_STAGE_FAILED {
                let _ = writeln!(err, "check: a stage failed; see the report");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INVALID
        }
    }
}

/// `selftest --max-n K`.
pub fn cmd_selftest(
    max_n: usize,
    global: &GlobalOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let result = with_jobs(global.jobs, || selftest::run(max_n));
    match result {
        Ok(Ok(report)) => {
            let _ = out.write_all(report.table().as_bytes());
            if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_STAGE_FAILED
            }
        }
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INVALID
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpKind {
    WedgeP,
    WedgeU,
    ChiM,
    Dims,
    Lefschetz,
}

#[derive(Debug, Clone, Default)]
pub struct DumpParams {
    pub n: Option<usize>,
    pub q: Option<usize>,
    pub t: Option<usize>,
    pub lambda: Option<Vec<i64>>,
    pub w: Option<i64>,
}

fn indexed<T: Serialize>(key: &str, items: Vec<T>) -> serde_json::Value {
    serde_json::Value::Array(
        items
            .into_iter()
            .enumerate()
            .map(|(i, m)| serde_json::json!({ key: i, "characters": m }))
            .collect(),
    )
}

fn dump_value(
    kind: DumpKind,
    p: &DumpParams,
    global: &GlobalOptions,
) -> anyhow::Result<serde_json::Value> {
    let need_n = || p.n.ok_or_else(|| anyhow!("--n is required"));
    let v = match kind {
        DumpKind::WedgeP => {
            let n = need_n()?;
            match p.q {
                Some(q) => serde_json::to_value(wedge_p_characters(n, q)?)?,
                None => indexed("q", wedge_p_all(n)?),
            }
        }
        DumpKind::WedgeU => {
            let n = need_n()?;
            match p.t {
                Some(t) => serde_json::to_value(wedge_u_characters(n, t)?)?,
                None => indexed("t", wedge_u_all(n)?),
            }
        }
        DumpKind::ChiM => {
            let lambda = p
                .lambda
                .clone()
                .ok_or_else(|| anyhow!("--lambda is required"))?;
            if let Some(n) = p.n {
                if n != lambda.len() {
                    bail!("--n {n} does not match the length of --lambda");
                }
            }
            let w = p.w.ok_or_else(|| anyhow!("--w is required"))?;
            let pair = PureWeightPair::from_lambda(LocalWeight(lambda), w)?;
            let opts = BranchingOptions {
                dim_sq_cap: global.cap.unwrap_or(DEFAULT_DIM_SQ_CAP),
                ..Default::default()
            };
            serde_json::to_value(chi_tensor_m_characters(&pair, &opts)?)?
        }
        DumpKind::Dims => {
            let n = need_n()?;
            if n == 0 {
                bail!("--n must be at least 1");
            }
            serde_json::to_value(coh_poincare(n))?
        }
        DumpKind::Lefschetz => {
            let n = need_n()?;
            if n == 0 {
                bail!("--n must be at least 1");
            }
            serde_json::to_value(lefschetz_local(n))?
        }
    };
    Ok(v)
}

/// `dump --kind K [--n N] [--q Q] [--t T]` (plus `--lambda`, `--w` for `chi-m`).
pub fn cmd_dump(
    kind: DumpKind,
    params: &DumpParams,
    global: &GlobalOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match with_jobs(global.jobs, || dump_value(kind, params, global)) {
        Ok(Ok(v)) => {
            let mut s = serde_json::to_string(&v).expect("dump serializes");
            s.push('\n');
            let _ = out.write_all(s.as_bytes());
            EXIT_OK
        }
        Ok(Err(e)) | Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INVALID
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const IQ: &str = r#"{
        "n": 2,
        "field": {"embeddings": ["eta", "eta_bar"], "conjugation": {"eta": "eta_bar", "eta_bar": "eta"}},
        "weight": {"n": 2, "per_embedding": {"eta": [3, 0], "eta_bar": [3, 0]}}
    }"#;

    #[test]
    fn parses_minimal_scenario() {
        let s = Scenario::parse(IQ).unwrap();
        assert_eq!(s.datum.len(), 2);
        assert_eq!(s.weight.at(0).as_slice(), &[3, 0]);
        let o = s.report_options(&GlobalOptions {
            cap: Some(5),
            jobs: None,
        });
        assert_eq!(o.branching.dim_sq_cap, 5);
    }

    #[test]
    fn rejects_bad_scenarios() {
        let bad_n = IQ.replacen("\"n\": 2,", "\"n\": 3,", 1);
        assert!(Scenario::parse(&bad_n).is_err());
        let unknown = IQ.replacen("\"n\": 2,", "\"n\": 2, \"extra\": 1,", 1);
        assert!(Scenario::parse(&unknown).is_err());
        let not_bijective = IQ.replace(r#""eta_bar": "eta"}"#, r#""eta_bar": "eta_bar"}"#);
        let e = Scenario::parse(&not_bijective).unwrap_err();
        assert!(format!("{e:#}").contains("field"), "{e:#}");
    }

    #[test]
    fn dump_examples() {
        let g = GlobalOptions::default();
        let dims = dump_value(
            DumpKind::Dims,
            &DumpParams {
                n: Some(3),
                ..Default::default()
            },
            &g,
        )
        .unwrap();
        assert_eq!(dims, serde_json::json!({"3": 1, "4": 2, "5": 1}));
        let l = dump_value(
            DumpKind::Lefschetz,
            &DumpParams {
                n: Some(2),
                ..Default::default()
            },
            &g,
        )
        .unwrap();
        assert_eq!(l["total"], serde_json::json!({"coeff": 2, "c_power": 1}));
        let u = dump_value(
            DumpKind::WedgeU,
            &DumpParams {
                n: Some(2),
                t: Some(0),
                ..Default::default()
            },
            &g,
        )
        .unwrap();
        assert_eq!(u, serde_json::json!([{"m": [0], "mult": 1}]));
        assert!(dump_value(DumpKind::Dims, &DumpParams::default(), &g).is_err());
    }
}
