use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cuspcoh_cli::{cmd_check, cmd_dump, cmd_selftest, DumpKind, DumpParams, GlobalOptions};

/// Exact checks for the nonvanishing of cuspidal cohomology over totally
/// imaginary fields.
#[derive(Parser, Debug)]
#[command(name = "cuspcoh", version)]
struct Cli {
    /// Cap on dim(M_λ)·dim(M_λ*) for branching computations.
    #[arg(long, global = true, env = "CUSPCOH_CAP")]
    cap: Option<u64>,
    /// Worker threads (default: all cores). Does not affect output.
    #[arg(long, global = true, env = "CUSPCOH_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the pipeline on a scenario and write its report.
    Check {
        #[arg(long, env = "CUSPCOH_INPUT")]
        input: PathBuf,
        /// Report destination (default: stdout, or the scenario's options.report).
        #[arg(long, env = "CUSPCOH_REPORT")]
        report: Option<PathBuf>,
    },
    /// Run every formula-versus-oracle suite for ranks up to K.
    Selftest {
        #[arg(long, env = "CUSPCOH_MAX_N")]
        max_n: usize,
    },
    /// Print a multiset or table as JSON.
    Dump {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// Highest weight for chi-m, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        /// Purity weight for chi-m.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<i64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    WedgeP,
    WedgeU,
    ChiM,
    Dims,
    Lefschetz,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let global = GlobalOptions {
        cap: cli.cap,
        jobs: cli.jobs,
    };
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match cli.command {
        Command::Check { input, report } => {
            cmd_check(&input, report.as_deref(), &global, &mut out, &mut err)
        }
        Command::Selftest { max_n } => cmd_selftest(max_n, &global, &mut out, &mut err),
        Command::Dump {
            kind,
            n,
            q,
            t,
            lambda,
            w,
        } => {
            let kind = match kind {
                Kind::WedgeP => DumpKind::WedgeP,
                Kind::WedgeU => DumpKind::WedgeU,
                Kind::ChiM => DumpKind::ChiM,
                Kind::Dims => DumpKind::Dims,
                Kind::Lefschetz => DumpKind::Lefschetz,
            };
            let params = DumpParams { n, q, t, lambda, w };
            cmd_dump(kind, &params, &global, &mut out, &mut err)
        }
    };
    ExitCode::from(code as u8)
}
