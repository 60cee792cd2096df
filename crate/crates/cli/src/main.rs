//! `casimir`: runs verification suites and writes a JSON report.
//!
//! Exit codes: 0 every check passed, 1 some check failed, 2 usage or I/O
//! error, 3 numerical breakdown.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use casimir_core::monodromy::MonodromyRecord;
use casimir_core::report::CheckRecord;
use casimir_core::rootsys::RootType;
use casimir_core::suites::{run, Suite, SuiteConfig, SuiteOutcome};
use casimir_core::{Error, Rational};
use clap::Parser;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "casimir", version, about = "Verification suites for trigonometric Casimir connections")]
struct Cli {
    /// roots, relations, flatness, yangian, qkz, daha, monodromy, tits or all.
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    /// Root system for the roots and relations suites, e.g. B3 or G2.
    #[arg(long = "type", value_parser = parse_type)]
    root_type: Option<RootType>,
    /// Rank of gl_n; omitted means the suite's default grid.
    #[arg(long)]
    n: Option<usize>,
    /// Number of tensor factors.
    #[arg(long)]
    m: Option<usize>,
    /// Evaluation points as a comma-separated list of rationals `p/q`.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational, allow_hyphen_values = true)]
    a: Option<Vec<Rational>>,
    /// qKZ step ϰ.
    #[arg(long = "kappa-step", value_parser = parse_rational, allow_hyphen_values = true)]
    kappa: Option<Rational>,
    /// Connection scaling λ for the monodromy suite.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// ODE tolerance for the monodromy suite.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random samples per configuration; defaults depend on the suite.
    #[arg(long)]
    samples: Option<usize>,
    /// Runs flatness checks on a connection with a corrupted coefficient.
    #[arg(long)]
    negative_control: bool,
    /// Report path; `-` writes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for `casimir-<suite>.json` when `--out` is absent.
    #[arg(long, env = "CASIMIR_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// Zero the wall times so reports of exact suites are byte-identical.
    #[arg(long)]
    no_timings: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_type(s: &str) -> Result<RootType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a rational p/q"))
}

#[derive(Serialize)]
struct ConfigEcho {
    suite: String,
    root_type: Option<String>,
    n: Option<usize>,
    m: Option<usize>,
    a: Option<Vec<String>>,
    kappa_step: Option<String>,
    lambda: f64,
    large_lambda: f64,
    tol: f64,
    seed: u64,
    samples: Option<usize>,
    negative_control: bool,
}

#[derive(Serialize)]
struct SuiteReport {
    suite: String,
    pass: bool,
    checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    monodromy: Vec<MonodromyRecord>,
}

#[derive(Serialize)]
struct Report {
    tool: &'static str,
    version: &'static str,
    config: ConfigEcho,
    pass: bool,
    suites: Vec<SuiteReport>,
}

fn echo(suite: Suite, cfg: &SuiteConfig) -> ConfigEcho {
    let q = |x: &Rational| x.to_string();
    ConfigEcho {
        suite: suite.to_string(),
        root_type: cfg.root_type.map(|t| t.to_string()),
        n: cfg.n,
        m: cfg.m,
        a: cfg.a.as_ref().map(|a| a.iter().map(q).collect()),
        kappa_step: cfg.kappa.as_ref().map(q),
        lambda: cfg.lambda,
        large_lambda: cfg.large_lambda,
        tol: cfg.tol,
        seed: cfg.seed,
        samples: cfg.samples,
        negative_control: cfg.negative_control,
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::StepUnderflow { .. } | Error::SingularPoint(_) | Error::Singular(_) | Error::IllConditioned(_) => 3,
        _ => 2,
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn summarize(outcomes: &[SuiteOutcome]) {
    for o in outcomes {
        let failed: Vec<&CheckRecord> = o.checks.iter().filter(|r| !r.pass).collect();
        let status = if failed.is_empty() { "pass" } else { "FAIL" };
        eprintln!("{:<10} {status}  {}/{} checks", o.suite.name(), o.checks.len() - failed.len(), o.checks.len());
        for r in failed.iter().take(5) {
            eprintln!("    {} residual {} {:?}", r.name, r.residual, r.parameters);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = SuiteConfig {
        root_type: cli.root_type,
        n: cli.n,
        m: cli.m,
        a: cli.a,
        kappa: cli.kappa,
        lambda: cli.lambda,
        tol: cli.tol,
        seed: cli.seed,
        samples: cli.samples,
        negative_control: cli.negative_control,
        ..SuiteConfig::default()
    };
    let mut outcomes = match run(cli.suite, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("casimir: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    if cli.no_timings {
        for r in outcomes.iter_mut().flat_map(|o| o.checks.iter_mut()) {
            r.wall_time_ms = 0.0;
        }
    }
    summarize(&outcomes);
    let pass = outcomes.iter().all(SuiteOutcome::pass);
    let report = Report {
        tool: "casimir",
        version: env!("CARGO_PKG_VERSION"),
        config: echo(cli.suite, &cfg),
        pass,
        suites: outcomes
            .into_iter()
            .map(|o| SuiteReport {
                suite: o.suite.to_string(),
                pass: o.pass(),
                checks: o.checks,
                monodromy: o.monodromy,
            })
            .collect(),
    };
    let mut json = match serde_json::to_vec_pretty(&report) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("casimir: {e}");
            return ExitCode::from(2);
        }
    };
    json.push(b'\n');
    let target = cli.out.or_else(|| cli.out_dir.map(|d| d.join(format!("casimir-{}.json", cli.suite))));
    let written = match &target {
        Some(p) if p.as_os_str() != "-" => write_atomically(p, &json),
        _ => std::io::stdout().write_all(&json),
    };
    if let Err(e) = written {
        eprintln!("casimir: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if pass { 0 } else { 1 })
}
