use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use numrad_core::matrix_file::parse_matrix;
use numrad_core::suite::{run_suite, InequalityId, RunReport, SuiteConfig};
use numrad_core::{evaluate_norm, generalized_numerical_radius, numerical_radius, ComplexMatrix, NormSpec};

/// `println!` that ignores a closed stdout, so `numrad check | head` keeps
/// its exit status.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod examples;

/// Exit statuses.
const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "numrad", version, about = "Numerical radius computations and inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical radius, or a generalized radius with --norm.
    Radius {
        /// Matrix file: {"n": 2, "entries": [[re, im], ...]} in row-major order.
        input: PathBuf,
        /// Norm for the generalized radius: op, trace, fro, schatten:p, kyfan:k.
        #[arg(long)]
        norm: Option<NormSpec>,
        /// Certified absolute tolerance.
        #[arg(long, default_value_t = numrad_core::radius::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Table of unitarily invariant norms.
    Norms {
        input: PathBuf,
        /// Also print every Ky Fan k-norm and Schatten 4.
        #[arg(long)]
        all: bool,
    },
    /// Run the randomized inequality suite.
    Check {
        /// "default" or a JSON config file; missing fields take defaults.
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Where to write the full report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Flip one id's inequality before judging it.
        #[arg(long, hide = true)]
        inject_reversed: Option<InequalityId>,
    },
    /// Recompute the two worked examples.
    PaperExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_radius(input: &Path, norm: Option<NormSpec>, tol: f64, json: bool) -> Result<u8> {
    let t = read_matrix(input)?;
    if let Some(spec) = norm {
        spec.validate(t.n())?;
    }
    let result = match norm {
        None => numerical_radius(&t, tol)?,
        Some(spec) => generalized_numerical_radius(&t, spec, tol)?,
    };
    if json {
        out!("{}", serde_json::to_string(&result)?);
    } else {
        let name = norm.map_or_else(|| "w".to_string(), |s| format!("w_{s}"));
        out!("{name} = {}", result.value);
        out!("theta_star = {}", result.theta_star);
        out!("certified_error = {:e}", result.certified_error);
        out!("evaluations = {}", result.evaluations);
    }
    Ok(EXIT_OK)
}

fn cmd_norms(input: &Path, all: bool) -> Result<u8> {
    let t = read_matrix(input)?;
    let mut specs = vec![NormSpec::Operator, NormSpec::Trace, NormSpec::Frobenius, NormSpec::SchattenP(3.0)];
    if all {
        specs.push(NormSpec::SchattenP(4.0));
        specs.extend((1..=t.n()).map(NormSpec::KyFan));
    } else if t.n() >= 2 {
        specs.push(NormSpec::KyFan(2));
    }
    for spec in specs {
        out!("{:<12} {}", spec.to_string(), evaluate_norm(&t, spec)?);
    }
    Ok(EXIT_OK)
}

fn load_config(suite: &str) -> Result<SuiteConfig> {
    if suite == "default" {
        return Ok(SuiteConfig::default());
    }
    let text = fs::read_to_string(suite).with_context(|| format!("reading suite config {suite}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing suite config {suite}"))
}

fn print_summary(report: &RunReport) {
    out!("{:<22} {:>7} {:>11} {:>9} {:>12}", "id", "trials", "evaluations", "failures", "min_slack");
    for row in &report.rows {
        out!(
            "{:<22} {:>7} {:>11} {:>9} {:>12.3e}",
            row.id.to_string(),
            row.trials,
            row.evaluations,
            row.failures,
            row.min_slack
        );
    }
    out!(
        "total: {} evaluations, {} violations, {} numerical errors, {} other errors",
        report.evaluations, report.violations, report.numerical_errors, report.other_errors
    );
}

fn cmd_check(
    suite: &str,
    seed: Option<u64>,
    trials: Option<usize>,
    out: Option<&Path>,
    format: Format,
    inject_reversed: Option<InequalityId>,
) -> Result<u8> {
    let mut config = load_config(suite)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if let Some(trials) = trials {
        config.trials = trials;
    }
    if inject_reversed.is_some() {
        config.inject_reversed = inject_reversed;
    }
    let report = run_suite(&config)?;
    print_summary(&report);
    for f in &report.failures {
        let what = match (&f.report, &f.error) {
            (Some(r), _) => format!("lhs {:e} > rhs {:e}", r.lhs, r.rhs),
            (None, Some(e)) => e.clone(),
            (None, None) => String::new(),
        };
        eprintln!(
            "FAIL {} trial {} ({} n={}, seed {}): {what}",
            f.id, f.trial, f.ensemble, f.n, f.trial_seed
        );
    }
    let mut violated: Vec<InequalityId> = report.rows.iter().filter(|r| r.failures > 0).map(|r| r.id).collect();
    violated.dedup();
    if !violated.is_empty() {
        let names: Vec<String> = violated.iter().map(ToString::to_string).collect();
        eprintln!("failing ids: {}", names.join(", "));
    }
    if let Some(path) = out {
        let body = match format {
            Format::Json => report.to_json(),
            Format::Csv => report.to_csv(),
        };
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.violations > 0 {
        EXIT_VIOLATION
    } else if report.numerical_errors > 0 {
        EXIT_NUMERICAL
    } else if report.other_errors > 0 {
        EXIT_USAGE
    } else {
        EXIT_OK
    })
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<numrad_core::Error>() {
        Some(e) if e.is_numerical() => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Radius { input, norm, tol, json } => cmd_radius(input, *norm, *tol, *json),
        Command::Norms { input, all } => cmd_norms(input, *all),
        Command::Check { suite, seed, trials, out, format, inject_reversed } => {
            cmd_check(suite, *seed, *trials, out.as_deref(), *format, *inject_reversed)
        }
        Command::PaperExamples => examples::run(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
