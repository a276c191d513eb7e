//! Command-line driver for the exact moment library: moment sequences of
//! the built-in orthogonality specifications, named verification suites,
//! positivity-conjecture scans, enumeration of the combinatorial models,
//! and a machine-readable catalog of everything the tool knows about.
//!
//! Output is byte-deterministic for a fixed command line: report order is
//! fixed, JSON maps are emitted in insertion order, and all sampled points
//! come from a seeded generator.
//!
//! Exit codes: 0 on success, 1 when a verification check fails (an open
//! conjecture violation is reported but is not a failure), 2 on usage
//! errors such as an unknown specification, suite, or object family.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use awmoments::arith::json::ratfunc_to_json;
use awmoments::arith::Var;
use awmoments::formulas::FormulaId;
use awmoments::lattice::{
    enumerate_dss, enumerate_matchings, enumerate_motzkin, enumerate_plain_striped, DsConstraints,
};
use awmoments::oracle::{builtin_spec, moment_table, BUILTIN_SPEC_NAMES};
use awmoments::report::{Status, VerificationReport};
use awmoments::staircase::enumerate_staircase;
use awmoments::suites::{run_suite, scan_conjectures, SuiteConfig, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "awmoments",
    version,
    about = "Exact Askey-Wilson moments: computation, verification, and combinatorial models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact moments mu_0..mu_n of a built-in specification.
    Moments {
        /// Specification name (see `export` for the list).
        #[arg(long)]
        spec: String,
        /// Largest moment index to compute.
        #[arg(long)]
        n: u32,
        /// Output format.
        #[arg(long, value_enum, default_value_t = MomentFormat::Json)]
        format: MomentFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite, one report line per check.
    Verify {
        /// Suite name, or `all` (see `export` for the list).
        #[arg(long, default_value = "all")]
        suite: String,
        /// Cap every check family at this index (default: full documented ranges).
        #[arg(long)]
        n: Option<u32>,
        /// Seed for the sampled rational evaluation points.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand the open positivity conjectures and report any violation.
    Scan {
        /// Cap the expansion index (default: full documented ranges).
        #[arg(long)]
        n: Option<u32>,
        /// Seed (accepted for interface uniformity; the scans are exact).
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List a family of combinatorial objects as JSON.
    Enumerate {
        /// Object family.
        #[arg(long, value_enum)]
        object: ObjectKind,
        /// Primary size parameter.
        #[arg(long)]
        n: i64,
        /// Second parameter: row count for striped skew shapes, or an
        /// optional fixed-point count filter for matchings.
        #[arg(long)]
        m: Option<i64>,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a machine-readable catalog of specs, formulas, suites, and caps.
    Export {
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MomentFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectKind {
    /// Weighted Motzkin paths of a given length.
    Motzkin,
    /// Motzkin paths avoiding an immediate charged up-down cancellation.
    MotzkinRestricted,
    /// Doubly striped skew shapes with m rows and n columns.
    Dss,
    /// Striped skew shapes with no black stripes.
    PlainDss,
    /// Partial matchings on a given number of points.
    Matchings,
    /// Staircase tableaux of a given size.
    Staircase,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Moments {
            spec,
            n,
            format,
            out,
        } => {
            let spec = builtin_spec(&spec)?;
            let table = moment_table(&spec, n)?;
            let text = match format {
                MomentFormat::Json => {
                    let records: Vec<Value> = (0..=n as usize)
                        .map(|i| json!({ "n": i, "value": ratfunc_to_json(table.moment(i)) }))
                        .collect();
                    pretty(&Value::Array(records))?
                }
                MomentFormat::Csv => {
                    let vars: Vec<Var> = spec.variables().iter().copied().collect();
                    moments_csv(&table, n, &vars)
                }
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            n,
            seed,
            format,
            out,
        } => {
            let cfg = SuiteConfig {
                n_max: n,
                seed,
                ..SuiteConfig::default()
            };
            let reports = run_suite(&suite, &cfg)?;
            finish_reports(&reports, format, &out)
        }
        Command::Scan {
            n,
            seed,
            format,
            out,
        } => {
            let cfg = SuiteConfig {
                n_max: n,
                seed,
                ..SuiteConfig::default()
            };
            let reports = scan_conjectures(&cfg)?;
            finish_reports(&reports, format, &out)
        }
        Command::Enumerate { object, n, m, out } => {
            let (name, items) = enumerate_objects(object, n, m)?;
            let text = pretty(&json!({
                "object": name,
                "count": items.as_array().map_or(0, Vec::len),
                "items": items,
            }))?;
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { out } => {
            let text = pretty(&catalog())?;
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Renders reports in the requested format, writes them, and converts any
/// FAIL into exit code 1 (conjecture violations stay exit 0).
fn finish_reports(
    reports: &[VerificationReport],
    format: ReportFormat,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let text = match format {
        ReportFormat::Text => render_text(reports),
        ReportFormat::Json => pretty(&serde_json::to_value(reports)?)?,
    };
    emit(out, &text)?;
    if reports.iter().any(VerificationReport::is_fail) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn render_text(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    let (mut pass, mut fail, mut violated) = (0usize, 0usize, 0usize);
    for r in reports {
        let tag = match r.status {
            Status::Pass => {
                pass += 1;
                "PASS"
            }
            Status::Fail => {
                fail += 1;
                "FAIL"
            }
            Status::ConjectureViolation => {
                violated += 1;
                "CONJECTURE-VIOLATION"
            }
        };
        match &r.witness {
            Some(w) => {
                let _ = writeln!(s, "{tag} {}: {w}", r.id);
            }
            None => {
                let _ = writeln!(s, "{tag} {}", r.id);
            }
        }
    }
    let _ = writeln!(
        s,
        "checks: {} total, {pass} passed, {fail} failed, {violated} conjecture violations",
        reports.len()
    );
    s
}

/// One CSV row per monomial: the moment index, whether the row belongs to
/// the numerator or the (sign-normalized, expanded) denominator, one
/// exponent column per specification variable, and the exact real and
/// imaginary parts as fraction strings. Lossless and diff-friendly.
fn moments_csv(table: &awmoments::oracle::MomentTable, n: u32, vars: &[Var]) -> String {
    let mut s = String::from("n,part");
    for v in vars {
        let _ = write!(s, ",{}", v.name());
    }
    s.push_str(",re,im\n");
    for i in 0..=n as usize {
        let (num, den) = table.moment(i).num_den();
        for (part, poly) in [("num", &num), ("den", &den)] {
            for (mono, coeff) in poly.iter_desc() {
                let _ = write!(s, "{i},{part}");
                for v in vars {
                    let _ = write!(s, ",{}", mono.exp(*v));
                }
                let _ = writeln!(
                    s,
                    ",{}/{},{}/{}",
                    coeff.re.numer(),
                    coeff.re.denom(),
                    coeff.im.numer(),
                    coeff.im.denom()
                );
            }
        }
    }
    s
}

fn enumerate_objects(object: ObjectKind, n: i64, m: Option<i64>) -> Result<(&'static str, Value)> {
    match object {
        ObjectKind::Dss | ObjectKind::PlainDss if m.is_none() => {
            bail!("--m is required for striped skew shapes (rows m, columns n)")
        }
        ObjectKind::Dss | ObjectKind::PlainDss | ObjectKind::Matchings => {}
        _ if m.is_some() => {
            bail!("--m only applies to striped skew shapes and matchings")
        }
        _ => {}
    }
    let as_length = |n: i64| -> Result<u32> {
        u32::try_from(n).with_context(|| format!("path length {n} must be nonnegative"))
    };
    Ok(match object {
        ObjectKind::Motzkin => (
            "motzkin",
            serde_json::to_value(enumerate_motzkin(as_length(n)?, false)?)?,
        ),
        ObjectKind::MotzkinRestricted => (
            "motzkin-restricted",
            serde_json::to_value(enumerate_motzkin(as_length(n)?, true)?)?,
        ),
        ObjectKind::Dss => (
            "dss",
            serde_json::to_value(enumerate_dss(
                m.unwrap(),
                n,
                &DsConstraints::default(),
            )?)?,
        ),
        ObjectKind::PlainDss => (
            "plain-dss",
            serde_json::to_value(enumerate_plain_striped(m.unwrap(), n)?)?,
        ),
        ObjectKind::Matchings => (
            "matchings",
            serde_json::to_value(enumerate_matchings(n, m)?)?,
        ),
        ObjectKind::Staircase => (
            "staircase",
            serde_json::to_value(enumerate_staircase(n)?)?,
        ),
    })
}

fn catalog() -> Value {
    let specs: Vec<Value> = BUILTIN_SPEC_NAMES
        .iter()
        .map(|name| {
            let spec = builtin_spec(name).expect("built-in name");
            let vars: Vec<&str> = spec.variables().iter().map(|v| v.name()).collect();
            json!({ "name": name, "variables": vars })
        })
        .collect();
    let formulas: Vec<&str> = FormulaId::ALL.iter().map(|f| f.name()).collect();
    json!({
        "specs": specs,
        "formulas": formulas,
        "suites": SUITE_NAMES,
        "objects": [
            "motzkin",
            "motzkin-restricted",
            "dss",
            "plain-dss",
            "matchings",
            "staircase",
        ],
        "caps": {
            "motzkin-path-length": awmoments::lattice::motzkin::MAX_PATH_LENGTH,
            "restricted-path-transform-length": awmoments::lattice::motzkin::MAX_TRANSFORM_LENGTH,
            "striped-shape-size": awmoments::lattice::dss::MAX_DSS_SIZE,
            "plain-striped-shape-size": awmoments::lattice::dss::MAX_PLAIN_DSS_SIZE,
            "matching-points": awmoments::lattice::matching::MAX_MATCHING_POINTS,
            "staircase-size": awmoments::staircase::MAX_STAIRCASE_N,
            "staircase-list-size": awmoments::staircase::MAX_STAIRCASE_LIST_N,
            "staircase-moment-check-size": awmoments::staircase::MAX_MOMENT_CHECK_N,
            "laguerre-check-size": awmoments::related::MAX_LAGUERRE_CHECK_N,
            "partition-check-size": awmoments::related::MAX_PARTITION_CHECK_N,
            "euler-size": awmoments::related::MAX_EULER_N,
            "euler-quotient-size": awmoments::related::MAX_EULER_QUOTIENT_N,
            "euler-kernel-size": awmoments::related::MAX_KERNEL_K,
            "rescaling-size": awmoments::related::MAX_RESCALING_N,
            "exponent-magnitude": awmoments::arith::mono::MAX_EXPONENT,
        },
    })
}

fn pretty(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}
