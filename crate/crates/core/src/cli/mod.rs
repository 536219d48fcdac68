//! The `eqtheta` command line: `theta`, `verify`, `stark0` and `selftest`.
//!
//! Exit codes: 0 when everything verified or passed, 1 for usage and config
//! errors, 2 when a mathematical check failed.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

pub use config::{parse_config, SweepConfig};

use crate::congruences::{sweep, CongruenceReport, FaultInjection, Summary};
use crate::cyclotomic::{cyclotomic_unit_log_sum, REGULATOR_SIGN};
use crate::error::{Error, Result};
use crate::gring::{characters, unit_group};
use crate::lfunctions::{l_derivative_at_zero, minimal_s, theta};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "eqtheta", version, about = "Exact theta elements and congruence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print theta_{S,T}(j) for Q(mu_f) as `sigma_a<TAB>coefficient` rows.
    Theta {
        #[arg(long)]
        f: u64,
        #[arg(long = "T", value_delimiter = ',')]
        t: Vec<u64>,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long = "S-extra", value_delimiter = ',')]
        s_extra: Vec<u64>,
    },
    /// Run a congruence sweep and write a JSON report.
    Verify {
        /// Sweep config; the built-in default grid is used when absent.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report path; overrides the config's `output`. Without either the report goes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Corrupt one theta element before checking.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Compare L'(chi, 0) with the cyclotomic-unit regulator for even primitive chi.
    Stark0 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![5u64, 8, 12, 13])]
        f: Vec<u64>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Feed a corrupted theta element to one suite.
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Debug, Serialize)]
struct Meta {
    version: &'static str,
    seed: u64,
    timestamp: u64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    meta: Meta,
    results: &'a [CongruenceReport],
    summary: Summary,
}

fn timestamp() -> u64 {
    if let Some(epoch) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.parse().ok()) {
        return epoch;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Serialize a sweep result in the report schema.
pub fn report_json(results: &[CongruenceReport], seed: u64) -> String {
    let report = Report {
        meta: Meta {
            version: env!("CARGO_PKG_VERSION"),
            seed,
            timestamp: timestamp(),
        },
        results,
        summary: Summary::of(results),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report is serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarkRow {
    pub f: u64,
    /// Position of `chi` in the ordering of [`characters`].
    pub chi: usize,
    pub order: u64,
    pub derivative: [f64; 2],
    pub regulator_side: [f64; 2],
    pub difference: f64,
}

/// One row per even nontrivial primitive character mod `f`:
/// `L'(chi^{-1}, 0)` against `s * R(chi) / 2`.
pub fn stark_rows(f: u64) -> Result<Vec<StarkRow>> {
    let chars = characters(&unit_group(f)?)?;
    let mut rows = Vec::new();
    for (idx, chi) in chars.iter().enumerate() {
        if chi.is_trivial() || !chi.is_even() || !chi.is_primitive()? {
            continue;
        }
        let lhs = l_derivative_at_zero(&chi.inverse())?;
        let rhs: Complex64 = cyclotomic_unit_log_sum(f, chi)? * (0.5 * REGULATOR_SIGN);
        rows.push(StarkRow {
            f,
            chi: idx,
            order: chi.order(),
            derivative: [lhs.re, lhs.im],
            regulator_side: [rhs.re, rhs.im],
            difference: (lhs - rhs).norm(),
        });
    }
    if rows.is_empty() {
        return Err(Error::OutsideVerifiedRegime(format!(
            "no even nontrivial primitive character mod {f}"
        )));
    }
    Ok(rows)
}

/// Parse `args` (including the program name) and run the command, writing to
/// `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Theta { f, t, j, s_extra } => cmd_theta(f, &t, j, &s_extra, out),
        Command::Verify {
            config,
            output,
            seed,
            inject_fault,
        } => cmd_verify(config, output, seed, inject_fault, out),
        Command::Stark0 { f, tolerance } => cmd_stark0(&f, tolerance, out),
        Command::Selftest { seed, corrupt } => cmd_selftest(seed, corrupt, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(e.to_string())
}

fn cmd_theta(f: u64, t: &[u64], j: i64, s_extra: &[u64], out: &mut dyn Write) -> Result<i32> {
    let s = minimal_s(f, s_extra);
    let th = theta(f, &s, t, j)?;
    let group = th.group().clone();
    let mut rows: Vec<(u64, String)> = (0..group.order())
        .map(|x| (group.label(x), th.value().coeff(x).to_string()))
        .collect();
    rows.sort();
    for (label, coef) in rows {
        writeln!(out, "sigma_{label}\t{coef}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    config: Option<PathBuf>,
    output: Option<PathBuf>,
    seed: Option<u64>,
    inject_fault: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let cfg = match &config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => SweepConfig::default(),
    };
    let seed = seed.unwrap_or(cfg.seed);
    let fault = if inject_fault {
        FaultInjection::CorruptTheta
    } else {
        FaultInjection::None
    };
    let results = sweep(&cfg.grid, fault);
    let summary = Summary::of(&results);
    let json = report_json(&results, seed);
    match output.or(cfg.output) {
        Some(path) => {
            std::fs::write(&path, json).map_err(io_err)?;
            writeln!(
                out,
                "verified {} failed {} skipped {} -> {}",
                summary.verified,
                summary.failed,
                summary.skipped,
                path.display()
            )
            .map_err(io_err)?;
        }
        None => out.write_all(json.as_bytes()).map_err(io_err)?,
    }
    Ok(if summary.failed > 0 { EXIT_FAILED } else { EXIT_OK })
}

fn cmd_stark0(fs: &[u64], tolerance: f64, out: &mut dyn Write) -> Result<i32> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::InvalidArgument("tolerance must be non-negative".into()));
    }
    let mut rows = Vec::new();
    for &f in fs {
        rows.extend(stark_rows(f)?);
    }
    writeln!(out, "f\tchi\torder\tL'(chi^-1,0)\ts*R(chi)/2\t|diff|\tstatus").map_err(io_err)?;
    let mut failed = false;
    for r in &rows {
        let ok = r.difference <= tolerance;
        failed |= !ok;
        writeln!(
            out,
            "{}\t{}\t{}\t{:.12}{:+.12}i\t{:.12}{:+.12}i\t{:.3e}\t{}",
            r.f,
            r.chi,
            r.order,
            r.derivative[0],
            r.derivative[1],
            r.regulator_side[0],
            r.regulator_side[1],
            r.difference,
            if ok { "pass" } else { "FAIL" }
        )
        .map_err(io_err)?;
    }
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn cmd_selftest(seed: u64, corrupt: bool, out: &mut dyn Write) -> Result<i32> {
    let results = selftest::run_all(seed, corrupt);
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut failed = false;
    for r in &results {
        failed |= !r.passed;
        let mark = if r.passed { "pass" } else { "FAIL" };
        if r.detail.is_empty() {
            writeln!(out, "{:width$}  {mark}", r.name).map_err(io_err)?;
        } else {
            writeln!(out, "{:width$}  {mark}  {}", r.name, r.detail).map_err(io_err)?;
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} suites passed", results.len()).map_err(io_err)?;
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}
