//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsig_core::analytic::analytic_signal;
use hsig_core::bedrosian::{residual, residual_with_characterization};
use hsig_core::blaschke::{certify_membership, synthesize};
use hsig_core::operators::{apply, partial_hilbert};
use hsig_core::SignPattern;

use crate::export::{to_csv, Slice};
use crate::report::{CertificateJson, ReportJson};
use crate::{file, literal, CliError, ExitStatus};

/// Default residual tolerance of `bedrosian`.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;
/// Default certification tolerance of `blaschke`.
pub const DEFAULT_CERTIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "hsig", version, about = "Hyperoctant multipliers, Bedrosian checks and Blaschke-phase signals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a multiplier, a partial Hilbert transform or an analytic-signal map.
    Transform(TransformArgs),
    /// Compare T(fg) with f·Tg.
    Bedrosian(BedrosianArgs),
    /// Synthesize a signal from Blaschke zeros and envelopes.
    Blaschke(BlaschkeArgs),
    /// Export a signal file as CSV.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("map").required(true).args(["op", "hilbert", "analytic"])))]
pub struct TransformArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Operator literal `{"dim": d, "quadrant_values": [[re, im], …]}`.
    #[arg(long, value_name = "JSON")]
    pub op: Option<String>,
    /// Partial Hilbert transform along this axis (1-based).
    #[arg(long, value_name = "AXIS")]
    pub hilbert: Option<usize>,
    /// Sign pattern such as `+-`.
    #[arg(long, value_name = "PATTERN", allow_hyphen_values = true)]
    pub analytic: Option<String>,
}

#[derive(Debug, Args)]
pub struct BedrosianArgs {
    #[arg(long, value_name = "FILE")]
    pub f: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub g: PathBuf,
    #[arg(long, value_name = "JSON")]
    pub op: String,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Also compute the spectral characterization integral.
    #[arg(long)]
    pub characterization: bool,
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BlaschkeArgs {
    /// Zeros as `[[re, im], …]`.
    #[arg(long, value_name = "JSON")]
    pub zeros: String,
    /// `flat`, `raised-cosine`, `half-gaussian`, or an envelope file.
    #[arg(long, value_name = "NAME|FILE")]
    pub envelope: String,
    /// `N,L`; `L` may carry a `pi` suffix.
    #[arg(long, value_name = "N,L")]
    pub grid: String,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    #[arg(long)]
    pub certify: bool,
    #[arg(long, default_value_t = DEFAULT_CERTIFY_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Fix a storage index on an axis (1-based), e.g. `2=0`.
    #[arg(long, value_name = "AXIS=INDEX")]
    pub slice: Vec<Slice>,
    /// Write here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Checks `HSIG_THREADS` if set. The computation is single-threaded, so a
/// valid value has no further effect.
pub fn check_threads(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("HSIG_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<ExitStatus, CliError> {
    match cli.command {
        Command::Transform(a) => transform(&a),
        Command::Bedrosian(a) => bedrosian(&a, stdout),
        Command::Blaschke(a) => blaschke(&a, stdout),
        Command::Export(a) => export(&a, stdout),
    }
}

fn transform(a: &TransformArgs) -> Result<ExitStatus, CliError> {
    let s = file::read(&a.input)?;
    let d = s.grid().dim();
    let out = if let Some(text) = &a.op {
        apply(&literal::parse_operator(text)?, &s)?
    } else if let Some(axis) = a.hilbert {
        apply(&partial_hilbert(axis, d)?, &s)?
    } else {
        let text = a.analytic.as_deref().expect("clap requires one map");
        analytic_signal(&s, SignPattern::parse(text)?)?
    };
    file::write(&a.out, &out)?;
    Ok(ExitStatus::Holds)
}

fn emit_json(value: &impl serde::Serialize, stdout: &mut dyn Write, path: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    if let Some(p) = path {
        std::fs::write(p, &text).map_err(|e| CliError::io(p, e))?;
    }
    writeln!(stdout, "{text}").map_err(|e| CliError::io("<stdout>", e))
}

fn bedrosian(a: &BedrosianArgs, stdout: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let f = file::read(&a.f)?;
    let g = file::read(&a.g)?;
    let op = literal::parse_operator(&a.op)?;
    let report = if a.characterization {
        residual_with_characterization(&op, &f, &g, a.tolerance)?
    } else {
        residual(&op, &f, &g, a.tolerance)?
    };
    emit_json(&ReportJson::from(&report), stdout, a.report.as_deref())?;
    Ok(if report.verdict.holds() { ExitStatus::Holds } else { ExitStatus::Fails })
}

fn blaschke(a: &BlaschkeArgs, stdout: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let bp = literal::parse_zeros(&a.zeros)?;
    let grid = literal::parse_line_grid(&a.grid)?;
    let env = literal::resolve_envelope(&a.envelope, &bp)?;
    let f = synthesize(&bp, &env, &grid)?;
    file::write(&a.out, &f)?;
    if !a.certify {
        return Ok(ExitStatus::Holds);
    }
    let cert = certify_membership(&f, &bp, a.tolerance)?;
    let json = CertificateJson {
        real_residual: cert.real_residual,
        complex_residual: cert.complex_residual,
        tolerance: cert.tolerance,
        verdict: if cert.holds() { "holds" } else { "fails" },
    };
    emit_json(&json, stdout, None)?;
    Ok(if cert.holds() { ExitStatus::Holds } else { ExitStatus::Fails })
}

fn export(a: &ExportArgs, stdout: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let s = file::read(&a.input)?;
    let csv = match a.format {
        Format::Csv => to_csv(&s, &a.slice)?,
    };
    match &a.out {
        Some(p) => std::fs::write(p, csv).map_err(|e| CliError::io(p, e))?,
        None => stdout.write_all(csv.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?,
    }
    Ok(ExitStatus::Holds)
}
