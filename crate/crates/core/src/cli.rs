//! Command-line front end. Exit codes: 0 success, 1 verification failure or
//! runtime error, 2 usage error (including out-of-range arguments).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::characters::{char_two_row, fixed_subset_counts};
use crate::combinatorics::conjugacy_classes;
use crate::error::{Error, Result};
use crate::export::{write_csv, write_json};
use crate::pseudomoments::build_y;
use crate::report::CheckOutcome;
use crate::schur::{gram_schur_property_check, iterated_schur_on_y, volume_identity_check, GramDims};
use crate::spectrum::{max_relative_deviation, numeric_eigensolve, predicted_spectrum, spectrum_report, SpectrumReport};
use crate::verify::{self, parse_suites, Fault, VerifyOptions, JACOBI_TOLERANCE, VOLUME_TRIALS, GRAM_SCHUR_TRIALS};

#[derive(Parser, Debug)]
#[command(name = "pmspec", version, about = "Exact spectra of hypercube pseudomoment matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write Y^(n) as a dense list of entries.
    Matrix(MatrixArgs),
    /// Eigenvalues and multiplicities of Y^(n).
    Spectrum(SpectrumArgs),
    /// Run verification suites over a range of n.
    Verify(VerifyArgs),
    /// Two-row character table χ_(n-d,d) by cycle type.
    Characters(CharactersArgs),
    /// Degree-block Schur complements of Y^(n) and the seeded Gram checks.
    Schur(SchurArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Shorthand for --n-min N --n-max N.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
    /// `all` or a comma-separated list of characters, appendix, pseudomoments, apolar, spectrum, schur.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Report format on standard output; a plain summary when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Shift one eigenvalue to exercise the failure path.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct CharactersArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SchurArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of degree blocks to eliminate; defaults to ⌊n/2⌋.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

fn sink(output: &Output) -> Result<Box<dyn Write>> {
    Ok(match &output.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn json_line(mut w: impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Parse(e.to_string()))?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Matrix(a) => cmd_matrix(&a),
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Characters(a) => cmd_characters(&a),
        Command::Schur(a) => cmd_schur(&a),
    }
}

/// Exit code for an error that escaped a command.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Argument(_) | Error::Capacity { .. } | Error::Parse(_) | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

pub fn cmd_matrix(a: &MatrixArgs) -> Result<i32> {
    let y = build_y(a.n)?;
    crate::error::capacity("dense matrix export (n ≤ 12)", crate::export::MAX_EXPORT_N, a.n)?;
    let mut w = sink(&a.output)?;
    match a.format {
        Format::Csv => write_csv(&y, &mut w)?,
        Format::Json => write_json(&y, &mut w)?,
    }
    w.flush()?;
    Ok(0)
}

#[derive(Serialize)]
struct FloatSpectrum<'a> {
    #[serde(flatten)]
    exact: &'a SpectrumReport,
    numeric: Vec<f64>,
    max_relative_deviation: f64,
    tolerance: f64,
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<i32> {
    let report = spectrum_report(a.n, a.mode == Mode::Exact)?;
    let mut code = 0;
    if [report.annihilation, report.traces, report.rank].contains(&Some(false)) {
        code = 1;
    }
    let mut w = sink(&a.output)?;
    match (a.mode, a.format) {
        (Mode::Exact, Format::Json) => json_line(&mut w, &report)?,
        (Mode::Float, Format::Json) => {
            let numeric = numeric_eigensolve(a.n, JACOBI_TOLERANCE)?;
            let dev = max_relative_deviation(&numeric, &predicted_spectrum(a.n)?)?;
            if dev > verify::FLOAT_TOLERANCE {
                code = 1;
            }
            let doc = FloatSpectrum { exact: &report, numeric, max_relative_deviation: dev, tolerance: verify::FLOAT_TOLERANCE };
            json_line(&mut w, &doc)?;
        }
        (Mode::Exact, Format::Csv) => {
            let mut c = csv_writer(&mut w);
            c.write_record(["d", "lambda", "multiplicity"]).map_err(csv_err)?;
            for e in &report.eigenvalues {
                c.write_record([e.d.to_string(), e.lambda.clone(), e.multiplicity.clone()]).map_err(csv_err)?;
            }
            c.write_record(["zero", "0", &report.zero_multiplicity]).map_err(csv_err)?;
            c.flush()?;
        }
        (Mode::Float, Format::Csv) => {
            let numeric = numeric_eigensolve(a.n, JACOBI_TOLERANCE)?;
            let predicted = predicted_spectrum(a.n)?;
            let dev = max_relative_deviation(&numeric, &predicted)?;
            if dev > verify::FLOAT_TOLERANCE {
                code = 1;
            }
            let mut c = csv_writer(&mut w);
            c.write_record(["index", "numeric", "predicted"]).map_err(csv_err)?;
            for (i, (x, p)) in numeric.iter().zip(&predicted).enumerate() {
                c.write_record([i.to_string(), format!("{x:.17e}"), format!("{p:.17e}")]).map_err(csv_err)?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(code)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let (n_min, n_max) = a.n.map_or((a.n_min, a.n_max), |n| (n, n));
    let opts = VerifyOptions {
        n_min,
        n_max,
        suites: parse_suites(&a.suite)?,
        seed: a.seed,
        fault: a.inject_fault.then_some(Fault::Lambda),
    };
    let report = verify::run(&opts)?;
    if let Some(path) = &a.output.out {
        json_line(BufWriter::new(File::create(path)?), &report)?;
    }
    let mut out = BufWriter::new(io::stdout().lock());
    match a.format {
        None => write!(out, "{report}")?,
        Some(Format::Json) => json_line(&mut out, &report)?,
        Some(Format::Csv) => {
            let mut c = csv_writer(&mut out);
            c.write_record(["name", "suite", "n", "status", "cases", "reason", "witnesses", "seconds"]).map_err(csv_err)?;
            for r in &report.checks {
                c.write_record([
                    r.name.clone(),
                    r.suite.to_string(),
                    r.n.map(|n| n.to_string()).unwrap_or_default(),
                    format!("{:?}", r.status).to_lowercase(),
                    r.cases.to_string(),
                    r.reason.clone().unwrap_or_default(),
                    r.witnesses.join("; "),
                    format!("{:.3}", r.seconds),
                ])
                .map_err(csv_err)?;
            }
            c.flush()?;
        }
    }
    out.flush()?;
    Ok(if report.ok { 0 } else { 1 })
}

#[derive(Serialize)]
struct CharacterRow {
    cycle_type: String,
    class_size: String,
    c_prev: String,
    c_d: String,
    chi: String,
}

#[derive(Serialize)]
struct CharacterTable {
    n: usize,
    d: usize,
    rows: Vec<CharacterRow>,
}

pub fn cmd_characters(a: &CharactersArgs) -> Result<i32> {
    let mut rows = Vec::new();
    for (ct, size) in conjugacy_classes(a.n)? {
        let c = fixed_subset_counts(&ct);
        let prev = if a.d == 0 { "0".to_string() } else { c[a.d - 1].to_string() };
        rows.push(CharacterRow {
            chi: char_two_row(a.n, a.d, &ct)?.to_string(),
            cycle_type: ct.to_string(),
            class_size: size.to_string(),
            c_prev: prev,
            c_d: c[a.d].to_string(),
        });
    }
    let mut w = sink(&a.output)?;
    match a.format {
        Format::Json => json_line(&mut w, &CharacterTable { n: a.n, d: a.d, rows })?,
        Format::Csv => {
            let mut c = csv_writer(&mut w);
            c.write_record(["cycle_type", "class_size", "c_prev", "c_d", "chi"]).map_err(csv_err)?;
            for r in &rows {
                c.write_record([&r.cycle_type, &r.class_size, &r.c_prev, &r.c_d, &r.chi]).map_err(csv_err)?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(0)
}

#[derive(Serialize)]
struct SchurBlock {
    degree: usize,
    size: usize,
    /// Block entry for `|S ∩ T| = 0, 1, …, degree`.
    johnson_values: Vec<String>,
}

#[derive(Serialize)]
struct SchurDoc {
    n: usize,
    steps: usize,
    seed: u64,
    blocks: Vec<SchurBlock>,
    checks: Vec<CheckOutcome>,
    ok: bool,
}

pub fn cmd_schur(a: &SchurArgs) -> Result<i32> {
    let steps = a.steps.unwrap_or(a.n / 2);
    let it = iterated_schur_on_y(a.n, steps)?;
    let blocks = it
        .blocks
        .iter()
        .zip(&it.johnson_values)
        .enumerate()
        .map(|(k, (b, v))| SchurBlock { degree: k, size: b.rows(), johnson_values: v.iter().map(ToString::to_string).collect() })
        .collect();
    let checks = vec![
        it.outcome,
        gram_schur_property_check(a.seed, GRAM_SCHUR_TRIALS, GramDims::default())?,
        volume_identity_check(a.seed, VOLUME_TRIALS)?,
    ];
    let ok = checks.iter().all(CheckOutcome::passed);
    let doc = SchurDoc { n: a.n, steps, seed: a.seed, blocks, checks, ok };
    json_line(sink(&a.output)?, &doc)?;
    Ok(if ok { 0 } else { 1 })
}
