//! Command-line front end: scans, mode reports, asymptotic tables and field maps.
//!
//! Each command resolves a [`RunConfig`], computes a table and writes it once,
//! atomically, to the output path (or standard output).

pub mod config;
pub mod table;

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::coupling::{self, SignRegime};
use crate::screen_bie;

pub use config::{ConfigFile, FieldFile, Format, Overrides, RunConfig};
pub use table::{format_real, parse_real_csv, Cell, Table};

/// Distance to the segment below which field points are skipped.
pub const FIELD_BAND: f64 = 1e-3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("solver failure: {0}")]
    Solver(#[from] crate::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "coupling-modes", version, about = "Seismic coupling modes of a tall building on a unit foundation")]
pub struct Cli {
    #[command(flatten)]
    pub overrides: Overrides,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Low,
    High,
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Branch {
    Low,
    High,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the flux and the gap F(k) on a grid.
    Scan,
    /// Locate and refine the roots of F(k).
    Modes,
    /// Tables comparing the flux or the gap with their asymptotic laws.
    Asympt {
        #[arg(value_enum)]
        which: Which,
        /// Model used by the gap table; defaults to low when kmax <= 1.
        #[arg(long, value_enum)]
        branch: Option<Branch>,
    },
    /// Displacement on a rectangular grid.
    Field {
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x1_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x1_max: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x2_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x2_max: Option<f64>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
    },
}

/// Runs one command end to end.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let field_flags = match &cli.command {
        Command::Field { k, x1_min, x1_max, x2_min, x2_max, nx, ny } => FieldFile {
            k: *k,
            x1_min: *x1_min,
            x1_max: *x1_max,
            x2_min: *x2_min,
            x2_max: *x2_max,
            nx: *nx,
            ny: *ny,
        },
        _ => FieldFile::default(),
    };
    let config = RunConfig::resolve(&cli.overrides, &field_flags)?;
    let text = render(&cli.command, &config)?;
    write_output(config.output_path.as_deref(), &text)
}

/// Computes the output text of a command.
pub fn render(command: &Command, config: &RunConfig) -> Result<String, CliError> {
    match command {
        Command::Scan => {
            let table = cmd_scan(config)?;
            Ok(emit(&table, config.format.unwrap_or(Format::Csv)))
        }
        Command::Modes => cmd_modes(config),
        Command::Asympt { which, branch } => {
            let table = cmd_asympt(*which, *branch, config)?;
            Ok(emit(&table, config.format.unwrap_or(Format::Csv)))
        }
        Command::Field { .. } => {
            let table = cmd_field(config)?;
            Ok(emit(&table, config.format.unwrap_or(Format::Csv)))
        }
    }
}

fn emit(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn samples(config: &RunConfig) -> Result<Vec<coupling::CouplingSample<f64>>, CliError> {
    Ok(coupling::scan_with_truncation(
        &config.constants,
        config.k_lo,
        config.k_hi,
        config.points,
        config.spacing,
        config.truncation_override,
    )?)
}

/// `k,re_flux,im_flux,gap` on the configured grid.
pub fn cmd_scan(config: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["k", "re_flux", "im_flux", "gap"]);
    for s in samples(config)? {
        table.push_reals(&[s.k, s.flux.re, s.flux.im, s.gap]);
    }
    Ok(table)
}

#[derive(Serialize)]
struct ConstantsRecord {
    c1: Box<RawValue>,
    c2: Box<RawValue>,
    c3: Box<RawValue>,
    c4: Box<RawValue>,
}

#[derive(Serialize)]
struct ModeRecord {
    k_root: Box<RawValue>,
    bracket: [Box<RawValue>; 2],
    residual: Box<RawValue>,
    iterations: usize,
    close_to_neighbor: bool,
}

#[derive(Serialize)]
struct ModesReport {
    constants: ConstantsRecord,
    regime: &'static str,
    k_lo: Box<RawValue>,
    k_hi: Box<RawValue>,
    points: usize,
    modes: Vec<ModeRecord>,
}

fn regime_name(r: SignRegime) -> &'static str {
    match r {
        SignRegime::AllPositive => "all_positive",
        SignRegime::NegativeC3 => "negative_c3",
        SignRegime::Other => "other",
    }
}

/// Refined roots of `F` on the configured grid. JSON by default.
pub fn cmd_modes(config: &RunConfig) -> Result<String, CliError> {
    let samples = samples(config)?;
    let modes = coupling::find_modes_with_truncation(&samples, &config.constants, config.truncation_override)?;
    if config.format == Some(Format::Csv) {
        let mut table = Table::new(vec!["k_root", "k_lo", "k_hi", "residual", "iterations", "close_to_neighbor"]);
        for m in &modes {
            table.push(vec![
                Cell::Real(m.k_root),
                Cell::Real(m.bracket.0),
                Cell::Real(m.bracket.1),
                Cell::Real(m.residual),
                Cell::Int(m.iterations as u64),
                Cell::Bool(m.close_to_neighbor),
            ]);
        }
        return Ok(table.to_csv());
    }
    let real = table::json_real;
    let c = &config.constants;
    let report = ModesReport {
        constants: ConstantsRecord { c1: real(c.c1), c2: real(c.c2), c3: real(c.c3), c4: real(c.c4) },
        regime: regime_name(c.regime()),
        k_lo: real(config.k_lo),
        k_hi: real(config.k_hi),
        points: config.points,
        modes: modes
            .iter()
            .map(|m| ModeRecord {
                k_root: real(m.k_root),
                bracket: [real(m.bracket.0), real(m.bracket.1)],
                residual: real(m.residual),
                iterations: m.iterations,
                close_to_neighbor: m.close_to_neighbor,
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
    out.push('\n');
    Ok(out)
}

/// Asymptotic comparison tables.
///
/// * `low`: `log10_k, log10_re_flux, log10_re_model` with model `pi k H_1/H_0`.
/// * `high`: `k, im_flux_over_k, re_flux_over_k`.
/// * `gap`: `log10_k, log10_abs_gap, log10_model` with model `C2 pi / |ln k|`
///   (low branch) or `C3 k^4` (high branch).
pub fn cmd_asympt(which: Which, branch: Option<Branch>, config: &RunConfig) -> Result<Table, CliError> {
    let samples = samples(config)?;
    let table = match which {
        Which::Low => {
            let mut t = Table::new(vec!["log10_k", "log10_re_flux", "log10_re_model"]);
            for s in &samples {
                let model = coupling::low_freq_model(s.k)?;
                t.push_reals(&[s.k.log10(), s.flux.re.log10(), model.re.log10()]);
            }
            t
        }
        Which::High => {
            let mut t = Table::new(vec!["k", "im_flux_over_k", "re_flux_over_k"]);
            for s in &samples {
                t.push_reals(&[s.k, s.flux.im / s.k, s.flux.re / s.k]);
            }
            t
        }
        Which::Gap => {
            let branch = branch.unwrap_or(if config.k_hi <= 1.0 { Branch::Low } else { Branch::High });
            let mut t = Table::new(vec!["log10_k", "log10_abs_gap", "log10_model"]);
            for s in &samples {
                let model = match branch {
                    Branch::Low => coupling::gap_low_model(s.k, &config.constants).abs(),
                    Branch::High => coupling::gap_high_model(s.k, &config.constants).abs(),
                };
                t.push_reals(&[s.k.log10(), s.gap.abs().log10(), model.log10()]);
            }
            t
        }
    };
    Ok(table)
}

/// `x1,x2,re_u,im_u` over the configured grid, skipping points closer than
/// [`FIELD_BAND`] to the segment.
pub fn cmd_field(config: &RunConfig) -> Result<Table, CliError> {
    let f = &config.field;
    let density = screen_bie::solve_density(f.k, config.truncation_at(f.k))?;
    let axis = |(lo, hi): (f64, f64), n: usize| -> Vec<f64> {
        (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect()
    };
    let xs = axis(f.x1, f.nx);
    let ys = axis(f.x2, f.ny);
    let mut table = Table::new(vec!["x1", "x2", "re_u", "im_u"]);
    for &x2 in &ys {
        for &x1 in &xs {
            if screen_bie::SEGMENT.distance(x1, x2) < FIELD_BAND {
                continue;
            }
            let u = screen_bie::evaluate_field(&density, (x1, x2))?.value;
            table.push_reals(&[x1, x2, u.re, u.im]);
        }
    }
    Ok(table)
}

/// Writes `text` to `path` via a temporary file in the same directory and a
/// rename, or to standard output.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
        }
    }
    Ok(())
}
