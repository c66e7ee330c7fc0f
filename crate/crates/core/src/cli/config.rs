//! Run configuration: a JSON file overlaid with command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::CliError;
use crate::coupling::{CityConstants, Spacing};
use crate::screen_bie::{MAX_TRUNCATION, MAX_WAVENUMBER, MIN_TRUNCATION};
use crate::specfun::MIN_ARGUMENT;

/// Largest accepted grid size along any axis.
pub const MAX_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SpacingArg {
    Linear,
    Log,
}

impl From<SpacingArg> for Spacing {
    fn from(s: SpacingArg) -> Self {
        match s {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsFile {
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub c4: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub k: Option<f64>,
    pub x1_min: Option<f64>,
    pub x1_max: Option<f64>,
    pub x2_min: Option<f64>,
    pub x2_max: Option<f64>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
}

/// Shape of the JSON configuration file. Every field is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub constants: ConstantsFile,
    pub k_lo: Option<f64>,
    pub k_hi: Option<f64>,
    pub points: Option<usize>,
    pub spacing: Option<SpacingArg>,
    pub truncation: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    #[serde(default)]
    pub field: FieldFile,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }
}

/// Overrides given on the command line.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c3: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c4: Option<f64>,
    /// Lower end of the wavenumber range.
    #[arg(long, global = true)]
    pub kmin: Option<f64>,
    /// Upper end of the wavenumber range.
    #[arg(long, global = true)]
    pub kmax: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true)]
    pub points: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub spacing: Option<SpacingArg>,
    /// Chebyshev truncation order M; by default max(32, ceil(4k)).
    #[arg(long, global = true)]
    pub modes: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldGrid {
    pub k: f64,
    pub x1: (f64, f64),
    pub x2: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

/// Validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub constants: CityConstants<f64>,
    pub k_lo: f64,
    pub k_hi: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub truncation_override: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub field: FieldGrid,
}

fn check_range(name: &str, lo: f64, hi: f64) -> Result<(), CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Config(format!("{name}: need finite min < max, got [{lo}, {hi}]")));
    }
    Ok(())
}

fn check_count(name: &str, n: usize, min: usize) -> Result<(), CliError> {
    if !(min..=MAX_POINTS).contains(&n) {
        return Err(CliError::Config(format!("{name} must lie in [{min}, {MAX_POINTS}], got {n}")));
    }
    Ok(())
}

fn check_wavenumber(name: &str, k: f64) -> Result<(), CliError> {
    if !(k >= MIN_ARGUMENT && k <= MAX_WAVENUMBER) {
        return Err(CliError::Config(format!("{name} must lie in [{MIN_ARGUMENT:e}, {MAX_WAVENUMBER}], got {k}")));
    }
    Ok(())
}

impl RunConfig {
    /// Defaults, then the file (if any), then the flags; validated.
    pub fn resolve(flags: &Overrides, field_flags: &FieldFile) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let defaults = CityConstants::<f64>::default();
        let constants = CityConstants::new(
            flags.c1.or(file.constants.c1).unwrap_or(defaults.c1),
            flags.c2.or(file.constants.c2).unwrap_or(defaults.c2),
            flags.c3.or(file.constants.c3).unwrap_or(defaults.c3),
            flags.c4.or(file.constants.c4).unwrap_or(defaults.c4),
        );
        let field = FieldGrid {
            k: field_flags.k.or(file.field.k).unwrap_or(1.0),
            x1: (
                field_flags.x1_min.or(file.field.x1_min).unwrap_or(-1.0),
                field_flags.x1_max.or(file.field.x1_max).unwrap_or(1.0),
            ),
            x2: (
                field_flags.x2_min.or(file.field.x2_min).unwrap_or(-1.0),
                field_flags.x2_max.or(file.field.x2_max).unwrap_or(1.0),
            ),
            nx: field_flags.nx.or(file.field.nx).unwrap_or(41),
            ny: field_flags.ny.or(file.field.ny).unwrap_or(41),
        };
        let config = Self {
            constants,
            k_lo: flags.kmin.or(file.k_lo).unwrap_or(1e-3),
            k_hi: flags.kmax.or(file.k_hi).unwrap_or(5.0),
            points: flags.points.or(file.points).unwrap_or(200),
            spacing: flags.spacing.or(file.spacing).map_or(Spacing::Log, Spacing::from),
            truncation_override: flags.modes.or(file.truncation),
            output_path: flags.out.clone().or(file.output),
            format: flags.format.or(file.format),
            field,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !self.constants.is_finite() {
            return Err(CliError::Config("constants must be finite".into()));
        }
        check_wavenumber("kmin", self.k_lo)?;
        check_wavenumber("kmax", self.k_hi)?;
        if self.k_lo >= self.k_hi {
            return Err(CliError::Config(format!("kmin must be below kmax, got [{}, {}]", self.k_lo, self.k_hi)));
        }
        check_count("points", self.points, 2)?;
        if let Some(m) = self.truncation_override {
            if !(MIN_TRUNCATION..=MAX_TRUNCATION).contains(&m) {
                return Err(CliError::Config(format!(
                    "modes (truncation) must lie in [{MIN_TRUNCATION}, {MAX_TRUNCATION}], got {m}"
                )));
            }
        }
        check_wavenumber("field k", self.field.k)?;
        check_range("field x1", self.field.x1.0, self.field.x1.1)?;
        check_range("field x2", self.field.x2.0, self.field.x2.1)?;
        check_count("nx", self.field.nx, 2)?;
        check_count("ny", self.field.ny, 2)?;
        Ok(())
    }

    pub fn truncation_at(&self, k: f64) -> usize {
        self.truncation_override.unwrap_or_else(|| crate::coupling::auto_truncation(k))
    }
}
