//! Run configuration: units, output format, seed, and tolerance, merged from
//! CLI flags, an optional key = value config file, and the CL3_UNITS
//! environment variable (units only). Flags win over the file, the file over
//! the environment.

use std::fmt;
use std::path::Path;

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Units {
    Natural,
    Si,
}

impl Units {
    pub fn c(&self) -> f64 {
        match self {
            Units::Natural => 1.0,
            Units::Si => 299_792_458.0,
        }
    }

    pub fn h(&self) -> f64 {
        match self {
            Units::Natural => 1.0,
            Units::Si => 6.626_070_15e-34,
        }
    }

}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Units::Natural => write!(f, "natural"),
            Units::Si => write!(f, "si"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Fixed default seed so randomized suites are reproducible by default.
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Copy, Clone, Debug)]
pub struct RunConfig {
    pub units: Units,
    pub format: Format,
    pub seed: u64,
    pub tolerance: f64,
}

#[derive(Default)]
struct PartialConfig {
    units: Option<Units>,
    format: Option<Format>,
    seed: Option<u64>,
    tolerance: Option<f64>,
}

fn parse_config_file(path: &Path) -> Result<PartialConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let mut partial = PartialConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "units" => {
                partial.units = Some(parse_units(value)?);
            }
            "format" => {
                partial.format = Some(match value {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    other => return Err(format!("config key 'format': unknown value {other:?}")),
                });
            }
            "seed" => {
                partial.seed =
                    Some(value.parse().map_err(|e| {
                        format!("config key 'seed': bad integer {value:?} ({e})")
                    })?);
            }
            "tolerance" => {
                let tol: f64 = value
                    .parse()
                    .map_err(|e| format!("config key 'tolerance': bad number {value:?} ({e})"))?;
                if !(tol > 0.0 && tol.is_finite()) {
                    return Err(format!("config key 'tolerance': must be positive, got {tol}"));
                }
                partial.tolerance = Some(tol);
            }
            other => return Err(format!("unknown config key {other:?}")),
        }
    }
    Ok(partial)
}

fn parse_units(value: &str) -> Result<Units, String> {
    match value {
        "natural" => Ok(Units::Natural),
        "si" => Ok(Units::Si),
        other => Err(format!("unknown units {other:?} (expected natural or si)")),
    }
}

/// Merge the configuration sources. Flag values (already parsed by clap)
/// come in as options; `None` falls through to the file, then the
/// environment (units only), then the defaults.
pub fn resolve(
    flag_units: Option<Units>,
    flag_format: Option<Format>,
    flag_seed: Option<u64>,
    flag_tolerance: Option<f64>,
    config_path: Option<&Path>,
) -> Result<RunConfig, String> {
    let file = match config_path {
        Some(path) => parse_config_file(path)?,
        None => PartialConfig::default(),
    };
    let env_units = match std::env::var("CL3_UNITS") {
        Ok(value) => Some(parse_units(&value).map_err(|e| format!("CL3_UNITS: {e}"))?),
        Err(_) => None,
    };
    Ok(RunConfig {
        units: flag_units.or(file.units).or(env_units).unwrap_or(Units::Natural),
        format: flag_format.or(file.format).unwrap_or(Format::Json),
        seed: flag_seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        tolerance: flag_tolerance.or(file.tolerance).unwrap_or(DEFAULT_TOLERANCE),
    })
}
