//! Run configuration: a TOML document with an `[array]` table and optional
//! `[grid]`, `[drive]` and `[output]` tables.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use wqed_eit::array_model::{center_detunings, ArrayConfig};

use crate::CliError;

/// Mean offsets below this are removed silently.
pub const CENTERING_WARN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Spectrum,
    Modes,
    Poles,
    Lindblad,
    Darkstate,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Spectrum => "spectrum",
            Mode::Modes => "modes",
            Mode::Poles => "poles",
            Mode::Lindblad => "lindblad",
            Mode::Darkstate => "darkstate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Mode::Spectrum,
            Mode::Modes,
            Mode::Poles,
            Mode::Lindblad,
            Mode::Darkstate,
        ]
        .into_iter()
        .find(|m| m.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_atoms: Option<usize>,
    pub delta_omega: Vec<f64>,
    /// Empty means unit decay for every atom.
    #[serde(default)]
    pub gamma: Vec<f64>,
    /// Empty means `φᵢ = (i−1)·nπ` with `n = spacing_multiple` (default 1).
    #[serde(default)]
    pub phase: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing_multiple: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            min: -4.0,
            max: 4.0,
            points: 2001,
        }
    }
}

impl Grid {
    /// `min:max:points`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::Config(format!("--grid: expected min:max:points, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            min: parts[0].trim().parse().map_err(|_| bad())?,
            max: parts[1].trim().parse().map_err(|_| bad())?,
            points: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }

    /// Evenly spaced points with both ends included.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64) / last
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(CliError::Config("grid: min and max must be finite".into()));
        }
        if self.points == 0 {
            return Err(CliError::Config("grid.points: must be at least 1".into()));
        }
        if self.points > 1 && !(self.max > self.min) {
            return Err(CliError::Config(format!(
                "grid: max ({}) must exceed min ({})",
                self.max, self.min
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Drive {
    /// Incident photon flux `|α|²` in units of Γ.
    pub alpha2: f64,
    #[serde(default)]
    pub phase: f64,
}

impl Default for Drive {
    fn default() -> Self {
        Self {
            alpha2: 0.01,
            phase: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Standard output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub mode: Mode,
    pub array: ArraySection,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub drive: Drive,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub config: RunConfig,
    pub warnings: Vec<String>,
}

/// Parse and validate a TOML run configuration, filling defaults.
pub fn parse_config(text: &str) -> Result<Parsed, CliError> {
    let value: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Config(format!("malformed config: {e}")))?;
    let rc: RunConfig = serde_path_to_error::deserialize(toml::Value::Table(value)).map_err(|e| {
        let path = e.path().to_string();
        CliError::Config(format!("{path}: {}", e.into_inner()))
    })?;
    rc.resolve()
}

impl RunConfig {
    /// Apply defaults and check everything that does not need the library.
    pub fn resolve(mut self) -> Result<Parsed, CliError> {
        let a = &mut self.array;
        let n = a.delta_omega.len();
        if n == 0 {
            return Err(CliError::Config("array.delta_omega: must list at least one atom".into()));
        }
        match a.n_atoms {
            Some(m) if m != n => {
                return Err(CliError::Config(format!(
                    "array.n_atoms: {m} does not match the {n} entries of delta_omega"
                )))
            }
            _ => a.n_atoms = Some(n),
        }
        if a.gamma.is_empty() {
            a.gamma = vec![1.0; n];
        }
        if a.phase.is_empty() {
            let m = *a.spacing_multiple.get_or_insert(1);
            a.phase = (0..n).map(|i| i as f64 * m as f64 * PI).collect();
        }
        for (field, v) in [("gamma", &a.gamma), ("phase", &a.phase)] {
            if v.len() != n {
                return Err(CliError::Config(format!(
                    "array.{field}: expected {n} entries, got {}",
                    v.len()
                )));
            }
        }
        self.grid.validate()?;
        if !(self.drive.alpha2.is_finite() && self.drive.alpha2 >= 0.0) {
            return Err(CliError::Config("drive.alpha2: must be finite and non-negative".into()));
        }
        if !self.drive.phase.is_finite() {
            return Err(CliError::Config("drive.phase: must be finite".into()));
        }

        let mut warnings = Vec::new();
        let (_, shift) = self.array_config()?;
        if shift.abs() > CENTERING_WARN_TOL {
            warnings.push(format!(
                "delta_omega has mean {shift}; shifted to zero mean, results are reported in the original frame"
            ));
        }
        Ok(Parsed {
            config: self,
            warnings,
        })
    }

    /// The library configuration with zero-mean detunings, and the removed
    /// mean. Frequencies in the library frame plus the mean give the user's.
    pub fn array_config(&self) -> Result<(ArrayConfig, f64), CliError> {
        let a = &self.array;
        let mut dw = a.delta_omega.clone();
        let shift = center_detunings(&mut dw);
        let cfg = ArrayConfig::new(dw, a.gamma.clone(), a.phase.clone(), a.spacing_multiple)
            .map_err(|e| CliError::Config(format!("array: {e}")))?;
        Ok((cfg, shift))
    }

    /// TOML form with every default written out; parsing it gives back the
    /// same configuration.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let p = parse_config("[array]\nn_atoms = 2\ndelta_omega = [-0.25, 0.25]\n").unwrap();
        let rc = p.config;
        assert!(p.warnings.is_empty());
        assert_eq!(rc.mode, Mode::Spectrum);
        assert_eq!(rc.grid, Grid::default());
        assert_eq!(rc.output.format, Format::Csv);
        assert_eq!(rc.array.gamma, vec![1.0, 1.0]);
        assert_eq!(rc.array.phase, vec![0.0, PI]);
        assert_eq!(rc.array.spacing_multiple, Some(1));
    }

    #[test]
    fn off_centre_detunings_are_shifted() {
        let p = parse_config("[array]\ndelta_omega = [0.0, 1.0]\n").unwrap();
        assert_eq!(p.warnings.len(), 1);
        let (cfg, shift) = p.config.array_config().unwrap();
        assert_eq!(cfg.delta_omega(), &[-0.5, 0.5]);
        assert_eq!(shift, 0.5);
        // The echo keeps the user's numbers.
        assert_eq!(p.config.array.delta_omega, vec![0.0, 1.0]);
    }

    #[test]
    fn schema_errors_name_the_field() {
        let err = parse_config("[array]\ndelta_omega = [0.0, \"x\"]\n").unwrap_err();
        assert!(err.to_string().contains("array.delta_omega"), "{err}");
        let err = parse_config("mode = \"bogus\"\n[array]\ndelta_omega = [0.0]\n").unwrap_err();
        assert!(err.to_string().contains("mode"), "{err}");
        let err = parse_config("[array]\ndelta_omega = [0.0]\n[grid]\nmin = 0\n").unwrap_err();
        assert!(err.to_string().contains("grid"), "{err}");
        let err = parse_config("[array]\ndelta_omega = [0.0]\ncolour = 1\n").unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
    }

    #[test]
    fn validation_errors() {
        for doc in [
            "[array]\ndelta_omega = []\n",
            "[array]\nn_atoms = 3\ndelta_omega = [0.0, 0.0]\n",
            "[array]\ndelta_omega = [0.0, 0.0]\ngamma = [1.0]\n",
            "[array]\ndelta_omega = [0.0]\n[grid]\nmin = 0.0\nmax = 1.0\npoints = 0\n",
            "[array]\ndelta_omega = [0.0]\n[grid]\nmin = 1.0\nmax = 0.0\npoints = 5\n",
            "[array]\ndelta_omega = [0.0]\n[drive]\nalpha2 = -1.0\n",
            "[array]\ndelta_omega = [0.0, 0.0]\ngamma = [1.0, -1.0]\n",
            "[array]\ndelta_omega = [0.0, 0.0]\nphase = [1.0, 0.0]\n",
            "[array]\ndelta_omega = [0.0]\n[output]\nformat = \"xml\"\n",
        ] {
            assert!(matches!(parse_config(doc), Err(CliError::Config(_))), "{doc}");
        }
    }

    #[test]
    fn grid_values() {
        let g = Grid::parse("-1.5:1.5:301").unwrap();
        let v = g.values();
        assert_eq!(v.len(), 301);
        assert_eq!(v[0], -1.5);
        assert_eq!(v[150], 0.0);
        assert_eq!(v[300], 1.5);
        assert_eq!(Grid::parse("2:3:1").unwrap().values(), vec![2.0]);
        assert!(Grid::parse("1:2").is_err());
        assert!(Grid::parse("a:2:3").is_err());
    }

    #[test]
    fn toml_echo_round_trips() {
        let p = parse_config(
            "mode = \"poles\"\n[array]\ndelta_omega = [-0.5, 0.25, 0.25, 0.25]\n[grid]\nmin = -2\nmax = 2\npoints = 11\n",
        )
        .unwrap();
        let again = parse_config(&p.config.to_toml()).unwrap();
        assert_eq!(again.config, p.config);
    }
}
