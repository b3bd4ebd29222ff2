use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::report::Format;
use crate::{Error, Result};

/// Settings shared by all commands. Every field is optional; commands fall
/// back to their own defaults. Loaded from TOML, then overridden by flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    /// Fractional order; restricts table rows and sweeps to this value.
    pub alpha: Option<f64>,
    /// Time steps N (table row filter, largest N for studies, n_max for sweeps).
    pub steps: Option<usize>,
    /// Steps of the comparison scheme (table2 row filter).
    pub comparison_steps: Option<usize>,
    /// Spatial intervals.
    pub spatial: Option<usize>,
    pub horizon: Option<f64>,
    pub epsilon: Option<f64>,
    /// Real eigenvalue for the scalar studies.
    pub lambda: Option<f64>,
    /// `poly`, `sine`, or a path to a file of grid values.
    pub initial_data: Option<String>,
    pub tolerance_factor: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Fields set in `other` replace the ones in `self`.
    pub fn overridden_by(self, other: ExperimentConfig) -> Self {
        Self {
            alpha: other.alpha.or(self.alpha),
            steps: other.steps.or(self.steps),
            comparison_steps: other.comparison_steps.or(self.comparison_steps),
            spatial: other.spatial.or(self.spatial),
            horizon: other.horizon.or(self.horizon),
            epsilon: other.epsilon.or(self.epsilon),
            lambda: other.lambda.or(self.lambda),
            initial_data: other.initial_data.or(self.initial_data),
            tolerance_factor: other.tolerance_factor.or(self.tolerance_factor),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
        }
    }
}
