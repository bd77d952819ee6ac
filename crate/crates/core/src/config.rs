//! Analysis settings shared by every command, echoed into each report.

use std::path::PathBuf;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fourier::DEFAULT_ZERO_TOLERANCE;
use crate::lattice::DEFAULT_POINT_CAP;
use crate::number::{ratio, Rational};
use crate::spectral::DEFAULT_COMPLETENESS_TOLERANCE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub tolerance_zero: f64,
    pub tolerance_completeness: f64,
    #[serde(with = "crate::io::rational")]
    pub grid_spacing: Rational,
    #[serde(with = "crate::io::rational")]
    pub window_radius: Rational,
    pub point_cap: usize,
    /// Dual-lattice scan radius; `None` means 8 × the longest dual generator.
    pub check_radius: Option<f64>,
    pub output_path: Option<PathBuf>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            tolerance_zero: DEFAULT_ZERO_TOLERANCE,
            tolerance_completeness: DEFAULT_COMPLETENESS_TOLERANCE,
            grid_spacing: ratio(1, 64),
            window_radius: Rational::from_integer(20.into()),
            point_cap: DEFAULT_POINT_CAP,
            check_radius: None,
            output_path: None,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, t) in [
            ("tolerance_zero", self.tolerance_zero),
            ("tolerance_completeness", self.tolerance_completeness),
        ] {
            if !(t.is_finite() && t > 0.0) {
                return Err(ConfigError(format!("{name} must be positive, got {t}")));
            }
        }
        if !self.grid_spacing.is_positive() {
            return Err(ConfigError(format!(
                "grid_spacing must be positive, got {}",
                self.grid_spacing
            )));
        }
        if !self.window_radius.is_positive() {
            return Err(ConfigError(format!(
                "window_radius must be positive, got {}",
                self.window_radius
            )));
        }
        if self.point_cap == 0 {
            return Err(ConfigError("point_cap must be at least 1".into()));
        }
        if let Some(r) = self.check_radius {
            if !(r.is_finite() && r >= 0.0) {
                return Err(ConfigError(format!("check_radius must be non-negative, got {r}")));
            }
        }
        Ok(())
    }
}
