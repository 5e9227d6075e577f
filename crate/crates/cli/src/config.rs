use minterp_core::disk::{DEFAULT_EPS_REL, DEFAULT_REL_TOL};
use minterp_core::rng::DEFAULT_SEED;
use serde::Serialize;

use crate::CliError;

/// Everything that can change a report. Worker count and output path are
/// deliberately absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub grid_n: usize,
    pub degrees: Vec<u32>,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative stopping width of the norm bisection.
    pub norm: f64,
    /// Relative slack when comparing subproblem norms.
    pub subset: f64,
    /// Distance below the sup that still counts as maximal modulus.
    pub modulus: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm: DEFAULT_REL_TOL,
            subset: DEFAULT_EPS_REL,
            modulus: 1e-6,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            grid_n: 128,
            degrees: vec![16, 32, 48],
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid_n < 2 {
            return Err(CliError::Input(format!("grid {} is below 2", self.grid_n)));
        }
        if self.degrees.is_empty() || self.degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Input(
                "degrees must be nonempty and increasing".into(),
            ));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("norm", t.norm),
            ("subset", t.subset),
            ("modulus", t.modulus),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Input(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.seed, 0xA11CE);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn bad_settings_rejected() {
        let mut cfg = RunConfig::default();
        cfg.tolerances.modulus = 0.0;
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            degrees: vec![16, 16],
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            grid_n: 1,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
