use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every tolerance and budget in one record. Serialized into reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ToolConfig {
    pub membership_tol: f64,
    pub fiber_tol: f64,
    pub max_iterations: usize,
    pub extent_cap: f64,
    pub witness_margin: f64,
    pub eps_depth: u32,
    pub pairs: usize,
    pub scales: usize,
    pub seed: u64,
}

impl Default for ToolConfig {
    fn default() -> Self {
        ToolConfig {
            membership_tol: 1e-9,
            fiber_tol: 1e-7,
            max_iterations: 10_000,
            extent_cap: 1e3,
            witness_margin: 1e-6,
            eps_depth: 12,
            pairs: 200,
            scales: 3,
            seed: 42,
        }
    }
}

impl ToolConfig {
    pub fn validate(&self) -> Result<()> {
        let reals = [self.membership_tol, self.fiber_tol, self.extent_cap, self.witness_margin];
        if reals.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput("tolerances and cap must be positive".into()));
        }
        if self.max_iterations == 0 || self.eps_depth == 0 || self.pairs == 0 || self.scales == 0 {
            return Err(Error::InvalidInput("budgets must be positive".into()));
        }
        Ok(())
    }

    /// `{2^-1, …, 2^-depth}`, to be multiplied by ‖v‖.
    pub fn eps_grid(&self) -> Vec<f64> {
        (1..=self.eps_depth).map(|k| 0.5f64.powi(k as i32)).collect()
    }
}
