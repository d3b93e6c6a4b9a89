//! Reference PageRank solvers.
//!
//! All of them compute the fixed point of `pi = c P' pi + (1 - c) p`, where
//! `P'` patches dangling columns of the column-stochastic `P` with the
//! personalization vector `p`.

mod dense;
mod forward_push;
mod power;
mod series;

pub use dense::{dense_oracle, DENSE_LIMIT};
pub use forward_push::{forward_push_ppr, forward_push_state, DanglingMode, PushState, REDISTRIBUTE_LIMIT};
pub use power::{power_method, power_method_observed, PowerPrep, REFERENCE_ITERATIONS};
pub use series::series_pagerank;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Damping factor in `(0, 1)`.
    pub c: f64,
    /// Restart distribution; `None` means uniform.
    pub personalization: Option<Vec<f64>>,
    /// Push threshold.
    pub xi: f64,
    pub max_iterations: usize,
    /// Power-method stop when the L1 change of an iterate drops below this;
    /// zero runs exactly `max_iterations`.
    pub tolerance: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            c: crate::DEFAULT_DAMPING,
            personalization: None,
            xi: 1e-10,
            max_iterations: REFERENCE_ITERATIONS,
            tolerance: 0.0,
        }
    }
}

impl SolverConfig {
    pub fn with_xi(xi: f64) -> Self {
        Self { xi, ..Self::default() }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::InvalidConfig(format!("damping factor {} not in (0, 1)", self.c)));
        }
        if !(self.xi > 0.0) {
            return Err(Error::InvalidConfig(format!("threshold {} must be positive", self.xi)));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance {} is negative",
                self.tolerance
            )));
        }
        if let Some(p) = &self.personalization {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: p.len(),
                });
            }
            if p.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
                return Err(Error::InvalidConfig("personalization has negative entries".into()));
            }
            let total: f64 = p.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidConfig(format!("personalization sums to {total}")));
            }
        }
        Ok(())
    }

    /// The restart distribution as a dense vector.
    pub fn restart(&self, n: usize) -> Vec<f64> {
        match &self.personalization {
            Some(p) => p.clone(),
            None => vec![1.0 / n as f64; n],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        let bad_c = SolverConfig {
            c: 1.0,
            ..Default::default()
        };
        assert!(bad_c.validate(2).is_err());
        let bad_xi = SolverConfig {
            xi: 0.0,
            ..Default::default()
        };
        assert!(bad_xi.validate(2).is_err());
        let bad_p = SolverConfig {
            personalization: Some(vec![0.7, 0.7]),
            ..Default::default()
        };
        assert!(bad_p.validate(2).is_err());
        let short_p = SolverConfig {
            personalization: Some(vec![1.0]),
            ..Default::default()
        };
        assert!(short_p.validate(2).is_err());
        assert!(SolverConfig::default().validate(2).is_ok());
    }
}
