//! Simulation configuration files.
//!
//! JSON schema (unknown fields are rejected):
//!
//! ```json
//! {
//!   "epsilon": 0.1,            // scalar or list
//!   "delta": 0.01,
//!   "L": [100, 1000, "auto"],  // integer, list, or "auto"
//!   "sigma": 1.0,
//!   "runs": 100,
//!   "seed": 7,
//!   "c": 2.414229,             // optional, defaults to the calibrated value
//!   "noise_kind": "gaussian",  // optional: "gaussian" | "bounded_uniform"
//!   "beta": 1.0,               // optional: distortion constant for cones
//!                              // without a closed form (needed by "auto")
//!   "tol": 1e-9                // optional boundary tolerance
//! }
//! ```
//!
//! `"auto"` resolves per cell to the pair-split budget
//! `g(epsilon, 2 delta / (K (K-1)))` using the cone's distortion constant.

use serde::Deserialize;

use vecopt::{BudgetChoice, DEFAULT_CONCENTRATION_C, NoiseModel};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(vs) => vs,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum BudgetRepr {
    Count(u64),
    Keyword(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    #[default]
    Gaussian,
    BoundedUniform,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    epsilon: OneOrMany<f64>,
    delta: f64,
    #[serde(rename = "L")]
    budgets: OneOrMany<BudgetRepr>,
    sigma: f64,
    runs: u32,
    seed: u64,
    #[serde(default = "default_c")]
    c: f64,
    #[serde(default)]
    noise_kind: NoiseKind,
    #[serde(default)]
    beta: Option<f64>,
    #[serde(default = "default_tol")]
    tol: f64,
}

fn default_c() -> f64 {
    DEFAULT_CONCENTRATION_C
}

fn default_tol() -> f64 {
    vecopt::DEFAULT_TOL
}

/// Validated battery configuration.
#[derive(Debug, Clone)]
pub struct BatteryConfig {
    pub epsilons: Vec<f64>,
    pub delta: f64,
    pub budgets: Vec<BudgetChoice>,
    pub sigma: f64,
    pub runs: u32,
    pub seed: u64,
    pub concentration_c: f64,
    pub noise_kind: NoiseKind,
    /// Distortion constant override for cones without a closed form.
    pub beta_override: Option<f64>,
    pub tol: f64,
}

impl BatteryConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| CliError::Data(format!("bad config: {e}")))?;
        let budgets = file
            .budgets
            .into_vec()
            .into_iter()
            .map(|b| match b {
                BudgetRepr::Count(l) if l >= 1 => Ok(BudgetChoice::Fixed(l)),
                BudgetRepr::Count(_) => {
                    Err(CliError::Data("config: L entries must be >= 1".into()))
                }
                BudgetRepr::Keyword(k) if k == "auto" => Ok(BudgetChoice::Auto),
                BudgetRepr::Keyword(k) => {
                    Err(CliError::Data(format!("config: unknown L keyword '{k}'")))
                }
            })
            .collect::<CliResult<Vec<_>>>()?;

        let config = BatteryConfig {
            epsilons: file.epsilon.into_vec(),
            delta: file.delta,
            budgets,
            sigma: file.sigma,
            runs: file.runs,
            seed: file.seed,
            concentration_c: file.c,
            noise_kind: file.noise_kind,
            beta_override: file.beta,
            tol: file.tol,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> CliResult<()> {
        if self.epsilons.is_empty() || self.budgets.is_empty() {
            return Err(CliError::Data(
                "config: epsilon and L must be nonempty".into(),
            ));
        }
        if self.epsilons.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return Err(CliError::Data(
                "config: epsilon values must be positive".into(),
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(CliError::Data(format!(
                "config: delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(CliError::Data(format!(
                "config: sigma must be >= 0, got {}",
                self.sigma
            )));
        }
        if self.runs == 0 {
            return Err(CliError::Data("config: runs must be >= 1".into()));
        }
        if !(self.concentration_c > 0.0 && self.concentration_c.is_finite()) {
            return Err(CliError::Data(format!(
                "config: c must be positive, got {}",
                self.concentration_c
            )));
        }
        if let Some(beta) = self.beta_override
            && !(beta >= 1.0 && beta.is_finite())
        {
            return Err(CliError::Data(format!(
                "config: beta must be >= 1, got {beta}"
            )));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(CliError::Data("config: tol must be >= 0".into()));
        }
        Ok(())
    }

    pub fn noise(&self) -> NoiseModel {
        match self.noise_kind {
            NoiseKind::Gaussian => NoiseModel::GaussianIid { sigma: self.sigma },
            NoiseKind::BoundedUniform => NoiseModel::BoundedUniform {
                half_width: self.sigma,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_and_list_fields() {
        let cfg = BatteryConfig::from_json(
            r#"{"epsilon": 0.1, "delta": 0.01, "L": 100, "sigma": 1.0, "runs": 5, "seed": 3}"#,
        )
        .unwrap();
        assert_eq!(cfg.epsilons, vec![0.1]);
        assert_eq!(cfg.budgets, vec![BudgetChoice::Fixed(100)]);
        assert_eq!(cfg.concentration_c, DEFAULT_CONCENTRATION_C);
        assert_eq!(cfg.noise_kind, NoiseKind::Gaussian);

        let cfg = BatteryConfig::from_json(
            r#"{"epsilon": [0.01, 0.1], "delta": 0.01, "L": [100, "auto"],
                "sigma": 1.0, "runs": 5, "seed": 3, "noise_kind": "bounded_uniform"}"#,
        )
        .unwrap();
        assert_eq!(cfg.epsilons.len(), 2);
        assert_eq!(
            cfg.budgets,
            vec![BudgetChoice::Fixed(100), BudgetChoice::Auto]
        );
        assert_eq!(cfg.noise_kind, NoiseKind::BoundedUniform);
    }

    #[test]
    fn rejects_bad_values_before_any_sampling() {
        let bad = [
            r#"{"epsilon": 0.0, "delta": 0.01, "L": 1, "sigma": 1.0, "runs": 5, "seed": 3}"#,
            r#"{"epsilon": 0.1, "delta": 1.5, "L": 1, "sigma": 1.0, "runs": 5, "seed": 3}"#,
            r#"{"epsilon": 0.1, "delta": 0.01, "L": 0, "sigma": 1.0, "runs": 5, "seed": 3}"#,
            r#"{"epsilon": 0.1, "delta": 0.01, "L": "sometimes", "sigma": 1.0, "runs": 5, "seed": 3}"#,
            r#"{"epsilon": 0.1, "delta": 0.01, "L": 1, "sigma": -1.0, "runs": 5, "seed": 3}"#,
            r#"{"epsilon": 0.1, "delta": 0.01, "L": 1, "sigma": 1.0, "runs": 0, "seed": 3}"#,
            r#"{"epsilon": 0.1, "delta": 0.01, "L": 1, "sigma": 1.0, "runs": 5, "seed": 3, "beta": 0.5}"#,
            r#"{"epsilon": 0.1, "delta": 0.01, "L": 1, "sigma": 1.0, "runs": 5, "seed": 3, "typo": 1}"#,
        ];
        for text in bad {
            let err = BatteryConfig::from_json(text).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}");
        }
    }
}
