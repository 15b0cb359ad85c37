//! JSON sweep configuration.
//!
//! ```json
//! {
//!   "model": { "omega": 20.0, "omega0": 0.05, "atoms": 100000,
//!              "lambda_min": 0.0, "lambda_max": 1.0, "points": 2001 },
//!   "qubits": { "delta1_over_omega0": 0.001, "delta2_over_omega0": 0.0,
//!               "tf_times_omega0": 1.0 },
//!   "state": { "grid": { "c1_min": 0.0, "c1_max": 0.6666666666666666,
//!                        "points": 21, "rule": "half_z" } },
//!   "workers": 4
//! }
//! ```
//!
//! Frequencies are in MHz; the qubit block is expressed in units of ω₀.

use std::path::{Path, PathBuf};

use dicke_discord::{ChannelParams, DickeParams, XState};
use serde::{Deserialize, Serialize};

use crate::LabError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: ModelConfig,
    #[serde(default)]
    pub qubits: Option<QubitConfig>,
    #[serde(default)]
    pub state: Option<StateConfig>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub workers: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub omega: f64,
    pub omega0: f64,
    pub atoms: u64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitConfig {
    pub delta1_over_omega0: f64,
    pub delta2_over_omega0: f64,
    pub tf_times_omega0: f64,
    /// ω′_A and ω′_B (MHz); they only rotate phases. Default 0.
    #[serde(default)]
    pub omega_a_shifted: f64,
    #[serde(default)]
    pub omega_b_shifted: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateConfig {
    Fixed { c1: f64, c2: f64, c3: f64 },
    Grid(StateGrid),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateGrid {
    pub c1_min: f64,
    pub c1_max: f64,
    pub points: usize,
    pub rule: StateRule,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateRule {
    /// c₂ = 0, c₃ = c₁/2.
    HalfZ,
    /// c₂ and c₃ held fixed.
    Fixed { c2: f64, c3: f64 },
}

/// `points` evenly spaced values on `[min, max]`.
pub fn linspace(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (points - 1) as f64;
            (0..points)
                .map(|i| if i + 1 == points { max } else { min + step * i as f64 })
                .collect()
        }
    }
}

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| LabError::Read { path: path.to_owned(), source })?;
        let cfg: SweepConfig = serde_json::from_str(&text)
            .map_err(|source| LabError::Parse { path: path.to_owned(), source })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), LabError> {
        let m = &self.model;
        DickeParams::new(m.omega, m.omega0, m.lambda_min.max(0.0), m.atoms)
            .map_err(|e| LabError::Config(e.to_string()))?;
        if m.points == 0 {
            return Err(LabError::Config("lambda grid is empty".into()));
        }
        if !(m.lambda_min >= 0.0 && m.lambda_max >= m.lambda_min && m.lambda_max.is_finite()) {
            return Err(LabError::Config("need 0 <= lambda_min <= lambda_max".into()));
        }
        if self.workers == Some(0) {
            return Err(LabError::Config("workers must be at least 1".into()));
        }
        if let Some(q) = &self.qubits {
            if !(q.tf_times_omega0 >= 0.0) {
                return Err(LabError::Config("tf_times_omega0 must be non-negative".into()));
            }
        }
        if let Some(StateConfig::Grid(g)) = &self.state {
            if g.points == 0 {
                return Err(LabError::Config("c1 grid is empty".into()));
            }
        }
        if self.state.is_some() {
            for x in self.states()? {
                x.validate().map_err(|e| LabError::Config(e.to_string()))?;
            }
        }
        Ok(())
    }

    pub fn model_at(&self, lambda: f64) -> DickeParams {
        DickeParams { omega: self.model.omega, omega0: self.model.omega0, lambda, atoms: self.model.atoms }
    }

    pub fn channel(&self) -> Result<ChannelParams, LabError> {
        let q = self.qubits.as_ref().ok_or_else(|| LabError::Config("missing `qubits` block".into()))?;
        let w0 = self.model.omega0;
        let mut ch = ChannelParams::from_sum_difference(
            q.delta1_over_omega0 * w0,
            q.delta2_over_omega0 * w0,
            q.tf_times_omega0 / w0,
        );
        ch.omega_a_shifted = q.omega_a_shifted;
        ch.omega_b_shifted = q.omega_b_shifted;
        Ok(ch)
    }

    /// Initial states in grid order. Positivity is checked by
    /// [`SweepConfig::validate`], not here.
    pub fn states(&self) -> Result<Vec<XState>, LabError> {
        let state = self.state.as_ref().ok_or_else(|| LabError::Config("missing `state` block".into()))?;
        Ok(match state {
            StateConfig::Fixed { c1, c2, c3 } => vec![XState { c1: *c1, c2: *c2, c3: *c3 }],
            StateConfig::Grid(g) => linspace(g.c1_min, g.c1_max, g.points)
                .into_iter()
                .map(|c1| match g.rule {
                    StateRule::HalfZ => XState { c1, c2: 0.0, c3: 0.5 * c1 },
                    StateRule::Fixed { c2, c3 } => XState { c1, c2, c3 },
                })
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(0.0, 1.0, 1), vec![0.0]);
        let g = linspace(0.0, 1.0, 2001);
        assert_eq!(g.len(), 2001);
        assert_eq!(g[2000], 1.0);
        assert_eq!(g[1000], 0.5);
    }

    #[test]
    fn parses_half_z_grid() {
        let text = r#"{
            "model": {"omega": 20, "omega0": 0.05, "atoms": 100000, "lambda_min": 0, "lambda_max": 1, "points": 11},
            "qubits": {"delta1_over_omega0": 0.001, "delta2_over_omega0": 0, "tf_times_omega0": 1},
            "state": {"grid": {"c1_min": 0, "c1_max": 0.6, "points": 4, "rule": "half_z"}}
        }"#;
        let cfg: SweepConfig = serde_json::from_str(text).unwrap();
        cfg.validate().unwrap();
        let states = cfg.states().unwrap();
        assert_eq!(states.len(), 4);
        assert!((states[3].c3 - 0.3).abs() < 1e-15);
        let ch = cfg.channel().unwrap();
        assert!((ch.t - 20.0).abs() < 1e-12 && (ch.delta1() - 5e-5).abs() < 1e-18);
    }

    #[test]
    fn rejects_bad_configs() {
        let base = r#"{"model": {"omega": 20, "omega0": 0.05, "atoms": 10, "lambda_min": 0, "lambda_max": 1, "points": POINTS}}"#;
        let cfg: SweepConfig = serde_json::from_str(&base.replace("POINTS", "0")).unwrap();
        assert!(matches!(cfg.validate(), Err(LabError::Config(_))));
        let fixed = r#"{"model": {"omega": 20, "omega0": 0.05, "atoms": 10, "lambda_min": 0, "lambda_max": 1, "points": 3},
                        "state": {"fixed": {"c1": 1, "c2": 1, "c3": 1}}}"#;
        let cfg: SweepConfig = serde_json::from_str(fixed).unwrap();
        assert!(matches!(cfg.validate(), Err(LabError::Config(_))));
        assert!(serde_json::from_str::<SweepConfig>(r#"{"model": {}}"#).is_err());
    }
}
