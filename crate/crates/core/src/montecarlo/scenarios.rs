use serde::Serialize;

use crate::channel::{kmh_to_mps, ScenarioConfig};
use crate::detection::{Detector, Hypothesis};
use crate::error::Result;

use super::roc::{roc_from_scores, RocCurve};
use super::threshold::detector_score;
use super::trials::{mean_iterations, Scenario, TrialRecord};

pub const FIG1_VELOCITIES_KMH: [f64; 3] = [300.0, 50.0, 20.0];
pub const FIG2_ANTENNAS: [usize; 3] = [4, 16, 64];
pub const FIG2_VELOCITY_KMH: f64 = 20.0;
/// Detection rate at which false-alarm rates are compared.
pub const REFERENCE_PD: f64 = 0.8;

/// GLRT and Bartlett curves computed from one shared set of trials.
#[derive(Debug, Clone)]
pub struct RocPair {
    pub label: String,
    pub glrt: RocCurve,
    pub bartlett: RocCurve,
    pub mean_iterations: f64,
}

impl RocPair {
    fn from_records(label: String, h0: &[TrialRecord], h1: &[TrialRecord]) -> Result<Self> {
        let curve = |d: Detector| {
            let s0: Vec<f64> = h0.iter().map(|r| detector_score(r, d)).collect();
            let s1: Vec<f64> = h1.iter().map(|r| detector_score(r, d)).collect();
            roc_from_scores(&s0, &s1, d, label.clone())
        };
        Ok(Self {
            glrt: curve(Detector::Glrt)?,
            bartlett: curve(Detector::Bartlett)?,
            mean_iterations: mean_iterations(h0.iter().chain(h1)),
            label,
        })
    }

    pub fn curves(&self) -> [&RocCurve; 2] {
        [&self.glrt, &self.bartlett]
    }
}

/// Runs both hypotheses of a scenario and builds its ROC pair.
pub fn simulate_roc(scenario: &Scenario, label: impl Into<String>) -> Result<RocPair> {
    let h0 = scenario.run_trials(Hypothesis::H0)?;
    let h1 = scenario.run_trials(Hypothesis::H1)?;
    RocPair::from_records(label.into(), &h0, &h1)
}

/// Velocity sweep with Clarke correlation, plus an uncorrelated reference.
#[derive(Debug, Clone)]
pub struct Fig1 {
    /// One pair per entry of [`FIG1_VELOCITIES_KMH`], same order.
    pub velocities: Vec<(f64, RocPair)>,
    /// Same scenario with `C = I`.
    pub iid: RocPair,
}

impl Fig1 {
    /// Mean bisection iterations over every correlated-channel solve.
    pub fn mean_iterations(&self) -> f64 {
        let n = self.velocities.len() as f64;
        self.velocities.iter().map(|(_, p)| p.mean_iterations).sum::<f64>() / n
    }

    pub fn curves(&self) -> Vec<&RocCurve> {
        self.velocities
            .iter()
            .flat_map(|(_, p)| p.curves())
            .chain([&self.iid.glrt])
            .collect()
    }

    pub fn summary(&self) -> Summary {
        let mut pairs: Vec<&RocPair> = self.velocities.iter().map(|(_, p)| p).collect();
        pairs.push(&self.iid);
        Summary::from_pairs(pairs, self.mean_iterations())
    }
}

pub fn scenario_fig1(base: &ScenarioConfig) -> Result<Fig1> {
    let mut velocities = Vec::new();
    for v in FIG1_VELOCITIES_KMH {
        let cfg = ScenarioConfig {
            velocity_mps: kmh_to_mps(v),
            ..base.clone()
        };
        velocities.push((v, simulate_roc(&Scenario::new(cfg)?, format!("fig1/v={v}kmh"))?));
    }
    let iid = simulate_roc(&Scenario::iid(base.clone())?, "fig1/iid")?;
    Ok(Fig1 { velocities, iid })
}

/// Transmit-diversity sweep at walking speed.
#[derive(Debug, Clone)]
pub struct Fig2 {
    /// One pair per entry of [`FIG2_ANTENNAS`], same order.
    pub antennas: Vec<(usize, RocPair)>,
}

impl Fig2 {
    pub fn mean_iterations(&self) -> f64 {
        let n = self.antennas.len() as f64;
        self.antennas.iter().map(|(_, p)| p.mean_iterations).sum::<f64>() / n
    }

    pub fn curves(&self) -> Vec<&RocCurve> {
        self.antennas.iter().flat_map(|(_, p)| p.curves()).collect()
    }

    pub fn summary(&self) -> Summary {
        Summary::from_pairs(self.antennas.iter().map(|(_, p)| p).collect(), self.mean_iterations())
    }
}

/// Keeps `P`, `σ_L²` and hence `P σ_h² / σ_L²` from `base` for every `N`,
/// so the reduced noise variance `N σ_L² / (T P)` grows with `N`.
pub fn scenario_fig2(base: &ScenarioConfig) -> Result<Fig2> {
    let mut antennas = Vec::new();
    for n in FIG2_ANTENNAS {
        let cfg = ScenarioConfig {
            antennas: n,
            training_len: base.training_len.max(n),
            velocity_mps: kmh_to_mps(FIG2_VELOCITY_KMH),
            ..base.clone()
        };
        antennas.push((n, simulate_roc(&Scenario::new(cfg)?, format!("fig2/N={n}"))?));
    }
    Ok(Fig2 { antennas })
}

/// JSON summary written next to ROC output.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub mean_iterations: f64,
    pub reference_pd: f64,
    pub scenarios: Vec<ScenarioSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioSummary {
    pub scenario: String,
    pub trials: usize,
    pub mean_iterations: f64,
    pub pfa_glrt: f64,
    pub pfa_bartlett: f64,
}

impl Summary {
    pub fn from_pairs(pairs: Vec<&RocPair>, mean_iterations: f64) -> Self {
        let scenarios = pairs
            .into_iter()
            .map(|p| ScenarioSummary {
                scenario: p.label.clone(),
                trials: p.glrt.trials,
                mean_iterations: p.mean_iterations,
                pfa_glrt: p.glrt.pfa_at_pd(REFERENCE_PD),
                pfa_bartlett: p.bartlett.pfa_at_pd(REFERENCE_PD),
            })
            .collect();
        Self {
            mean_iterations,
            reference_pd: REFERENCE_PD,
            scenarios,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_shape_at_small_scale() {
        let base = ScenarioConfig {
            trials: 300,
            ..Default::default()
        };
        let f = scenario_fig1(&base).unwrap();
        assert_eq!(f.velocities.len(), 3);
        assert_eq!(f.curves().len(), 7);
        assert!(f.curves().iter().all(|c| c.is_valid() && c.trials == 300));
        let s = f.summary();
        assert_eq!(s.scenarios.len(), 4);
        assert!(f.mean_iterations() > 1.0);
    }

    #[test]
    fn fig2_keeps_snr_and_grows_noise() {
        let base = ScenarioConfig {
            trials: 200,
            ..Default::default()
        };
        let f = scenario_fig2(&base).unwrap();
        assert_eq!(f.antennas.iter().map(|(n, _)| *n).collect::<Vec<_>>(), vec![4, 16, 64]);
        assert!(f.curves().iter().all(|c| c.is_valid()));
    }
}
