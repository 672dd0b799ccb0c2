use crate::channel::ScenarioConfig;
use crate::detection::{Detector, Hypothesis, Threshold};
use crate::error::{Error, Result};

use super::trials::{Scenario, StreamDomain, TrialRecord};

/// Threshold leaving at most `floor(target_pfa * n)` of the null scores
/// strictly above it: the `(1 - target_pfa)` empirical quantile.
///
/// `target_pfa = 1` gives `γ = -inf`, so every score decides `H1`.
pub fn threshold_from_scores(null_scores: &[f64], target_pfa: f64) -> Result<Threshold> {
    if null_scores.is_empty() {
        return Err(Error::domain("no null scores to calibrate on"));
    }
    if !(target_pfa > 0.0 && target_pfa <= 1.0) {
        return Err(Error::domain(format!("target pfa {target_pfa} outside (0, 1]")));
    }
    let mut s = null_scores.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    // Guard against p*n landing a hair below an integer.
    let allowed = ((target_pfa * n as f64) + 1e-9).floor() as usize;
    let gamma = if allowed >= n {
        f64::NEG_INFINITY
    } else {
        s[n - allowed - 1]
    };
    Ok(Threshold {
        gamma,
        target_pfa,
        calibration_trials: n,
        underpowered: (n as f64) < 10.0 / target_pfa,
    })
}

pub fn detector_score(record: &TrialRecord, detector: Detector) -> f64 {
    match detector {
        Detector::Glrt => record.t_glrt,
        Detector::Bartlett => record.t_bartlett,
    }
}

/// Simulates `trials` null-hypothesis trials on a dedicated random stream
/// domain and returns the threshold meeting `target_pfa` on them.
pub fn calibrate_threshold(
    config: &ScenarioConfig,
    detector: Detector,
    target_pfa: f64,
    trials: usize,
) -> Result<Threshold> {
    let scenario = Scenario::new(config.clone())?;
    calibrate_scenario(&scenario, detector, target_pfa, trials)
}

pub fn calibrate_scenario(
    scenario: &Scenario,
    detector: Detector,
    target_pfa: f64,
    trials: usize,
) -> Result<Threshold> {
    let records = scenario.run_domain(Hypothesis::H0, StreamDomain::Calibration, trials)?;
    let scores: Vec<f64> = records.iter().map(|r| detector_score(r, detector)).collect();
    threshold_from_scores(&scores, target_pfa)
}
