//! Calibrates detector thresholds for a target false-alarm rate and reports
//! detection rate and the resulting probability of acting on a change.
//!
//!     cargo run --release --example calibrate_threshold [trials]

use impedance_sentinel::channel::ScenarioConfig;
use impedance_sentinel::detection::{action_probability, Detector, Hypothesis};
use impedance_sentinel::montecarlo::{calibrate_scenario, detector_score, empirical_rates, Scenario};

fn main() -> impedance_sentinel::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let scenario = Scenario::new(ScenarioConfig {
        trials,
        ..Default::default()
    })?;
    let h0 = scenario.run_trials(Hypothesis::H0)?;
    let h1 = scenario.run_trials(Hypothesis::H1)?;
    let prior_h0 = 0.9;
    for det in Detector::ALL {
        for target in [0.01, 0.1, 0.3] {
            let t = calibrate_scenario(&scenario, det, target, trials)?;
            let s0: Vec<f64> = h0.iter().map(|r| detector_score(r, det)).collect();
            let s1: Vec<f64> = h1.iter().map(|r| detector_score(r, det)).collect();
            let (pfa, pd) = empirical_rates(&s0, &s1, t.gamma)?;
            println!(
                "{det:>8} target {target:<4}: gamma {:>9.4}  pfa {pfa:.4}  pd {pd:.4}  P_act(P0={prior_h0}) {:.4}{}",
                t.gamma,
                action_probability(pfa, pd, prior_h0)?,
                if t.underpowered { "  (few trials)" } else { "" }
            );
        }
    }
    Ok(())
}
