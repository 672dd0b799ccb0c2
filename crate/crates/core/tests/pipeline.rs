use impedance_sentinel::channel::{kmh_to_mps, ScenarioConfig};
use impedance_sentinel::detection::{action_probability, decide, Detector, Hypothesis};
use impedance_sentinel::montecarlo::{
    calibrate_threshold, detector_score, empirical_rates, scenario_fig2, simulate_roc, Scenario,
};

#[test]
fn roc_improves_with_transmit_antennas() {
    let base = ScenarioConfig {
        trials: 5000,
        ..Default::default()
    };
    let fig = scenario_fig2(&base).unwrap();
    for det in Detector::ALL {
        let pd: Vec<f64> = fig
            .antennas
            .iter()
            .map(|(_, p)| if det == Detector::Glrt { &p.glrt } else { &p.bartlett }.pd_at_pfa(0.1))
            .collect();
        assert!(pd.windows(2).all(|w| w[1] >= w[0] - 0.02), "{det}: {pd:?}");
    }
}

#[test]
fn glrt_never_worse_than_bartlett_under_correlation() {
    for v in [20.0, 300.0] {
        let cfg = ScenarioConfig {
            trials: 5000,
            velocity_mps: kmh_to_mps(v),
            ..Default::default()
        };
        let pair = simulate_roc(&Scenario::new(cfg).unwrap(), "check").unwrap();
        for pfa in [0.05, 0.1, 0.2, 0.4] {
            assert!(
                pair.glrt.pd_at_pfa(pfa) >= pair.bartlett.pd_at_pfa(pfa) - 0.02,
                "v={v} pfa={pfa}"
            );
        }
    }
}

#[test]
fn calibrated_threshold_drives_action_probability() {
    let cfg = ScenarioConfig {
        trials: 8000,
        velocity_mps: kmh_to_mps(300.0),
        ..Default::default()
    };
    let scenario = Scenario::new(cfg.clone()).unwrap();
    let t = calibrate_threshold(&cfg, Detector::Glrt, 0.1, 8000).unwrap();
    let h0 = scenario.run_trials(Hypothesis::H0).unwrap();
    let h1 = scenario.run_trials(Hypothesis::H1).unwrap();
    let s0: Vec<f64> = h0.iter().map(|r| detector_score(r, Detector::Glrt)).collect();
    let s1: Vec<f64> = h1.iter().map(|r| detector_score(r, Detector::Glrt)).collect();
    let (pfa, pd) = empirical_rates(&s0, &s1, t.gamma).unwrap();
    assert!((pfa - 0.1).abs() < 0.012, "{pfa}");
    assert!(pd > pfa);
    let acts = h1.iter().filter(|r| decide(r.t_glrt, &t) == Hypothesis::H1).count() as f64 / h1.len() as f64;
    assert_eq!(acts, pd);
    let p_act = action_probability(pfa, pd, 0.9).unwrap();
    assert!((p_act - (0.9 * pfa + 0.1 * pd)).abs() < 1e-15);
}

#[test]
fn premise_change_shrinks_channel_variance() {
    let cfg = ScenarioConfig::default();
    let (a, b) = (cfg.sigma_h1_sq().unwrap(), cfg.sigma_h2_sq().unwrap());
    assert!(b < a);
    assert!((a / b - 24884.0 / 16648.0).abs() < 1e-12);
}
