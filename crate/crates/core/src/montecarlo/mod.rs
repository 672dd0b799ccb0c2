//! Experiment harness: parallel reproducible trials, empirical ROC
//! curves, threshold calibration and the velocity and transmit-diversity
//! sweeps.

mod roc;
mod scenarios;
mod sufficiency;
mod threshold;
mod trials;

pub use roc::{empirical_rates, roc_from_scores, write_roc_csv, RocCurve, RocPoint, ROC_CSV_HEADER};
pub use scenarios::{
    scenario_fig1, scenario_fig2, simulate_roc, Fig1, Fig2, RocPair, ScenarioSummary, Summary, FIG1_VELOCITIES_KMH,
    FIG2_ANTENNAS, FIG2_VELOCITY_KMH, REFERENCE_PD,
};
pub use sufficiency::{full_log_density, reduced_log_density, sufficiency_gap, sufficiency_oracle};
pub use threshold::{calibrate_scenario, calibrate_threshold, detector_score, threshold_from_scores};
pub use trials::{
    mean_iterations, run_trials, write_trials_csv, Scenario, StreamDomain, TrialRecord, TRIAL_CSV_HEADER,
};
