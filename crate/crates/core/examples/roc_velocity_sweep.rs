//! ROC curves over fading speed (300, 50, 20 km/h) plus the uncorrelated
//! reference; prints false-alarm rates at 80% detection.
//!
//!     cargo run --release --example roc_velocity_sweep [trials] [out.csv]

use impedance_sentinel::channel::ScenarioConfig;
use impedance_sentinel::montecarlo::{scenario_fig1, write_roc_csv, REFERENCE_PD};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let fig = scenario_fig1(&ScenarioConfig {
        trials,
        ..Default::default()
    })?;
    println!("{trials} trials per hypothesis; pfa at pd = {REFERENCE_PD}");
    for s in fig.summary().scenarios {
        println!(
            "{:>16}: glrt {:.4}  bartlett {:.4}  iterations/solve {:.1}",
            s.scenario, s.pfa_glrt, s.pfa_bartlett, s.mean_iterations
        );
    }
    if let Some(path) = args.next() {
        write_roc_csv(std::fs::File::create(&path)?, fig.curves())?;
        println!("wrote {path}");
    }
    Ok(())
}
