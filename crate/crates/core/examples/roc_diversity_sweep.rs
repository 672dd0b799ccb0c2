//! ROC curves for 4, 16 and 64 transmit antennas at walking speed, with the
//! total transmit power held fixed.
//!
//!     cargo run --release --example roc_diversity_sweep [trials] [out.csv]

use impedance_sentinel::channel::ScenarioConfig;
use impedance_sentinel::montecarlo::{scenario_fig2, write_roc_csv, REFERENCE_PD};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let fig = scenario_fig2(&ScenarioConfig {
        trials,
        ..Default::default()
    })?;
    println!("{trials} trials per hypothesis");
    for (n, pair) in &fig.antennas {
        println!(
            "N = {n:>2}: pfa at pd={REFERENCE_PD}: glrt {:.4} bartlett {:.4} | pd at pfa=0.05: glrt {:.4} bartlett {:.4}",
            pair.glrt.pfa_at_pd(REFERENCE_PD),
            pair.bartlett.pfa_at_pd(REFERENCE_PD),
            pair.glrt.pd_at_pfa(0.05),
            pair.bartlett.pd_at_pfa(0.05)
        );
    }
    if let Some(path) = args.next() {
        write_roc_csv(std::fs::File::create(&path)?, fig.curves())?;
        println!("wrote {path}");
    }
    Ok(())
}
