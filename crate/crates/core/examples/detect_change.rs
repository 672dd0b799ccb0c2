//! GLRT and Bartlett statistics for one group pair without and with an
//! impedance change between the groups.
//!
//!     cargo run --example detect_change

use impedance_sentinel::channel::ScenarioConfig;
use impedance_sentinel::detection::Hypothesis;
use impedance_sentinel::montecarlo::{Scenario, StreamDomain};

fn main() -> impedance_sentinel::Result<()> {
    let scenario = Scenario::new(ScenarioConfig::default())?;
    for truth in [Hypothesis::H0, Hypothesis::H1] {
        for i in 0..4 {
            let r = scenario.trial(i, StreamDomain::from(truth).stream(i), truth)?;
            println!(
                "{truth} trial {i}: t_glrt = {:8.3}  t_bartlett = {:.4}  theta1 {:.4} theta2 {:.4} pooled {:.4}",
                r.t_glrt, r.t_bartlett, r.theta1_hat, r.theta2_hat, r.theta_pooled
            );
        }
    }
    println!(
        "sigma_h^2 before {:.4}, after {:.4}",
        scenario.sigma_h1_sq,
        scenario.second_group_variance(Hypothesis::H1)
    );
    Ok(())
}
