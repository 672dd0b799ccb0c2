//! Evaluates a group's likelihood from the raw packets and from the
//! per-eigenmode statistic; the two differ by a constant independent of
//! the channel variance.
//!
//!     cargo run --example sufficiency_check

use impedance_sentinel::channel::{clarke_correlation, generate_group, kmh_to_mps, Group};
use impedance_sentinel::montecarlo::sufficiency_oracle;
use impedance_sentinel::numerics::RngStream;

fn main() -> impedance_sentinel::Result<()> {
    let corr = clarke_correlation(12, kmh_to_mps(50.0), 900e6, 1e-3)?;
    let noise = 0.02;
    let g = generate_group(&mut RngStream::new(3, 0), 4, 0.3, noise, &corr, Group::First)?;
    println!("{:>8} {:>14} {:>14} {:>12}", "theta", "full", "reduced", "difference");
    for theta in [0.05, 0.1, 0.3, 1.0, 3.0] {
        let (full, reduced) = sufficiency_oracle(&g, &corr, theta, noise)?;
        println!("{theta:>8} {full:>14.6} {reduced:>14.6} {:>12.3e}", full - reduced);
    }
    Ok(())
}
