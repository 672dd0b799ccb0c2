//! Eigenvalues of the Clarke temporal correlation at the three reference
//! speeds. Faster fading spreads energy over more eigenmodes.
//!
//!     cargo run --example clarke_spectrum

use impedance_sentinel::channel::{clarke_correlation, kmh_to_mps, ScenarioConfig};

fn main() -> impedance_sentinel::Result<()> {
    let cfg = ScenarioConfig::default();
    for v in [300.0, 50.0, 20.0] {
        let c = clarke_correlation(cfg.packets, kmh_to_mps(v), cfg.carrier_hz, cfg.packet_interval)?;
        let lam = c.eigenvalues();
        let significant = lam.iter().filter(|&&l| l > 1e-3).count();
        let shown: Vec<String> = lam.iter().take(6).map(|l| format!("{l:.4}")).collect();
        println!(
            "v = {v:>5} km/h  lag-1 corr {:.5}  modes > 1e-3: {significant:>2}/{}  leading: {}",
            c.matrix()[(0, 1)],
            cfg.packets,
            shown.join(" ")
        );
    }
    Ok(())
}
