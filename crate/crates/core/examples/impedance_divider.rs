//! How an antenna-impedance shift rescales the effective channel, and the
//! noise level the receiver sees after training.
//!
//!     cargo run --example impedance_divider

use impedance_sentinel::channel::{channel_variance, reflection_gain, Impedance, ScenarioConfig};

fn main() -> impedance_sentinel::Result<()> {
    let cfg = ScenarioConfig::default();
    let load = cfg.load;
    for (name, za) in [("free space", cfg.antenna_before), ("hand nearby", cfg.antenna_after)] {
        println!(
            "{name:>12}: Z_A = {za}  |Z_L/(Z_A+Z_L)|^2 = {:.6}  sigma_h^2 = {:.6}",
            reflection_gain(za, load)?,
            channel_variance(za, load, cfg.path_gain_variance)?
        );
    }
    println!(
        "variance ratio before/after: {:.6}",
        cfg.sigma_h1_sq()? / cfg.sigma_h2_sq()?
    );
    println!(
        "P = {:.4} for {:.1} dB group-1 SNR; reduced noise variance sigma_n^2 = {:.4e}",
        cfg.power,
        10.0 * cfg.snr()?.log10(),
        cfg.sigma_n_sq()?
    );
    let matched = Impedance::resistive(50.0);
    println!("matched 50 ohm antenna gain: {}", reflection_gain(matched, load)?);
    Ok(())
}
