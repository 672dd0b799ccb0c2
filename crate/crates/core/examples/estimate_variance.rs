//! Maximum-likelihood estimation of the channel variance from one group of
//! correlated packets, by bisection on the likelihood gradient.
//!
//!     cargo run --example estimate_variance

use impedance_sentinel::channel::{
    clarke_correlation, generate_group, kmh_to_mps, sufficient_statistic, Group, ScenarioConfig,
};
use impedance_sentinel::estimation::{mle_binary_search, mle_iid, LlfContext};
use impedance_sentinel::numerics::RngStream;

fn main() -> impedance_sentinel::Result<()> {
    let cfg = ScenarioConfig::default();
    let truth = cfg.sigma_h1_sq()?;
    let noise = cfg.sigma_n_sq()?;
    let mut rng = RngStream::new(7, 0);
    println!("true sigma_h^2 = {truth:.5}, sigma_n^2 = {noise:.3e}");
    for v in [300.0, 20.0] {
        let corr = clarke_correlation(cfg.packets, kmh_to_mps(v), cfg.carrier_hz, cfg.packet_interval)?;
        for _ in 0..3 {
            let g = generate_group(&mut rng, cfg.antennas, truth, noise, &corr, Group::First)?;
            let s = sufficient_statistic(&g, &corr)?;
            let ctx = LlfContext::from_statistic(&s, corr.eigenvalues(), noise, cfg.antennas)?;
            let r = mle_binary_search(&ctx, cfg.alpha, cfg.epsilon);
            println!(
                "v = {v:>3} km/h  theta_hat = {:.5}  ({} iterations, gradient {:+.1e})  naive i.i.d. estimate {:.5}",
                r.theta_hat,
                r.iterations,
                r.gradient_at_solution,
                mle_iid(s.values(), noise)?
            );
        }
    }
    Ok(())
}
