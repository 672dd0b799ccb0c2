//! Drives the command-line layer in-process: writes two packet groups as
//! complex CSV, then runs `detect` on them.
//!
//!     cargo run --example cli_roundtrip

use impedance_sentinel::channel::{clarke_correlation, generate_group, Group, ScenarioConfig};
use impedance_sentinel::cli::{parse_args, run, write_group_csv};
use impedance_sentinel::numerics::RngStream;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ScenarioConfig::default();
    let corr = clarke_correlation(cfg.packets, cfg.velocity_mps, cfg.carrier_hz, cfg.packet_interval)?;
    let mut rng = RngStream::new(11, 0);
    let noise = cfg.sigma_n_sq()?;
    let dir = std::env::temp_dir().join("impedance-sentinel-example");
    std::fs::create_dir_all(&dir)?;
    let (p1, p2) = (dir.join("y1.csv"), dir.join("y2.csv"));
    let g1 = generate_group(&mut rng, cfg.antennas, cfg.sigma_h1_sq()?, noise, &corr, Group::First)?;
    let g2 = generate_group(&mut rng, cfg.antennas, cfg.sigma_h2_sq()?, noise, &corr, Group::Second)?;
    write_group_csv(std::fs::File::create(&p1)?, &g1.y)?;
    write_group_csv(std::fs::File::create(&p2)?, &g2.y)?;

    let argv = [
        "impedance-sentinel",
        "detect",
        "--y1",
        p1.to_str().unwrap(),
        "--y2",
        p2.to_str().unwrap(),
        "--gamma",
        "2.0",
    ];
    let cmd = parse_args(argv).map_err(|e| e.message)?;
    let code = run(&cmd, &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit status {code}");
    Ok(())
}
