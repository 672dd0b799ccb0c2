use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, RngStream};

/// First `N` rows of the `T`-point DFT matrix, scaled so `X Xᴴ = (PT/N) I`.
pub fn dft_training(antennas: usize, training_len: usize, power: f64) -> Result<ComplexMatrix> {
    if antennas == 0 || training_len < antennas {
        return Err(Error::shape(format!(
            "DFT training needs 1 <= N <= T, got N = {antennas}, T = {training_len}"
        )));
    }
    if !(power > 0.0) {
        return Err(Error::domain(format!("power must be > 0, got {power}")));
    }
    let amp = (power / antennas as f64).sqrt();
    let t = training_len as f64;
    Ok(ComplexMatrix::from_fn(antennas, training_len, |n, k| {
        // (n k) mod T keeps the phase argument small and exact.
        let phase = -2.0 * PI * ((n * k) % training_len) as f64 / t;
        Complex64::from_polar(amp, phase)
    }))
}

/// Symbol-level simulation of one packet.
///
/// Forms `u = hᵀX + n_L` with `n_L ~ CN(0, σ_L² I_T)` and returns the
/// reduced statistic `y = (N/(PT)) (u Xᴴ)ᵀ`, assuming `X` came from
/// [`dft_training`] with power `power`.
pub fn simulate_packet_full(
    rng: &mut RngStream,
    training: &ComplexMatrix,
    power: f64,
    channel: &[Complex64],
    receiver_noise: f64,
) -> Result<Vec<Complex64>> {
    let (n, t) = (training.rows(), training.cols());
    if channel.len() != n {
        return Err(Error::shape(format!(
            "channel has {} taps, training has {n} rows",
            channel.len()
        )));
    }
    if !(receiver_noise >= 0.0) {
        return Err(Error::domain("receiver noise must be >= 0"));
    }
    let mut u = vec![Complex64::new(0.0, 0.0); t];
    for (k, uk) in u.iter_mut().enumerate() {
        *uk = (0..n).map(|a| channel[a] * training[(a, k)]).sum::<Complex64>() + rng.cgauss(receiver_noise);
    }
    let scale = n as f64 / (power * t as f64);
    Ok((0..n)
        .map(|a| {
            scale
                * u.iter()
                    .zip(training.row(a))
                    .map(|(uk, x)| uk * x.conj())
                    .sum::<Complex64>()
        })
        .collect())
}
