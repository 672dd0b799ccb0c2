use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Name of the generator behind every [`RngStream`].
pub const RNG_ALGORITHM: &str = "chacha8";

/// A reproducible random stream identified by `(seed, stream)`.
///
/// Backed by ChaCha8 with the stream index selecting one of its 2^64
/// independent streams, so trial `i` draws the same numbers whichever
/// thread runs it.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// One draw from CN(0, variance).
    pub fn cgauss(&mut self, variance: f64) -> Complex64 {
        let sd = (0.5 * variance).sqrt();
        let re = self.standard_normal();
        let im = self.standard_normal();
        Complex64::new(sd * re, sd * im)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `n` i.i.d. circularly-symmetric complex Gaussian draws; real and
/// imaginary parts are each N(0, variance/2).
pub fn sample_cgauss(rng: &mut RngStream, n: usize, variance: f64) -> Result<Vec<Complex64>> {
    if !(variance >= 0.0) || !variance.is_finite() {
        return Err(Error::domain(format!(
            "variance must be finite and >= 0, got {variance}"
        )));
    }
    Ok((0..n).map(|_| rng.cgauss(variance)).collect())
}
