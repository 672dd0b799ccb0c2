use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, RealMatrix, RngStream};

use super::CorrelationSpectrum;

/// Which of the two packet groups a sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    First,
    Second,
}

impl Group {
    pub fn index(self) -> u8 {
        match self {
            Group::First => 1,
            Group::Second => 2,
        }
    }
}

/// Reduced observations of one group: column `k` is `y_k` of packet `k`,
/// so the matrix is `N x L`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSample {
    pub y: ComplexMatrix,
    pub group: Group,
}

/// Per-eigenmode average power `s_k = (1/N) [Qᴴ Yᵀ Y* Q]_kk`.
#[derive(Debug, Clone, PartialEq)]
pub struct SufficientStatistic {
    values: Vec<f64>,
    group: Group,
}

impl SufficientStatistic {
    pub fn new(values: Vec<f64>, group: Group) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::domain(format!(
                "sufficient statistic entry {bad} is not finite and >= 0"
            )));
        }
        Ok(Self { values, group })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// Draws one group of `L` packets from `N` antennas.
///
/// Each antenna row is `sqrt(σ_h²) g diag(√λ) Qᵀ` with `g` i.i.d. unit
/// complex Gaussian, giving covariance `σ_h² C`; independent CN(0, σ_n²)
/// noise is added to every entry.
pub fn generate_group(
    rng: &mut RngStream,
    antennas: usize,
    channel_variance: f64,
    noise_variance: f64,
    corr: &CorrelationSpectrum,
    group: Group,
) -> Result<GroupSample> {
    if !(channel_variance >= 0.0) || !(noise_variance >= 0.0) {
        return Err(Error::domain("variances must be >= 0"));
    }
    let packets = corr.len();
    let q = corr.eigenvectors();
    let sd = channel_variance.sqrt();
    // colouring[k][j] = sqrt(σ_h² λ_k) Q[j][k]
    let colouring = RealMatrix::from_fn(packets, packets, |k, j| sd * corr.eigenvalues()[k].sqrt() * q[(j, k)]);

    let mut y = ComplexMatrix::zeros(antennas, packets);
    let mut g = vec![Complex64::new(0.0, 0.0); packets];
    for a in 0..antennas {
        for gk in g.iter_mut() {
            *gk = rng.cgauss(1.0);
        }
        for j in 0..packets {
            let h: Complex64 = (0..packets).map(|k| g[k] * colouring[(k, j)]).sum();
            y[(a, j)] = h + rng.cgauss(noise_variance);
        }
    }
    Ok(GroupSample { y, group })
}

/// Decorrelates a group by `Q` and averages the per-mode power over
/// antennas: `s_k = (1/N) Σ_n |(Y Q)_{nk}|²`.
pub fn sufficient_statistic(sample: &GroupSample, corr: &CorrelationSpectrum) -> Result<SufficientStatistic> {
    let (antennas, packets) = (sample.y.rows(), sample.y.cols());
    if packets != corr.len() {
        return Err(Error::shape(format!(
            "group has {packets} packets, correlation is {0}x{0}",
            corr.len()
        )));
    }
    if antennas == 0 {
        return Err(Error::shape("group has no antennas"));
    }
    let projected = sample.y.matmul_real(corr.eigenvectors())?;
    let mut s = vec![0.0; packets];
    for a in 0..antennas {
        for (sk, z) in s.iter_mut().zip(projected.row(a)) {
            *sk += z.norm_sqr();
        }
    }
    for sk in &mut s {
        *sk /= antennas as f64;
        if *sk < 0.0 && *sk > -1e-12 {
            *sk = 0.0;
        }
    }
    SufficientStatistic::new(s, sample.group)
}
