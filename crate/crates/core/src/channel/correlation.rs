use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{bessel_j0, sym_eig, EigenPair, RealMatrix};

use super::SPEED_OF_LIGHT;

/// Eigenvalues down to this far below zero are treated as roundoff.
const PSD_TOL: f64 = 1e-10;

/// Temporal correlation matrix `C` of a packet group together with its
/// eigendecomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSpectrum {
    matrix: RealMatrix,
    eig: EigenPair,
}

impl CorrelationSpectrum {
    /// Decomposes a correlation matrix: unit diagonal, symmetric, PSD.
    pub fn from_matrix(matrix: RealMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::shape("correlation matrix must be square"));
        }
        for i in 0..matrix.rows() {
            if (matrix[(i, i)] - 1.0).abs() > 1e-12 {
                return Err(Error::domain(format!("C[{i}][{i}] = {} is not 1", matrix[(i, i)])));
            }
        }
        let eig = sym_eig(&matrix)?.clamp_psd(PSD_TOL)?;
        Ok(Self { matrix, eig })
    }

    /// Uncorrelated packets, `C = I`.
    pub fn identity(packets: usize) -> Self {
        Self {
            matrix: RealMatrix::identity(packets),
            eig: EigenPair {
                eigenvectors: RealMatrix::identity(packets),
                eigenvalues: vec![1.0; packets],
            },
        }
    }

    pub fn len(&self) -> usize {
        self.eig.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn eigen(&self) -> &EigenPair {
        &self.eig
    }

    pub fn eigenvectors(&self) -> &RealMatrix {
        &self.eig.eigenvectors
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.eigenvalues
    }
}

/// Clarke/Jakes correlation `C_jk = J0(2π f_d T_s |j - k|)` with
/// `f_d = v f_c / c`.
pub fn clarke_correlation(
    packets: usize,
    velocity_mps: f64,
    carrier_hz: f64,
    packet_interval: f64,
) -> Result<CorrelationSpectrum> {
    if packets < 1 {
        return Err(Error::domain("need at least one packet"));
    }
    if !(velocity_mps >= 0.0) || !(carrier_hz > 0.0) || !(packet_interval > 0.0) {
        return Err(Error::domain("velocity must be >= 0, carrier and packet interval > 0"));
    }
    let doppler = velocity_mps * carrier_hz / SPEED_OF_LIGHT;
    let step = 2.0 * PI * doppler * packet_interval;
    let lags = (0..packets)
        .map(|l| bessel_j0(step * l as f64))
        .collect::<Result<Vec<_>>>()?;
    let matrix = RealMatrix::from_fn(packets, packets, |j, k| lags[j.abs_diff(k)]);
    CorrelationSpectrum::from_matrix(matrix)
}
