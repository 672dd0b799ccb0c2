use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channel::{sufficient_statistic, CorrelationSpectrum, GroupSample};
use crate::error::{Error, Result};
use crate::numerics::RealMatrix;

/// Log-density of a group evaluated two ways: from the full `NL`-variate
/// complex Gaussian with covariance `(σ_h² C + σ_n² I) ⊗ I_N`, and from the
/// decorrelated statistic `s` with `β_k = λ_k σ_h² + σ_n²`.
///
/// The full route factors the covariance by Cholesky and never touches the
/// eigendecomposition, so agreement between the two checks the reduction.
pub fn sufficiency_oracle(
    sample: &GroupSample,
    corr: &CorrelationSpectrum,
    channel_variance: f64,
    noise_variance: f64,
) -> Result<(f64, f64)> {
    Ok((
        full_log_density(sample, corr.matrix(), channel_variance, noise_variance)?,
        reduced_log_density(sample, corr, channel_variance, noise_variance)?,
    ))
}

/// `|Δ_full - Δ_reduced|` between two channel variances; zero when the two
/// log-densities differ by a constant that does not depend on `σ_h²`.
pub fn sufficiency_gap(
    sample: &GroupSample,
    corr: &CorrelationSpectrum,
    variances: (f64, f64),
    noise_variance: f64,
) -> Result<f64> {
    let (fa, ra) = sufficiency_oracle(sample, corr, variances.0, noise_variance)?;
    let (fb, rb) = sufficiency_oracle(sample, corr, variances.1, noise_variance)?;
    Ok(((fa - fb) - (ra - rb)).abs())
}

/// `-NL ln π - N ln det Σ - Σ_n y_nᴴ Σ⁻¹ y_n` over antenna rows `y_n`.
pub fn full_log_density(
    sample: &GroupSample,
    c: &RealMatrix,
    channel_variance: f64,
    noise_variance: f64,
) -> Result<f64> {
    let (n, l) = (sample.y.rows(), sample.y.cols());
    if c.rows() != l || !c.is_square() {
        return Err(Error::shape(format!(
            "group has {l} packets, C is {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let cov = RealMatrix::from_fn(l, l, |i, j| {
        channel_variance * c[(i, j)] + if i == j { noise_variance } else { 0.0 }
    });
    let chol = cholesky(&cov)?;
    let log_det: f64 = 2.0 * (0..l).map(|i| chol[(i, i)].ln()).sum::<f64>();

    let mut quad = 0.0;
    let mut z = vec![Complex64::new(0.0, 0.0); l];
    for a in 0..n {
        let row = sample.y.row(a);
        // forward substitution  chol z = row
        for i in 0..l {
            let mut acc = row[i];
            for k in 0..i {
                acc -= chol[(i, k)] * z[k];
            }
            z[i] = acc / chol[(i, i)];
        }
        quad += z.iter().map(|v| v.norm_sqr()).sum::<f64>();
    }
    let nl = (n * l) as f64;
    Ok(-nl * PI.ln() - n as f64 * log_det - quad)
}

/// `-NL ln π - N Σ_k [ln β_k + s_k / β_k]`.
pub fn reduced_log_density(
    sample: &GroupSample,
    corr: &CorrelationSpectrum,
    channel_variance: f64,
    noise_variance: f64,
) -> Result<f64> {
    let s = sufficient_statistic(sample, corr)?;
    let n = sample.y.rows() as f64;
    let mut sum = 0.0;
    for (sk, lk) in s.values().iter().zip(corr.eigenvalues()) {
        let beta = lk * channel_variance + noise_variance;
        if !(beta > 0.0) {
            return Err(Error::Singular(format!("mode variance {beta} is not positive")));
        }
        sum += beta.ln() + sk / beta;
    }
    Ok(-n * s.len() as f64 * PI.ln() - n * sum)
}

fn cholesky(a: &RealMatrix) -> Result<RealMatrix> {
    let n = a.rows();
    let mut l = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if !(sum > 0.0) {
                    return Err(Error::Singular(format!(
                        "covariance is not positive definite (pivot {i}: {sum:e})"
                    )));
                }
                l[(i, i)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{clarke_correlation, generate_group, Group};
    use crate::numerics::{ComplexMatrix, RngStream};

    #[test]
    fn identity_correlation_gives_equal_densities() {
        let corr = CorrelationSpectrum::identity(6);
        let g = generate_group(&mut RngStream::new(3, 0), 4, 0.4, 0.1, &corr, Group::First).unwrap();
        let (full, reduced) = sufficiency_oracle(&g, &corr, 0.4, 0.1).unwrap();
        assert!((full - reduced).abs() < 1e-8);
    }

    #[test]
    fn correlated_differences_agree() {
        let corr = clarke_correlation(12, 50.0 / 3.6, 900e6, 1e-3).unwrap();
        let g = generate_group(&mut RngStream::new(4, 0), 4, 0.15, 0.01, &corr, Group::First).unwrap();
        assert!(sufficiency_gap(&g, &corr, (0.1, 0.2), 0.01).unwrap() < 1e-8);
    }

    #[test]
    fn pure_noise_density() {
        let corr = clarke_correlation(5, 300.0 / 3.6, 900e6, 1e-3).unwrap();
        let g = generate_group(&mut RngStream::new(5, 0), 3, 0.0, 0.3, &corr, Group::First).unwrap();
        let (full, reduced) = sufficiency_oracle(&g, &corr, 0.0, 0.3).unwrap();
        let nl = 15.0;
        let want = -nl * (PI * 0.3).ln() - g.y.frobenius_sq() / 0.3;
        assert!((full - want).abs() < 1e-8 && (reduced - want).abs() < 1e-8);
    }

    #[test]
    fn singular_covariance_is_reported() {
        let corr = clarke_correlation(4, 0.0, 900e6, 1e-3).unwrap();
        let g = GroupSample {
            y: ComplexMatrix::zeros(2, 4),
            group: Group::First,
        };
        assert!(matches!(
            sufficiency_oracle(&g, &corr, 1.0, 0.0),
            Err(Error::Singular(_))
        ));
    }
}
