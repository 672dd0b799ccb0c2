use crate::error::{Error, Result};

use super::RealMatrix;

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `A = Q diag(λ) Qᵀ` of a real symmetric matrix.
///
/// Eigenvalues are stored in descending order and column `k` of
/// `eigenvectors` pairs with `eigenvalues[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub eigenvectors: RealMatrix,
    pub eigenvalues: Vec<f64>,
}

impl EigenPair {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Q diag(λ) Qᵀ`.
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        RealMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| q[(i, k)] * self.eigenvalues[k] * q[(j, k)]).sum()
        })
    }

    /// Sets eigenvalues in `[-tol, 0)` to zero. Anything more negative
    /// means the input was not positive semidefinite.
    pub fn clamp_psd(mut self, tol: f64) -> Result<Self> {
        for l in &mut self.eigenvalues {
            if *l < -tol {
                return Err(Error::domain(format!(
                    "eigenvalue {l} too negative for a positive semidefinite matrix"
                )));
            }
            if *l < 0.0 {
                *l = 0.0;
            }
        }
        Ok(self)
    }
}

/// Cyclic Jacobi eigensolver for small dense symmetric matrices.
///
/// Sweeps over every off-diagonal pair with a plane rotation until the
/// off-diagonal Frobenius norm drops below `1e-12` (relative to the input
/// norm when that exceeds one).
pub fn sym_eig(a: &RealMatrix) -> Result<EigenPair> {
    let asym = a
        .asymmetry()
        .ok_or_else(|| Error::shape(format!("{}x{} matrix is not square", a.rows(), a.cols())))?;
    if asym > SYMMETRY_TOL {
        return Err(Error::shape(format!(
            "matrix is not symmetric (max |a_ij - a_ji| = {asym:e})"
        )));
    }

    let n = a.rows();
    let mut m = a.clone();
    let mut v = RealMatrix::identity(n);
    let scale = a.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) < OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let eigenvalues = order.iter().map(|&k| m[(k, k)]).collect();
    let eigenvectors = RealMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(EigenPair {
        eigenvectors,
        eigenvalues,
    })
}

fn off_diagonal_norm(m: &RealMatrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)] * m[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `m[p][q]` with a rotation applied on both sides, and
/// accumulates it into `v`.
fn rotate(m: &mut RealMatrix, v: &mut RealMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = m.rows();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
