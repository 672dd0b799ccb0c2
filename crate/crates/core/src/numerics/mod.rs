//! Numeric kernels shared by the rest of the crate: small dense matrices,
//! a Jacobi symmetric eigensolver, the Bessel function `J0` and a seedable
//! complex Gaussian sampler.

mod bessel;
mod eigen;
mod matrix;
mod random;

pub use bessel::bessel_j0;
pub use eigen::{sym_eig, EigenPair};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use random::{sample_cgauss, RngStream, RNG_ALGORITHM};

pub use num_complex::Complex64;
