//! Detection of antenna-impedance change at a multiple-input single-output
//! receiver.
//!
//! A change in antenna impedance rescales the effective fading-channel
//! variance through the antenna/load voltage divider. Given two groups of
//! `L` packets each, the crate tests whether the channel variance differed
//! between them, using a generalized likelihood-ratio test (GLRT) that
//! accounts for temporal correlation of the fading, and Bartlett's test as
//! a reference.
//!
//! Modules, bottom-up:
//!
//! - [`numerics`]: small matrices, Jacobi eigensolver, `J0`, complex Gaussian sampling
//! - [`channel`]: impedances, noise levels, DFT training, Clarke correlation, group simulation
//! - [`estimation`]: log-likelihood and ML estimators of the channel variance
//! - [`detection`]: GLRT and Bartlett statistics, thresholds
//! - [`montecarlo`]: trials, ROC curves, calibration, the velocity and antenna sweeps
//! - [`cli`]: the `impedance-sentinel` command line

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod detection;
pub mod error;
pub mod estimation;
pub mod montecarlo;
pub mod numerics;

pub use error::{Error, Result};
