//! Variance-change test statistics and threshold decisions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channel::SufficientStatistic;
use crate::error::{Error, Result};
use crate::estimation::{log_likelihood, mle_binary_search, LlfContext, MleResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypothesis {
    /// No impedance change: both groups share one channel variance.
    H0,
    /// The channel variance differs between the groups.
    H1,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Hypothesis::H0 => "H0",
            Hypothesis::H1 => "H1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detector {
    Glrt,
    Bartlett,
}

impl Detector {
    pub const ALL: [Detector; 2] = [Detector::Glrt, Detector::Bartlett];

    pub fn as_str(self) -> &'static str {
        match self {
            Detector::Glrt => "glrt",
            Detector::Bartlett => "bartlett",
        }
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl std::str::FromStr for Detector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "glrt" => Ok(Detector::Glrt),
            "bartlett" | "bt" => Ok(Detector::Bartlett),
            other => Err(Error::Config(format!("unknown detector {other:?}"))),
        }
    }
}

/// A test statistic with the estimates that produced it.
///
/// For the GLRT the theta fields are the per-group and pooled ML
/// estimates of `σ_h²`. Bartlett's test does not estimate `σ_h²`; its
/// theta fields hold the group mean powers and their average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorOutput {
    pub statistic: f64,
    pub detector: Detector,
    pub theta1_hat: f64,
    pub theta2_hat: f64,
    pub theta_pooled: f64,
    pub iterations_total: usize,
    /// Set when a group has zero mean power and the statistic is `+inf`.
    pub degenerate: bool,
}

/// Generalized likelihood-ratio statistic `max L(θ₁,θ₂) - max L(θ,θ)`.
///
/// Both maxima come from [`mle_binary_search`]; the θ-free constant of the
/// log-likelihood cancels in the difference.
#[allow(clippy::too_many_arguments)]
pub fn glrt_statistic(
    first: &SufficientStatistic,
    second: &SufficientStatistic,
    lambdas: &[f64],
    noise_variance: f64,
    antennas: usize,
    alpha: f64,
    epsilon: f64,
) -> Result<DetectorOutput> {
    let ctx1 = LlfContext::from_statistic(first, lambdas, noise_variance, antennas)?;
    let ctx2 = LlfContext::from_statistic(second, lambdas, noise_variance, antennas)?;
    let pooled = LlfContext::pooled(first, second, lambdas, noise_variance, antennas)?;

    let r1 = mle_binary_search(&ctx1, alpha, epsilon);
    let r2 = mle_binary_search(&ctx2, alpha, epsilon);
    let r0 = mle_binary_search(&pooled, alpha, epsilon);

    // The null space sits inside the alternative, so each group's maximum is
    // at least its value at the pooled estimate. Taking the better of the two
    // keeps the statistic nonnegative when a search stops short (ε-stop or an
    // exhausted bracket on modes with near-zero eigenvalues).
    let best = |r: &MleResult, ctx: &LlfContext| {
        let (own, at_pooled) = (log_likelihood(r.theta_hat, ctx), log_likelihood(r0.theta_hat, ctx));
        if own >= at_pooled {
            (r.theta_hat, own)
        } else {
            (r0.theta_hat, at_pooled)
        }
    };
    let (theta1, l1) = best(&r1, &ctx1);
    let (theta2, l2) = best(&r2, &ctx2);
    let joint = log_likelihood(r0.theta_hat, &pooled);
    Ok(DetectorOutput {
        statistic: (l1 + l2 - joint).max(0.0),
        detector: Detector::Glrt,
        theta1_hat: theta1,
        theta2_hat: theta2,
        theta_pooled: r0.theta_hat,
        iterations_total: r1.iterations + r2.iterations + r0.iterations,
        degenerate: false,
    })
}

/// Bartlett's test on the group mean powers: `ln[(s̄₁+s̄₂)² / (4 s̄₁ s̄₂)]`.
pub fn bartlett_statistic(first: &SufficientStatistic, second: &SufficientStatistic) -> Result<DetectorOutput> {
    if first.is_empty() || second.is_empty() {
        return Err(Error::shape("empty group"));
    }
    let (m1, m2) = (first.mean(), second.mean());
    let degenerate = m1 <= 0.0 || m2 <= 0.0;
    let statistic = if degenerate {
        f64::INFINITY
    } else {
        // (a+b)²/(4ab) = 1 + (a-b)²/(4ab), kept in this form so equal means give exactly 0.
        let d = m1 - m2;
        (d * d / (4.0 * m1 * m2)).ln_1p()
    };
    Ok(DetectorOutput {
        statistic,
        detector: Detector::Bartlett,
        theta1_hat: m1,
        theta2_hat: m2,
        theta_pooled: 0.5 * (m1 + m2),
        iterations_total: 0,
        degenerate,
    })
}

/// Decision threshold `γ` with its calibration provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub gamma: f64,
    pub target_pfa: f64,
    pub calibration_trials: usize,
    /// Fewer than `10 / target_pfa` calibration trials were available.
    pub underpowered: bool,
}

impl Threshold {
    /// A fixed threshold not derived from calibration.
    pub fn fixed(gamma: f64) -> Self {
        Self {
            gamma,
            target_pfa: f64::NAN,
            calibration_trials: 0,
            underpowered: false,
        }
    }
}

/// `H1` iff `t > γ`; a tie goes to `H0`.
pub fn decide(statistic: f64, threshold: &Threshold) -> Hypothesis {
    if statistic > threshold.gamma {
        Hypothesis::H1
    } else {
        Hypothesis::H0
    }
}

/// Probability of deciding `H1`: `pfa P(H0) + pd (1 - P(H0))`.
pub fn action_probability(pfa: f64, pd: f64, prior_h0: f64) -> Result<f64> {
    for (name, v) in [("pfa", pfa), ("pd", pd), ("prior_h0", prior_h0)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::domain(format!("{name} = {v} is outside [0, 1]")));
        }
    }
    Ok(pfa * prior_h0 + pd * (1.0 - prior_h0))
}
