//! Log-likelihood of the channel variance `θ = σ_h²` given a sufficient
//! statistic, and its maximum-likelihood estimators.
//!
//! With `β_k = λ_k θ + σ_n²` the log-likelihood (up to a θ-free constant) is
//!
//! ```text
//! L(θ) = -N Σ_k [ ln β_k + s_k / β_k ]
//! ```
//!
//! Its derivative is positive at `θ = 0` whenever an interior maximum
//! exists and crosses zero exactly once, which is what the bisection in
//! [`mle_binary_search`] relies on.

use crate::channel::SufficientStatistic;
use crate::error::{Error, Result};

/// Bisection steps before giving up and returning the bracket midpoint.
pub const MAX_ITERATIONS: usize = 200;
/// Times the upper bracket may be doubled while the gradient is still
/// positive there.
pub const MAX_BRACKET_DOUBLINGS: usize = 10;

/// Inputs of the log-likelihood: the statistic `s`, the eigenvalue paired
/// with each entry, the noise variance and the antenna count.
#[derive(Debug, Clone, PartialEq)]
pub struct LlfContext {
    s: Vec<f64>,
    lambdas: Vec<f64>,
    noise_variance: f64,
    antennas: usize,
}

impl LlfContext {
    pub fn new(s: Vec<f64>, lambdas: Vec<f64>, noise_variance: f64, antennas: usize) -> Result<Self> {
        if s.len() != lambdas.len() {
            return Err(Error::shape(format!(
                "{} statistics but {} eigenvalues",
                s.len(),
                lambdas.len()
            )));
        }
        if s.is_empty() {
            return Err(Error::domain("empty statistic"));
        }
        if s.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::domain("statistics must be finite and >= 0"));
        }
        if lambdas.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::domain("eigenvalues must be finite and >= 0"));
        }
        if !lambdas.iter().any(|&v| v > 0.0) {
            return Err(Error::domain("at least one eigenvalue must be positive"));
        }
        if !(noise_variance > 0.0) || !noise_variance.is_finite() {
            return Err(Error::domain(format!(
                "noise variance must be > 0, got {noise_variance}"
            )));
        }
        if antennas == 0 {
            return Err(Error::domain("antenna count must be >= 1"));
        }
        Ok(Self {
            s,
            lambdas,
            noise_variance,
            antennas,
        })
    }

    /// Context for one group.
    pub fn from_statistic(
        stat: &SufficientStatistic,
        lambdas: &[f64],
        noise_variance: f64,
        antennas: usize,
    ) -> Result<Self> {
        Self::new(stat.values().to_vec(), lambdas.to_vec(), noise_variance, antennas)
    }

    /// Both groups under a common θ: `s₁‖s₂` paired with `λ‖λ`.
    pub fn pooled(
        first: &SufficientStatistic,
        second: &SufficientStatistic,
        lambdas: &[f64],
        noise_variance: f64,
        antennas: usize,
    ) -> Result<Self> {
        if first.len() != lambdas.len() || second.len() != lambdas.len() {
            return Err(Error::shape(format!(
                "group lengths {} and {} against {} eigenvalues",
                first.len(),
                second.len(),
                lambdas.len()
            )));
        }
        let s = first.values().iter().chain(second.values()).copied().collect();
        let l = lambdas.iter().chain(lambdas).copied().collect();
        Self::new(s, l, noise_variance, antennas)
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.s.iter().copied().zip(self.lambdas.iter().copied())
    }
}

/// Outcome of the bisection search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleResult {
    pub theta_hat: f64,
    /// Midpoint evaluations performed.
    pub iterations: usize,
    pub gradient_at_solution: f64,
    /// Bracket `[lo, hi]` holding the estimate when the search stopped.
    pub bracket: (f64, f64),
}

/// `-N Σ_k [ln(λ_k θ + σ_n²) + s_k / (λ_k θ + σ_n²)]`.
pub fn log_likelihood(theta: f64, ctx: &LlfContext) -> f64 {
    let sum: f64 = ctx
        .pairs()
        .map(|(s, l)| {
            let beta = l * theta + ctx.noise_variance;
            beta.ln() + s / beta
        })
        .sum();
    -(ctx.antennas as f64) * sum
}

/// `dL/dθ = N Σ_k [s_k λ_k / β_k² - λ_k / β_k]`.
pub fn llf_gradient(theta: f64, ctx: &LlfContext) -> f64 {
    let sum: f64 = ctx
        .pairs()
        .map(|(s, l)| {
            let inv = 1.0 / (l * theta + ctx.noise_variance);
            l * inv * (s * inv - 1.0)
        })
        .sum();
    ctx.antennas as f64 * sum
}

/// Closed-form MLE when every eigenvalue is one: `max(mean(s) - σ_n², 0)`.
pub fn mle_iid(s: &[f64], noise_variance: f64) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::domain("empty statistic"));
    }
    if s.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::domain("statistics must be >= 0"));
    }
    let mean = s.iter().sum::<f64>() / s.len() as f64;
    Ok((mean - noise_variance).max(0.0))
}

/// Bisection on the sign of the gradient over `[0, α Σ s_k]`.
///
/// Stops once `|∇L(θ_m)| < ε`. Returns `θ̂ = 0` when the gradient is
/// already non-positive at zero. When the gradient is still non-negative
/// at the upper end the bracket is doubled, at most
/// [`MAX_BRACKET_DOUBLINGS`] times, after which the upper end is returned.
pub fn mle_binary_search(ctx: &LlfContext, alpha: f64, epsilon: f64) -> MleResult {
    debug_assert!(alpha > 0.0 && epsilon > 0.0);
    let mut lo = 0.0;
    let mut g_lo = llf_gradient(lo, ctx);
    if g_lo <= 0.0 {
        return MleResult {
            theta_hat: 0.0,
            iterations: 0,
            gradient_at_solution: g_lo,
            bracket: (0.0, 0.0),
        };
    }

    let mut hi = alpha * ctx.s.iter().sum::<f64>();
    let mut g_hi = llf_gradient(hi, ctx);
    let mut doublings = 0;
    while g_hi >= 0.0 && doublings < MAX_BRACKET_DOUBLINGS {
        // Σs = 0 cannot reach here: the gradient at zero would be negative.
        hi *= 2.0;
        g_hi = llf_gradient(hi, ctx);
        doublings += 1;
    }
    if g_hi >= 0.0 {
        return MleResult {
            theta_hat: hi,
            iterations: 0,
            gradient_at_solution: g_hi,
            bracket: (hi, hi),
        };
    }

    let mut mid = 0.5 * (lo + hi);
    let mut g_mid = g_lo;
    let mut iterations = 0;
    while g_lo * g_hi < 0.0 && iterations < MAX_ITERATIONS {
        mid = 0.5 * (lo + hi);
        g_mid = llf_gradient(mid, ctx);
        iterations += 1;
        if g_mid.abs() < epsilon {
            break;
        }
        if g_lo * g_mid > 0.0 {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    if iterations == MAX_ITERATIONS {
        mid = 0.5 * (lo + hi);
        g_mid = llf_gradient(mid, ctx);
    }
    MleResult {
        theta_hat: mid,
        iterations,
        gradient_at_solution: g_mid,
        bracket: (lo, hi),
    }
}

/// Estimate of the common θ under the null hypothesis from both groups.
pub fn mle_pooled(
    first: &SufficientStatistic,
    second: &SufficientStatistic,
    lambdas: &[f64],
    noise_variance: f64,
    antennas: usize,
    alpha: f64,
    epsilon: f64,
) -> Result<MleResult> {
    let ctx = LlfContext::pooled(first, second, lambdas, noise_variance, antennas)?;
    Ok(mle_binary_search(&ctx, alpha, epsilon))
}
