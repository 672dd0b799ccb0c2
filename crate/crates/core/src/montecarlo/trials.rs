use std::io::Write;

use rayon::prelude::*;

use crate::channel::{
    clarke_correlation, generate_group, sufficient_statistic, CorrelationSpectrum, Group, ScenarioConfig,
};
use crate::detection::{bartlett_statistic, glrt_statistic, Hypothesis};
use crate::error::{Error, Result};
use crate::numerics::RngStream;

/// Stream-index domains, so H0, H1 and calibration runs of one seed never
/// share random numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamDomain {
    Null = 0,
    Alternative = 1,
    Calibration = 2,
}

impl StreamDomain {
    pub fn stream(self, trial: u64) -> u64 {
        ((self as u64) << 56) | trial
    }
}

impl From<Hypothesis> for StreamDomain {
    fn from(h: Hypothesis) -> Self {
        match h {
            Hypothesis::H0 => StreamDomain::Null,
            Hypothesis::H1 => StreamDomain::Alternative,
        }
    }
}

/// Outcome of one simulated pair of packet groups.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub index: u64,
    pub truth: Hypothesis,
    pub t_glrt: f64,
    pub t_bartlett: f64,
    /// Bisection iterations summed over the three ML solves.
    pub n_itr: usize,
    pub theta1_hat: f64,
    pub theta2_hat: f64,
    pub theta_pooled: f64,
    pub degenerate: bool,
}

/// A validated configuration with everything derived from it that stays
/// fixed across trials.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub correlation: CorrelationSpectrum,
    pub sigma_h1_sq: f64,
    pub sigma_h2_sq: f64,
    pub sigma_n_sq: f64,
}

impl Scenario {
    /// Clarke correlation from the configured velocity.
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let corr = clarke_correlation(
            config.packets,
            config.velocity_mps,
            config.carrier_hz,
            config.packet_interval,
        )?;
        Self::with_correlation(config, corr)
    }

    /// Uncorrelated packets regardless of velocity.
    pub fn iid(config: ScenarioConfig) -> Result<Self> {
        let corr = CorrelationSpectrum::identity(config.packets);
        Self::with_correlation(config, corr)
    }

    pub fn with_correlation(config: ScenarioConfig, correlation: CorrelationSpectrum) -> Result<Self> {
        config.validate()?;
        if correlation.len() != config.packets {
            return Err(Error::shape(format!(
                "correlation is {0}x{0} but L = {1}",
                correlation.len(),
                config.packets
            )));
        }
        Ok(Self {
            sigma_h1_sq: config.sigma_h1_sq()?,
            sigma_h2_sq: config.sigma_h2_sq()?,
            sigma_n_sq: config.sigma_n_sq()?,
            config,
            correlation,
        })
    }

    /// Channel variance of group 2 under `truth`.
    pub fn second_group_variance(&self, truth: Hypothesis) -> f64 {
        match truth {
            Hypothesis::H0 => self.sigma_h1_sq,
            Hypothesis::H1 => self.sigma_h2_sq,
        }
    }

    /// One trial drawn from stream `stream` of the configured seed.
    pub fn trial(&self, index: u64, stream: u64, truth: Hypothesis) -> Result<TrialRecord> {
        let attach = |e: Error| Error::Trial {
            index,
            source: Box::new(e),
        };
        let cfg = &self.config;
        let mut rng = RngStream::new(cfg.seed, stream);
        let g1 = generate_group(
            &mut rng,
            cfg.antennas,
            self.sigma_h1_sq,
            self.sigma_n_sq,
            &self.correlation,
            Group::First,
        )
        .map_err(attach)?;
        let g2 = generate_group(
            &mut rng,
            cfg.antennas,
            self.second_group_variance(truth),
            self.sigma_n_sq,
            &self.correlation,
            Group::Second,
        )
        .map_err(attach)?;
        let s1 = sufficient_statistic(&g1, &self.correlation).map_err(attach)?;
        let s2 = sufficient_statistic(&g2, &self.correlation).map_err(attach)?;
        let glrt = glrt_statistic(
            &s1,
            &s2,
            self.correlation.eigenvalues(),
            self.sigma_n_sq,
            cfg.antennas,
            cfg.alpha,
            cfg.epsilon,
        )
        .map_err(attach)?;
        let bt = bartlett_statistic(&s1, &s2).map_err(attach)?;
        Ok(TrialRecord {
            index,
            truth,
            t_glrt: glrt.statistic,
            t_bartlett: bt.statistic,
            n_itr: glrt.iterations_total,
            theta1_hat: glrt.theta1_hat,
            theta2_hat: glrt.theta2_hat,
            theta_pooled: glrt.theta_pooled,
            degenerate: bt.degenerate,
        })
    }

    /// `config.trials` independent trials under `truth`, in parallel.
    /// Output order is by trial index whatever the scheduling.
    pub fn run_trials(&self, truth: Hypothesis) -> Result<Vec<TrialRecord>> {
        self.run_domain(truth, truth.into(), self.config.trials)
    }

    pub(crate) fn run_domain(
        &self,
        truth: Hypothesis,
        domain: StreamDomain,
        trials: usize,
    ) -> Result<Vec<TrialRecord>> {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| self.trial(i, domain.stream(i), truth))
            .collect()
    }
}

/// Runs `config.trials` trials of the Clarke-correlated scenario.
pub fn run_trials(config: &ScenarioConfig, truth: Hypothesis) -> Result<Vec<TrialRecord>> {
    Scenario::new(config.clone())?.run_trials(truth)
}

pub const TRIAL_CSV_HEADER: &str = "trial,truth,t_glrt,t_bartlett,n_itr";

pub fn write_trials_csv<W: Write>(mut out: W, records: &[TrialRecord]) -> std::io::Result<()> {
    writeln!(out, "{TRIAL_CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{},{},{},{},{}", r.index, r.truth, r.t_glrt, r.t_bartlett, r.n_itr)?;
    }
    Ok(())
}

/// Mean bisection iterations per ML solve (three solves per trial).
pub fn mean_iterations<'a>(records: impl IntoIterator<Item = &'a TrialRecord>) -> f64 {
    let (sum, count) = records
        .into_iter()
        .fold((0usize, 0usize), |(s, c), r| (s + r.n_itr, c + 3));
    if count == 0 {
        0.0
    } else {
        sum as f64 / count as f64
    }
}
