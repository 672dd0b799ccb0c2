use std::io::Write;

use crate::detection::Detector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub pfa: f64,
    pub pd: f64,
    pub gamma: f64,
}

/// Empirical ROC: operating points sorted by increasing `pfa`, obtained by
/// lowering `γ` through every distinct pooled score.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub detector: Detector,
    pub scenario: String,
    /// Trials per hypothesis (size of the H0 sample).
    pub trials: usize,
}

impl RocCurve {
    /// Smallest false-alarm rate among points with `pd >= target`.
    pub fn pfa_at_pd(&self, target: f64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.pd >= target)
            .map(|p| p.pfa)
            .fold(1.0, f64::min)
    }

    /// Largest detection rate among points with `pfa <= target`.
    pub fn pd_at_pfa(&self, target: f64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.pfa <= target)
            .map(|p| p.pd)
            .fold(0.0, f64::max)
    }

    /// Whether `(pfa, pd)` is jointly achievable at one threshold: some
    /// point has false alarms at most `pfa` and detection at least `pd`.
    pub fn achieves(&self, pfa: f64, pd: f64) -> bool {
        self.points.iter().any(|p| p.pfa <= pfa && p.pd >= pd)
    }

    pub fn is_valid(&self) -> bool {
        let in_range = self
            .points
            .iter()
            .all(|p| (0.0..=1.0).contains(&p.pfa) && (0.0..=1.0).contains(&p.pd));
        let monotone = self
            .points
            .windows(2)
            .all(|w| w[0].pfa <= w[1].pfa && w[0].pd <= w[1].pd);
        let ends = matches!(self.points.first(), Some(p) if p.pfa == 0.0)
            && matches!(self.points.last(), Some(p) if p.pfa == 1.0 && p.pd == 1.0);
        in_range && monotone && ends
    }
}

fn sorted(scores: &[f64]) -> Vec<f64> {
    let mut v = scores.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Fraction of `sorted` strictly above `gamma`.
fn exceedance(sorted: &[f64], gamma: f64) -> f64 {
    let below = sorted.partition_point(|&x| x <= gamma);
    (sorted.len() - below) as f64 / sorted.len() as f64
}

/// `(pfa, pd)` at threshold `gamma`: fractions of each sample with score
/// strictly above it.
pub fn empirical_rates(h0: &[f64], h1: &[f64], gamma: f64) -> Result<(f64, f64)> {
    if h0.is_empty() || h1.is_empty() {
        return Err(Error::domain("need scores under both hypotheses"));
    }
    Ok((exceedance(&sorted(h0), gamma), exceedance(&sorted(h1), gamma)))
}

/// Builds the ROC by sweeping `γ` from the largest pooled score down, then
/// closes it at `γ = -inf` with `(1, 1)`.
pub fn roc_from_scores(h0: &[f64], h1: &[f64], detector: Detector, scenario: impl Into<String>) -> Result<RocCurve> {
    if h0.is_empty() || h1.is_empty() {
        return Err(Error::domain("need scores under both hypotheses"));
    }
    if h0.iter().chain(h1).any(|x| x.is_nan()) {
        return Err(Error::domain("scores must not be NaN"));
    }
    let s0 = sorted(h0);
    let s1 = sorted(h1);
    let mut gammas: Vec<f64> = s0.iter().chain(&s1).copied().collect();
    gammas.sort_by(|a, b| b.total_cmp(a));
    gammas.dedup();

    let mut points = Vec::with_capacity(gammas.len() + 1);
    for gamma in gammas {
        points.push(RocPoint {
            pfa: exceedance(&s0, gamma),
            pd: exceedance(&s1, gamma),
            gamma,
        });
    }
    points.push(RocPoint {
        pfa: 1.0,
        pd: 1.0,
        gamma: f64::NEG_INFINITY,
    });
    Ok(RocCurve {
        points,
        detector,
        scenario: scenario.into(),
        trials: h0.len(),
    })
}

pub const ROC_CSV_HEADER: &str = "pfa,pd,gamma,detector,scenario,trials";

pub fn write_roc_csv<'a, W: Write>(mut out: W, curves: impl IntoIterator<Item = &'a RocCurve>) -> std::io::Result<()> {
    writeln!(out, "{ROC_CSV_HEADER}")?;
    for c in curves {
        for p in &c.points {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                p.pfa, p.pd, p.gamma, c.detector, c.scenario, c.trials
            )?;
        }
    }
    Ok(())
}
