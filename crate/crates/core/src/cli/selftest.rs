//! Quick invariant checks behind the `selftest` verb.

use rand::Rng;

use crate::channel::{
    clarke_correlation, generate_group, kmh_to_mps, CorrelationSpectrum, Group, ScenarioConfig, SufficientStatistic,
};
use crate::detection::{bartlett_statistic, glrt_statistic, Hypothesis};
use crate::estimation::{llf_gradient, log_likelihood, mle_binary_search, mle_iid, LlfContext};
use crate::montecarlo::{sufficiency_gap, write_trials_csv, Scenario};
use crate::numerics::{bessel_j0, RngStream};

pub struct SelftestReport {
    pub lines: Vec<String>,
    failures: usize,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, name: &str, outcome: Result<String, String>) {
        let line = match outcome {
            Ok(detail) => format!("PASS {name}: {detail}"),
            Err(detail) => {
                self.failures += 1;
                format!("FAIL {name}: {detail}")
            }
        };
        self.lines.push(line);
    }
}

type Check = Result<String, String>;
type NamedCheck = (&'static str, fn() -> Check);

pub fn run_selftest() -> SelftestReport {
    let checks: [NamedCheck; 7] = [
        ("bessel_j0", check_bessel),
        ("gradient", check_gradient),
        ("iid_mle", check_iid_mle),
        ("glrt_bartlett_identity", check_identity),
        ("nonnegative_statistics", check_nonnegative),
        ("sufficiency", check_sufficiency),
        ("determinism", check_determinism),
    ];
    let mut report = SelftestReport {
        lines: Vec::new(),
        failures: 0,
    };
    for (name, f) in checks {
        let outcome = f();
        report.record(name, outcome);
    }
    report
}

fn random_context(rng: &mut RngStream, max_len: usize) -> LlfContext {
    let l = rng.random_range(1..=max_len);
    let noise = 10f64.powf(rng.random_range(-3.0..0.0));
    let lambdas: Vec<f64> = (0..l).map(|_| rng.random_range(0.0..3.0)).collect();
    let s = lambdas
        .iter()
        .map(|lk| (lk * rng.random_range(0.0..2.0) + noise) * rng.random_range(0.2..2.0))
        .collect();
    LlfContext::new(s, lambdas, noise, rng.random_range(1..=16)).expect("valid context")
}

fn check_bessel() -> Check {
    let cases = [
        (0.0, 1.0),
        (2.404_825_557_695_773, 0.0),
        (1.0, 0.765_197_686_557_966_6),
        (10.0, -0.245_935_764_451_348_3),
    ];
    let mut worst: f64 = 0.0;
    for (x, want) in cases {
        worst = worst.max((bessel_j0(x).map_err(|e| e.to_string())? - want).abs());
    }
    verdict(worst < 1e-9, format!("max error {worst:.1e}"))
}

fn check_gradient() -> Check {
    let mut rng = RngStream::new(11, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let ctx = random_context(&mut rng, 20);
        let theta: f64 = rng.random_range(0.01..2.0);
        let h = 1e-6 * theta.max(1.0);
        let fd = (log_likelihood(theta + h, &ctx) - log_likelihood(theta - h, &ctx)) / (2.0 * h);
        let g = llf_gradient(theta, &ctx);
        worst = worst.max((fd - g).abs() / g.abs().max(1.0));
    }
    verdict(worst < 1e-5, format!("max relative error {worst:.1e}"))
}

fn check_iid_mle() -> Check {
    let mut rng = RngStream::new(12, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let ctx = random_context(&mut rng, 12);
        let ctx = LlfContext::new(
            ctx.s().to_vec(),
            vec![1.0; ctx.len()],
            ctx.noise_variance(),
            ctx.antennas(),
        )
        .expect("valid context");
        let want = mle_iid(ctx.s(), ctx.noise_variance()).map_err(|e| e.to_string())?;
        let got = mle_binary_search(&ctx, 10.0, 1e-9).theta_hat;
        worst = worst.max((got - want).abs() / want.max(1e-6));
    }
    verdict(worst < 1e-6, format!("max relative error {worst:.1e}"))
}

fn stat(values: Vec<f64>, group: Group) -> SufficientStatistic {
    SufficientStatistic::new(values, group).expect("valid statistic")
}

fn check_identity() -> Check {
    let mut rng = RngStream::new(13, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let l = rng.random_range(1..=20);
        let n = rng.random_range(1..=16);
        let noise = 1e-3;
        let s1: Vec<f64> = (0..l).map(|_| rng.random_range(0.5..3.0)).collect();
        let s2: Vec<f64> = (0..l).map(|_| rng.random_range(0.5..3.0)).collect();
        let (s1, s2) = (stat(s1, Group::First), stat(s2, Group::Second));
        let ones = vec![1.0; l];
        let g = glrt_statistic(&s1, &s2, &ones, noise, n, 10.0, 1e-12).map_err(|e| e.to_string())?;
        let b = bartlett_statistic(&s1, &s2).map_err(|e| e.to_string())?;
        let want = (n * l) as f64 * b.statistic;
        worst = worst.max((g.statistic - want).abs() / want.abs().max(1.0));
    }
    verdict(worst < 1e-6, format!("max relative error {worst:.1e}"))
}

fn check_nonnegative() -> Check {
    let mut rng = RngStream::new(14, 0);
    let corr = clarke_correlation(20, kmh_to_mps(50.0), 900e6, 1e-3).map_err(|e| e.to_string())?;
    let mut min = f64::INFINITY;
    for _ in 0..300 {
        let s1 = stat((0..20).map(|_| rng.random_range(0.0..2.0)).collect(), Group::First);
        let s2 = stat((0..20).map(|_| rng.random_range(0.0..2.0)).collect(), Group::Second);
        let g = glrt_statistic(&s1, &s2, corr.eigenvalues(), 0.01, 4, 10.0, 1e-3).map_err(|e| e.to_string())?;
        let b = bartlett_statistic(&s1, &s2).map_err(|e| e.to_string())?;
        min = min.min(g.statistic).min(b.statistic);
    }
    verdict(min >= 0.0, format!("minimum statistic {min:.3e}"))
}

fn check_sufficiency() -> Check {
    let mut rng = RngStream::new(15, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let l = rng.random_range(2..=16);
        let v = kmh_to_mps(rng.random_range(5.0..300.0));
        let corr: CorrelationSpectrum = clarke_correlation(l, v, 900e6, 1e-3).map_err(|e| e.to_string())?;
        let n = rng.random_range(1..=8);
        let truth = rng.random_range(0.05..1.0);
        let g = generate_group(&mut rng, n, truth, 0.05, &corr, Group::First).map_err(|e| e.to_string())?;
        let gap = sufficiency_gap(&g, &corr, (truth, 2.0 * truth), 0.05).map_err(|e| e.to_string())?;
        worst = worst.max(gap);
    }
    verdict(worst < 1e-8, format!("max log-likelihood gap {worst:.1e}"))
}

fn check_determinism() -> Check {
    let cfg = ScenarioConfig {
        trials: 200,
        seed: 99,
        ..Default::default()
    };
    let dump = || -> Result<Vec<u8>, String> {
        let s = Scenario::new(cfg.clone()).map_err(|e| e.to_string())?;
        let mut buf = Vec::new();
        let recs = s.run_trials(Hypothesis::H1).map_err(|e| e.to_string())?;
        write_trials_csv(&mut buf, &recs).map_err(|e| e.to_string())?;
        Ok(buf)
    };
    let (a, b) = (dump()?, dump()?);
    verdict(a == b, format!("{} bytes", a.len()))
}

fn verdict(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}
