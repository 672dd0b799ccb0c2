//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration
//! error, 3 malformed input data, 4 self-test failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::channel::{
    clarke_correlation, kmh_to_mps, sufficient_statistic, CorrelationSpectrum, Group, GroupSample, ScenarioConfig,
};
use crate::detection::{bartlett_statistic, decide, glrt_statistic, Detector, Hypothesis, Threshold};
use crate::estimation::{mle_binary_search, mle_iid, LlfContext};
use crate::montecarlo::{
    calibrate_scenario, scenario_fig1, scenario_fig2, simulate_roc, write_roc_csv, write_trials_csv, Scenario, Summary,
};
use crate::numerics::ComplexMatrix;

pub mod selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_SELFTEST: i32 = 4;

pub const SEED_ENV: &str = "IMPEDANCE_SENTINEL_SEED";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verb {
    SimulateRoc,
    Fig1,
    Fig2,
    Estimate,
    Detect,
    Calibrate,
    Selftest,
}

/// A fully parsed invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub verb: Verb,
    pub config_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    /// `key=value` scenario overrides, applied in order after the config file.
    pub overrides: Vec<(String, String)>,
    pub threads: Option<usize>,
    pub summary_path: Option<PathBuf>,
    pub trials_path: Option<PathBuf>,
    pub stats_path: Option<PathBuf>,
    pub y1_path: Option<PathBuf>,
    pub y2_path: Option<PathBuf>,
    pub gamma: Option<f64>,
    pub gamma_bartlett: Option<f64>,
    pub detector: Detector,
    pub target_pfa: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Config(_) => CliError::usage(e.to_string()),
            _ => CliError::runtime(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "impedance-sentinel",
    version,
    about = "Antenna-impedance change detection simulator"
)]
struct Cli {
    #[command(subcommand)]
    verb: VerbArgs,
}

#[derive(Subcommand, Debug)]
enum VerbArgs {
    /// ROC of both detectors for the configured scenario
    SimulateRoc {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        output: Output,
        /// Also dump per-trial records as CSV
        #[arg(long)]
        trials_out: Option<PathBuf>,
    },
    /// Velocity sweep (300, 50, 20 km/h) plus the uncorrelated reference
    Fig1 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        output: Output,
    },
    /// Transmit-diversity sweep (N = 4, 16, 64) at 20 km/h
    Fig2 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        output: Output,
    },
    /// ML estimate of the channel variance from a statistics CSV
    Estimate {
        #[command(flatten)]
        common: Common,
        /// CSV with a column `s` (and optionally `lambda`)
        #[arg(long)]
        stats: PathBuf,
    },
    /// Both test statistics for two packet-group matrices
    Detect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        y1: PathBuf,
        #[arg(long)]
        y2: PathBuf,
        /// GLRT threshold
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        gamma: f64,
        /// Bartlett threshold (defaults to --gamma)
        #[arg(long, allow_negative_numbers = true)]
        gamma_bartlett: Option<f64>,
    },
    /// Threshold for a target false-alarm rate
    Calibrate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "glrt")]
        detector: String,
        #[arg(long, default_value_t = 0.1)]
        target_pfa: f64,
    },
    /// Run the built-in invariant checks
    Selftest {
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Scenario JSON
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    velocity_kmh: Option<f64>,
    #[arg(long)]
    antennas: Option<usize>,
    #[arg(long)]
    packets: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    snr_db: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Extra `key=value` override of any scenario JSON field
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args, Debug, Default)]
struct Output {
    /// ROC CSV destination (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary destination (defaults to `<out>.summary.json`)
    #[arg(long)]
    summary: Option<PathBuf>,
}

impl Command {
    fn new(verb: Verb) -> Self {
        Self {
            verb,
            config_path: None,
            output_path: None,
            overrides: Vec::new(),
            threads: None,
            summary_path: None,
            trials_path: None,
            stats_path: None,
            y1_path: None,
            y2_path: None,
            gamma: None,
            gamma_bartlett: None,
            detector: Detector::Glrt,
            target_pfa: 0.1,
        }
    }

    fn with_common(mut self, c: Common) -> Result<Self, CliError> {
        self.config_path = c.config;
        self.threads = c.threads;
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                self.overrides.push((k.to_string(), v));
            }
        };
        push("seed", c.seed.map(|v| v.to_string()));
        push("trials", c.trials.map(|v| v.to_string()));
        push("velocity_kmh", c.velocity_kmh.map(|v| v.to_string()));
        push("N", c.antennas.map(|v| v.to_string()));
        push("L", c.packets.map(|v| v.to_string()));
        for kv in c.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("--set expects KEY=VALUE, got {kv:?}")))?;
            self.overrides.push((k.trim().to_string(), v.trim().to_string()));
        }
        // SNR last: it solves P from the final impedances and noise level.
        if let Some(snr) = c.snr_db {
            self.overrides.push(("snr_db".into(), snr.to_string()));
        }
        Ok(self)
    }

    fn with_output(mut self, o: Output) -> Self {
        self.output_path = o.out;
        self.summary_path = o.summary;
        self
    }
}

/// Parses `argv` (program name first). Usage errors carry exit code 2,
/// as do referenced input files that do not exist.
pub fn parse_args<I, T>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError {
        code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
        message: e.render().to_string(),
    })?;
    let cmd = match cli.verb {
        VerbArgs::SimulateRoc {
            common,
            output,
            trials_out,
        } => {
            let mut c = Command::new(Verb::SimulateRoc).with_common(common)?.with_output(output);
            c.trials_path = trials_out;
            c
        }
        VerbArgs::Fig1 { common, output } => Command::new(Verb::Fig1).with_common(common)?.with_output(output),
        VerbArgs::Fig2 { common, output } => Command::new(Verb::Fig2).with_common(common)?.with_output(output),
        VerbArgs::Estimate { common, stats } => {
            let mut c = Command::new(Verb::Estimate).with_common(common)?;
            c.stats_path = Some(stats);
            c
        }
        VerbArgs::Detect {
            common,
            y1,
            y2,
            gamma,
            gamma_bartlett,
        } => {
            let mut c = Command::new(Verb::Detect).with_common(common)?;
            c.y1_path = Some(y1);
            c.y2_path = Some(y2);
            c.gamma = Some(gamma);
            c.gamma_bartlett = gamma_bartlett;
            c
        }
        VerbArgs::Calibrate {
            common,
            detector,
            target_pfa,
        } => {
            let mut c = Command::new(Verb::Calibrate).with_common(common)?;
            c.detector = detector
                .parse()
                .map_err(|e: crate::Error| CliError::usage(e.to_string()))?;
            if !(target_pfa > 0.0 && target_pfa <= 1.0) {
                return Err(CliError::usage(format!(
                    "--target-pfa must lie in (0, 1], got {target_pfa}"
                )));
            }
            c.target_pfa = target_pfa;
            c
        }
        VerbArgs::Selftest { threads } => {
            let mut c = Command::new(Verb::Selftest);
            c.threads = threads;
            c
        }
    };
    for p in [&cmd.config_path, &cmd.stats_path, &cmd.y1_path, &cmd.y2_path]
        .into_iter()
        .flatten()
    {
        if !p.is_file() {
            return Err(CliError::usage(format!("file not found: {}", p.display())));
        }
    }
    Ok(cmd)
}

/// Builds the scenario: config file (or defaults), then the seed from
/// the environment if set, then the command-line overrides in order.
pub fn resolve_config(cmd: &Command, env_seed: Option<&str>) -> Result<ScenarioConfig, CliError> {
    let mut value: serde_json::Value = match &cmd.config_path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?
        }
        None => serde_json::to_value(ScenarioConfig::default()).expect("default serializes"),
    };
    // A partial config file fills in from the defaults.
    if let (Some(obj), serde_json::Value::Object(defaults)) = (
        value.as_object_mut(),
        serde_json::to_value(ScenarioConfig::default()).expect("default serializes"),
    ) {
        for (k, v) in defaults {
            obj.entry(k).or_insert(v);
        }
    }

    let mut overrides = Vec::new();
    let seed_given = cmd.overrides.iter().any(|(k, _)| k == "seed");
    if let (false, Some(s)) = (seed_given, env_seed) {
        overrides.push(("seed".to_string(), s.to_string()));
    }
    overrides.extend(cmd.overrides.iter().cloned());

    let mut snr_db = None;
    for (key, raw) in &overrides {
        match key.as_str() {
            "snr_db" => {
                snr_db = Some(
                    raw.parse::<f64>()
                        .map_err(|e| CliError::usage(format!("snr_db={raw}: {e}")))?,
                );
            }
            "velocity_kmh" => {
                let v: f64 = raw
                    .parse()
                    .map_err(|e| CliError::usage(format!("velocity_kmh={raw}: {e}")))?;
                value["velocity_mps"] = serde_json::json!(kmh_to_mps(v));
            }
            _ => {
                let parsed: serde_json::Value =
                    serde_json::from_str(raw).unwrap_or_else(|_| serde_json::Value::String(raw.clone()));
                let obj = value
                    .as_object_mut()
                    .ok_or_else(|| CliError::usage("config must be a JSON object"))?;
                obj.insert(key.clone(), parsed);
            }
        }
    }

    let mut cfg: ScenarioConfig =
        serde_json::from_value(value).map_err(|e| CliError::usage(format!("invalid configuration: {e}")))?;
    if let Some(db) = snr_db {
        cfg.set_snr_db(db)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Executes a command, writing results to `stdout` and diagnostics to
/// `stderr`; returns the process exit status.
pub fn run(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with_env(cmd, env_seed.as_deref(), stdout, stderr)
}

pub fn run_with_env(cmd: &Command, env_seed: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    // Buffered so the work can move onto a dedicated pool.
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let result = match cmd.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cmd, env_seed, &mut out, &mut err)),
            Err(e) => Err(CliError::usage(format!("--threads {n}: {e}"))),
        },
        None => dispatch(cmd, env_seed, &mut out, &mut err),
    };
    let _ = stdout.write_all(&out);
    let _ = stderr.write_all(&err);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(
    cmd: &Command,
    env_seed: Option<&str>,
    stdout: &mut Vec<u8>,
    stderr: &mut Vec<u8>,
) -> Result<i32, CliError> {
    if cmd.verb == Verb::Selftest {
        let report = selftest::run_selftest();
        for line in &report.lines {
            writeln!(stdout, "{line}").map_err(io_err)?;
        }
        return Ok(if report.passed() { EXIT_OK } else { EXIT_SELFTEST });
    }

    let cfg = resolve_config(cmd, env_seed)?;
    match cmd.verb {
        Verb::SimulateRoc => {
            let scenario = Scenario::new(cfg.clone())?;
            let label = format!("v={}kmh", cfg.velocity_mps * 3.6);
            if let Some(p) = &cmd.trials_path {
                let h0 = scenario.run_trials(Hypothesis::H0)?;
                let h1 = scenario.run_trials(Hypothesis::H1)?;
                let mut buf = Vec::new();
                write_trials_csv(&mut buf, &[h0, h1].concat()).map_err(io_err)?;
                write_file(p, &buf)?;
            }
            let pair = simulate_roc(&scenario, label)?;
            let summary = Summary::from_pairs(vec![&pair], pair.mean_iterations);
            emit_roc(cmd, pair.curves(), &summary, stdout, stderr)?;
        }
        Verb::Fig1 => {
            let fig = scenario_fig1(&cfg)?;
            emit_roc(cmd, fig.curves(), &fig.summary(), stdout, stderr)?;
        }
        Verb::Fig2 => {
            let fig = scenario_fig2(&cfg)?;
            emit_roc(cmd, fig.curves(), &fig.summary(), stdout, stderr)?;
        }
        Verb::Estimate => estimate(cmd, &cfg, stdout)?,
        Verb::Detect => detect(cmd, &cfg, stdout)?,
        Verb::Calibrate => {
            let scenario = Scenario::new(cfg.clone())?;
            let t = calibrate_scenario(&scenario, cmd.detector, cmd.target_pfa, cfg.trials)?;
            if t.underpowered {
                writeln!(
                    stderr,
                    "warning: {} trials is fewer than 10/target_pfa",
                    t.calibration_trials
                )
                .map_err(io_err)?;
            }
            writeln!(
                stdout,
                "detector={} target_pfa={} trials={} gamma={}",
                cmd.detector, t.target_pfa, t.calibration_trials, t.gamma
            )
            .map_err(io_err)?;
        }
        Verb::Selftest => unreachable!(),
    }
    Ok(EXIT_OK)
}

fn emit_roc<'a>(
    cmd: &Command,
    curves: impl IntoIterator<Item = &'a crate::montecarlo::RocCurve>,
    summary: &Summary,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let mut csv = Vec::new();
    write_roc_csv(&mut csv, curves).map_err(io_err)?;
    let json = summary.to_json();
    match &cmd.output_path {
        Some(out) => {
            write_file(out, &csv)?;
            let summary_path = cmd.summary_path.clone().unwrap_or_else(|| summary_path_for(out));
            write_file(&summary_path, json.as_bytes())?;
            writeln!(stdout, "{json}").map_err(io_err)?;
        }
        None => {
            stdout.write_all(&csv).map_err(io_err)?;
            match &cmd.summary_path {
                Some(p) => write_file(p, json.as_bytes())?,
                None => writeln!(stderr, "{json}").map_err(io_err)?,
            }
        }
    }
    Ok(())
}

fn summary_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_stem().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".summary.json");
    out.with_file_name(name)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::runtime(e.to_string())
}

fn correlation_for(cfg: &ScenarioConfig, packets: usize) -> Result<CorrelationSpectrum, CliError> {
    Ok(clarke_correlation(
        packets,
        cfg.velocity_mps,
        cfg.carrier_hz,
        cfg.packet_interval,
    )?)
}

fn estimate(cmd: &Command, cfg: &ScenarioConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let path = cmd.stats_path.as_ref().expect("parse_args sets --stats");
    let text = fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    let table = parse_real_table(&text, path)?;
    let (s, lambdas) = match table.width {
        1 => {
            let s: Vec<f64> = table.rows.iter().map(|r| r[0]).collect();
            let lam = correlation_for(cfg, s.len())?.eigenvalues().to_vec();
            (s, lam)
        }
        2 => (
            table.rows.iter().map(|r| r[0]).collect(),
            table.rows.iter().map(|r| r[1]).collect(),
        ),
        w => {
            return Err(CliError::data(format!(
                "{}: expected 1 or 2 columns (s[,lambda]), found {w}",
                path.display()
            )))
        }
    };
    let sigma_n2 = cfg.sigma_n_sq()?;
    let ctx = LlfContext::new(s.clone(), lambdas, sigma_n2, cfg.antennas).map_err(|e| CliError::data(e.to_string()))?;
    let r = mle_binary_search(&ctx, cfg.alpha, cfg.epsilon);
    let iid = mle_iid(&s, sigma_n2).map_err(|e| CliError::data(e.to_string()))?;
    writeln!(
        stdout,
        "theta_hat={} iterations={} gradient={} theta_iid={} sigma_n2={}",
        r.theta_hat, r.iterations, r.gradient_at_solution, iid, sigma_n2
    )
    .map_err(io_err)
}

fn detect(cmd: &Command, cfg: &ScenarioConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let y1 = read_group(cmd.y1_path.as_ref().expect("parse_args sets --y1"))?;
    let y2 = read_group(cmd.y2_path.as_ref().expect("parse_args sets --y2"))?;
    if (y1.rows(), y1.cols()) != (y2.rows(), y2.cols()) {
        return Err(CliError::data(format!(
            "group shapes differ: {}x{} vs {}x{}",
            y1.rows(),
            y1.cols(),
            y2.rows(),
            y2.cols()
        )));
    }
    let (antennas, packets) = (y1.rows(), y1.cols());
    let cfg = ScenarioConfig {
        antennas,
        packets,
        training_len: cfg.training_len.max(antennas),
        ..cfg.clone()
    };
    let corr = correlation_for(&cfg, packets)?;
    let sigma_n2 = cfg.sigma_n_sq()?;
    let s1 = sufficient_statistic(
        &GroupSample {
            y: y1,
            group: Group::First,
        },
        &corr,
    )?;
    let s2 = sufficient_statistic(
        &GroupSample {
            y: y2,
            group: Group::Second,
        },
        &corr,
    )?;
    let glrt = glrt_statistic(&s1, &s2, corr.eigenvalues(), sigma_n2, antennas, cfg.alpha, cfg.epsilon)?;
    let bt = bartlett_statistic(&s1, &s2)?;
    let gamma = cmd.gamma.unwrap_or(0.0);
    let gamma_bt = cmd.gamma_bartlett.unwrap_or(gamma);
    writeln!(
        stdout,
        "t_glrt={} decision_glrt={} theta1_hat={} theta2_hat={} theta_pooled={} n_itr={}",
        glrt.statistic,
        decide(glrt.statistic, &Threshold::fixed(gamma)),
        glrt.theta1_hat,
        glrt.theta2_hat,
        glrt.theta_pooled,
        glrt.iterations_total
    )
    .map_err(io_err)?;
    writeln!(
        stdout,
        "t_bartlett={} decision_bartlett={}{}",
        bt.statistic,
        decide(bt.statistic, &Threshold::fixed(gamma_bt)),
        if bt.degenerate { " degenerate=true" } else { "" }
    )
    .map_err(io_err)
}

struct RealTable {
    width: usize,
    rows: Vec<Vec<f64>>,
}

/// Numeric CSV with an optional (non-numeric) header line.
fn parse_real_table(text: &str, path: &Path) -> Result<RealTable, CliError> {
    let mut rows = Vec::new();
    let mut width = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Result<Vec<f64>, _> = cells.iter().map(|c| c.parse::<f64>()).collect();
        match parsed {
            Ok(v) => {
                if *width.get_or_insert(v.len()) != v.len() {
                    return Err(CliError::data(format!(
                        "{}: row {} has {} columns, expected {}",
                        path.display(),
                        lineno + 1,
                        v.len(),
                        width.unwrap()
                    )));
                }
                rows.push(v);
            }
            Err(_) if rows.is_empty() && width.is_none() && lineno == 0 => {
                width = Some(cells.len());
            }
            Err(_) => {
                let col = cells.iter().position(|c| c.parse::<f64>().is_err()).unwrap_or(0);
                return Err(CliError::data(format!(
                    "{}: row {}, column {}: cannot parse {:?} as a number",
                    path.display(),
                    lineno + 1,
                    col + 1,
                    cells[col]
                )));
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::data(format!("{}: no data rows", path.display())));
    }
    Ok(RealTable {
        width: width.unwrap_or(0),
        rows,
    })
}

/// Reads an `N x L` complex matrix, one antenna per row, cells as `re+imj`.
pub fn read_group(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    parse_group_csv(&text).map_err(|m| CliError::data(format!("{}: {m}", path.display())))
}

pub fn parse_group_csv(text: &str) -> Result<ComplexMatrix, String> {
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if *cols.get_or_insert(cells.len()) != cells.len() {
            return Err(format!(
                "row {} has {} columns, expected {}",
                lineno + 1,
                cells.len(),
                cols.unwrap()
            ));
        }
        for (c, cell) in cells.iter().enumerate() {
            let z = parse_complex(cell).ok_or_else(|| {
                format!(
                    "row {}, column {}: cannot parse {:?} as re+imj",
                    lineno + 1,
                    c + 1,
                    cell.trim()
                )
            })?;
            data.push(z);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err("no data rows".into());
    }
    ComplexMatrix::from_row_major(rows, cols.unwrap_or(0), data).map_err(|e| e.to_string())
}

/// Parses `a`, `bj`, `a+bj` or `a-bj` (also `i` for the imaginary unit).
pub fn parse_complex(cell: &str) -> Option<Complex64> {
    let s = cell.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix(['j', 'i']) else {
        return s
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (body[..i].trim().parse::<f64>().ok()?, parse_imag(&body[i..])?),
        None => (0.0, parse_imag(body)?),
    };
    (re.is_finite() && im.is_finite()).then(|| Complex64::new(re, im))
}

fn parse_imag(s: &str) -> Option<f64> {
    match s.trim() {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => t.parse().ok(),
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}{}j", z.re, z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

pub fn write_group_csv<W: Write>(mut out: W, y: &ComplexMatrix) -> std::io::Result<()> {
    for r in 0..y.rows() {
        let line: Vec<String> = y.row(r).iter().map(|z| format_complex(*z)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
