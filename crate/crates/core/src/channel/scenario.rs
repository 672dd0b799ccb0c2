use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{channel_variance, Impedance};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

pub const DEFAULT_ALPHA: f64 = 10.0;
pub const DEFAULT_EPSILON: f64 = 1e-3;
pub const DEFAULT_SNR_DB: f64 = 10.0;

/// Full description of one detection experiment.
///
/// Field names in JSON follow the symbols of the system model (`N`, `T`,
/// `L`, `P`, `sigma_L2`, ...). `alpha` and `epsilon` are the bisection
/// parameters and may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Transmit antennas.
    #[serde(rename = "N")]
    pub antennas: usize,
    /// Training length in symbols.
    #[serde(rename = "T")]
    pub training_len: usize,
    /// Packets per group.
    #[serde(rename = "L")]
    pub packets: usize,
    /// Total transmit power.
    #[serde(rename = "P")]
    pub power: f64,
    /// Receiver noise variance.
    #[serde(rename = "sigma_L2")]
    pub receiver_noise: f64,
    /// Path-gain variance, shared by both groups.
    #[serde(rename = "sigma_g2")]
    pub path_gain_variance: f64,
    #[serde(rename = "Z_A1")]
    pub antenna_before: Impedance,
    #[serde(rename = "Z_A2")]
    pub antenna_after: Impedance,
    #[serde(rename = "Z_L")]
    pub load: Impedance,
    pub carrier_hz: f64,
    pub velocity_mps: f64,
    /// Packet interval.
    #[serde(rename = "Ts_seconds")]
    pub packet_interval: f64,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

impl Default for ScenarioConfig {
    /// Four transmit antennas, 64-symbol DFT training, 20 packets per
    /// group, 900 MHz carrier, 1 ms packets, dipole (72+42j) changing to
    /// 72+100j against a 50 ohm load, walking speed and 10 dB SNR.
    fn default() -> Self {
        let mut cfg = Self {
            antennas: 4,
            training_len: 64,
            packets: 20,
            power: 1.0,
            receiver_noise: 1.0,
            path_gain_variance: 1.0,
            antenna_before: Impedance::new(72.0, 42.0),
            antenna_after: Impedance::new(72.0, 100.0),
            load: Impedance::resistive(50.0),
            carrier_hz: 900e6,
            velocity_mps: kmh_to_mps(20.0),
            packet_interval: 1e-3,
            trials: 100_000,
            seed: 1,
            alpha: DEFAULT_ALPHA,
            epsilon: DEFAULT_EPSILON,
        };
        cfg.set_snr_db(DEFAULT_SNR_DB).expect("default impedances are valid");
        cfg
    }
}

pub fn kmh_to_mps(kmh: f64) -> f64 {
    kmh / 3.6
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.antennas < 1 {
            return bad("N must be >= 1".into());
        }
        if self.training_len < self.antennas {
            return bad(format!("T = {} must be >= N = {}", self.training_len, self.antennas));
        }
        if self.packets < 1 {
            return bad("L must be >= 1".into());
        }
        for (name, v) in [
            ("P", self.power),
            ("sigma_L2", self.receiver_noise),
            ("sigma_g2", self.path_gain_variance),
            ("carrier_hz", self.carrier_hz),
            ("Ts_seconds", self.packet_interval),
            ("alpha", self.alpha),
            ("epsilon", self.epsilon),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("{name} must be finite and > 0, got {v}"));
            }
        }
        if !(self.velocity_mps >= 0.0) || !self.velocity_mps.is_finite() {
            return bad(format!("velocity must be finite and >= 0, got {}", self.velocity_mps));
        }
        self.antenna_before.validate()?;
        self.antenna_after.validate()?;
        self.load.validate()?;
        self.sigma_h1_sq()?;
        self.sigma_h2_sq()?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Channel variance with the pre-change impedance.
    pub fn sigma_h1_sq(&self) -> Result<f64> {
        channel_variance(self.antenna_before, self.load, self.path_gain_variance)
    }

    /// Channel variance with the post-change impedance.
    pub fn sigma_h2_sq(&self) -> Result<f64> {
        channel_variance(self.antenna_after, self.load, self.path_gain_variance)
    }

    pub fn sigma_n_sq(&self) -> Result<f64> {
        noise_variance(self.antennas, self.training_len, self.power, self.receiver_noise)
    }

    /// Post-detection SNR referenced to group 1.
    pub fn snr(&self) -> Result<f64> {
        post_detection_snr(self.power, self.sigma_h1_sq()?, self.receiver_noise)
    }

    /// Solves `P` so that the group-1 SNR equals `snr_db`, keeping `sigma_L2`.
    pub fn set_snr_db(&mut self, snr_db: f64) -> Result<()> {
        if !snr_db.is_finite() {
            return Err(Error::Config(format!("SNR must be finite, got {snr_db}")));
        }
        self.power = db_to_linear(snr_db) * self.receiver_noise / self.sigma_h1_sq()?;
        Ok(())
    }

    /// Maximum Doppler frequency `v f_c / c`.
    pub fn doppler_hz(&self) -> f64 {
        self.velocity_mps * self.carrier_hz / SPEED_OF_LIGHT
    }
}

/// Noise variance `N σ_L² / (T P)` of the reduced per-packet statistic.
pub fn noise_variance(antennas: usize, training_len: usize, power: f64, receiver_noise: f64) -> Result<f64> {
    if antennas == 0 || training_len == 0 || !(power > 0.0) || !(receiver_noise > 0.0) {
        return Err(Error::domain("noise_variance needs N, T, P, sigma_L2 > 0"));
    }
    Ok(antennas as f64 * receiver_noise / (training_len as f64 * power))
}

/// Average post-detection SNR `P σ_h² / σ_L²` (linear).
pub fn post_detection_snr(power: f64, sigma_h2: f64, receiver_noise: f64) -> Result<f64> {
    if !(power > 0.0) || !(sigma_h2 > 0.0) || !(receiver_noise > 0.0) {
        return Err(Error::domain("post_detection_snr needs positive inputs"));
    }
    Ok(power * sigma_h2 / receiver_noise)
}
