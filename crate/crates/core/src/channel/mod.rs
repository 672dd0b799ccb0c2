//! Physical scenario: impedance-dependent channel variance, noise level,
//! DFT training, Clarke temporal correlation, and simulation of packet
//! groups together with their sufficient statistics.

mod correlation;
mod group;
mod impedance;
mod scenario;
mod training;

pub use correlation::{clarke_correlation, CorrelationSpectrum};
pub use group::{generate_group, sufficient_statistic, Group, GroupSample, SufficientStatistic};
pub use impedance::{channel_variance, reflection_gain, Impedance};
pub use scenario::{
    db_to_linear, kmh_to_mps, noise_variance, post_detection_snr, ScenarioConfig, DEFAULT_ALPHA, DEFAULT_EPSILON,
    DEFAULT_SNR_DB, SPEED_OF_LIGHT,
};
pub use training::{dft_training, simulate_packet_full};
