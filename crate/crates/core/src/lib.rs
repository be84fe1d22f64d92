//! Baseband link-level simulator for 802.11g (SISO-OFDM) and 802.11n
//! (2×2 Alamouti MIMO-OFDM) links under 802.15.4 interference.
//!
//! The crate is organized bottom-up:
//!
//! - [`phy_profiles`]: modulation parameter sets and the Es/Eb energy budget.
//! - [`ofdm_modem`]: BPSK mapping and the OFDM modulate/demodulate chain.
//! - [`mimo_stbc`]: Alamouti 2×2 encoder and combiner.
//! - [`channel_model`]: flat fading, AWGN and the interference burst process.
//! - [`analytic`]: closed-form error rates, SINR, PER and throughput.
//! - [`spectrum_planner`]: 2.4 GHz channel maps and overlap computation.
//! - [`sim_engine`]: the Monte Carlo harness tying everything together.

pub mod analytic;
pub mod channel_model;
mod error;
pub mod mimo_stbc;
pub mod ofdm_modem;
pub mod phy_profiles;
pub mod rng;
pub mod sim_engine;
pub mod spectrum_planner;

pub use error::{Error, Result};

/// Complex baseband sample.
pub type ComplexSample = num_complex::Complex64;

pub use analytic::{ErrorRates, NoiseBudget};
pub use channel_model::{
    BurstSchedule, ChannelKind, FadingRealization, InterferenceMode, InterferenceModel, Scenario,
};
pub use mimo_stbc::{CombinerOutput, StbcCodeword};
pub use ofdm_modem::{OfdmModem, SpectrumFrame, TimeFrame};
pub use phy_profiles::{EnergyBudget, OfdmProfile, Standard};
pub use sim_engine::{LinkConfig, MetricRecord, ScenarioComparison, StopRule};
pub use spectrum_planner::{Band, WlanDeployment, WlanWidth, ZigbeeChannel};
