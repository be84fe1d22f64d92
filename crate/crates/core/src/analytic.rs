//! Closed-form error rates, SINR, and the PER/throughput mappings.
//!
//! These serve as oracles for the Monte Carlo engine and back the
//! `analytic` CLI subcommand.

use rand::Rng;

use crate::channel_model::{sample_fading, ChannelKind};
use crate::mimo_stbc::{post_combining_ebn0, TX_POWER_SCALE};
use crate::phy_profiles::linear_to_db;
use crate::{Error, Result};

/// Uncoded BPSK bit error probability in AWGN, `½·erfc(√(Eb/N0))`.
pub fn ber_bpsk_awgn(eb_n0_linear: f64) -> f64 {
    0.5 * libm::erfc(eb_n0_linear.max(0.0).sqrt())
}

/// BPSK symbol error probability; same form with Es/N0.
pub fn ser_bpsk_awgn(es_n0_linear: f64) -> f64 {
    ber_bpsk_awgn(es_n0_linear)
}

/// Rayleigh-averaged BER of the 2×2 Alamouti link.
///
/// Averages `½·erfc(√γ)` over `n_draws` channel realizations, where
/// `γ = Σ|α|² · Eb/N0 / 2` (post-combining Eb/N0 under the equal transmit
/// power split).
pub fn ber_bpsk_mimo_semianalytic<R: Rng + ?Sized>(eb_n0_linear: f64, n_draws: usize, rng: &mut R) -> f64 {
    ber_bpsk_fading_semianalytic(eb_n0_linear, 2, 2, n_draws, rng)
}

/// Rayleigh-averaged BER of an `n_tx`×`n_rx` link (1×1 SISO or
/// 2×2 Alamouti). Transmit power is split evenly across antennas.
pub fn ber_bpsk_fading_semianalytic<R: Rng + ?Sized>(
    eb_n0_linear: f64,
    n_tx: usize,
    n_rx: usize,
    n_draws: usize,
    rng: &mut R,
) -> f64 {
    assert!(n_draws >= 1, "n_draws must be at least 1");
    let split = if n_tx == 2 { TX_POWER_SCALE * TX_POWER_SCALE } else { 1.0 };
    let mut acc = 0.0;
    for i in 0..n_draws {
        let h = sample_fading(rng, n_tx, n_rx, ChannelKind::Rayleigh, i as u64)
            .expect("antenna counts are 1 or 2");
        acc += ber_bpsk_awgn(post_combining_ebn0(&h, eb_n0_linear) * split);
    }
    acc / n_draws as f64
}

/// Linear powers of signal, thermal noise and interferer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBudget {
    pub p_signal: f64,
    pub p_noise: f64,
    pub p_interferer: f64,
}

/// `10·log10(P_c / (P_N + Pᵢ))`
pub fn sinr_db(budget: &NoiseBudget) -> Result<f64> {
    let denom = budget.p_noise + budget.p_interferer;
    if denom <= 0.0 {
        return Err(Error::ZeroNoisePower);
    }
    Ok(linear_to_db(budget.p_signal / denom))
}

/// Packet error probability with independent bit errors: `1 − (1 − ber)^L`.
pub fn per_from_ber(ber: f64, packet_length_bits: u64) -> f64 {
    -(packet_length_bits as f64 * (-ber).ln_1p()).exp_m1()
}

/// Goodput: `phy_rate × (1 − per)`.
pub fn throughput_bps(phy_rate: f64, per: f64) -> f64 {
    phy_rate * (1.0 - per)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRates {
    pub ber: f64,
    pub per: f64,
    pub packet_length_bits: u64,
}

impl ErrorRates {
    pub fn from_ber(ber: f64, packet_length_bits: u64) -> Self {
        Self {
            ber,
            per: per_from_ber(ber, packet_length_bits),
            packet_length_bits,
        }
    }
}
