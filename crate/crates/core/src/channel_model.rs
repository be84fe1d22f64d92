//! Flat fading, AWGN and the 802.15.4 interference burst process.
//!
//! The interferer is modeled as extra band-limited AWGN switched on during
//! bursts. Bursts are scheduled on the WLAN's traffic bit index and corrupt
//! whole OFDM symbols: if any bit slot of a symbol falls inside a burst, every
//! sample of that symbol gets the extra noise.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp, StandardNormal};

use crate::ofdm_modem::TimeFrame;
use crate::phy_profiles::{db_to_linear, es_eb_offset_db, OfdmProfile, Standard};
use crate::{ComplexSample, Error, Result};

/// 802.15.4 PHY rate in bits per second.
pub const ZIGBEE_BIT_RATE: f64 = 250.0e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// Every coefficient is exactly 1; only AWGN impairs the link.
    AwgnIdentity,
    /// i.i.d. CN(0, 1) coefficients, constant over one fading block.
    Rayleigh,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::AwgnIdentity => "awgn",
            ChannelKind::Rayleigh => "rayleigh",
        })
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "awgn" | "awgn_identity" | "identity" => Ok(ChannelKind::AwgnIdentity),
            "rayleigh" => Ok(ChannelKind::Rayleigh),
            other => Err(Error::invalid(
                "channel",
                format!("`{other}` (expected awgn or rayleigh)"),
            )),
        }
    }
}

/// Flat-fading coefficients for a Tx×Rx antenna grid, stored Tx-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingRealization {
    n_tx: usize,
    n_rx: usize,
    coeffs: Vec<ComplexSample>,
    pub block_index: u64,
}

impl FadingRealization {
    pub fn new(n_tx: usize, n_rx: usize, coeffs: Vec<ComplexSample>, block_index: u64) -> Result<Self> {
        if coeffs.len() != n_tx * n_rx {
            return Err(Error::AntennaGrid {
                n_tx,
                n_rx,
                actual: coeffs.len(),
            });
        }
        Ok(Self {
            n_tx,
            n_rx,
            coeffs,
            block_index,
        })
    }

    pub fn identity(n_tx: usize, n_rx: usize, block_index: u64) -> Self {
        Self {
            n_tx,
            n_rx,
            coeffs: vec![ComplexSample::new(1.0, 0.0); n_tx * n_rx],
            block_index,
        }
    }

    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    pub fn n_rx(&self) -> usize {
        self.n_rx
    }

    pub fn coeffs(&self) -> &[ComplexSample] {
        &self.coeffs
    }

    /// Gain from transmit antenna `tx` to receive antenna `rx`.
    pub fn coeff(&self, tx: usize, rx: usize) -> ComplexSample {
        self.coeffs[tx * self.n_rx + rx]
    }

    /// `Σ|α|²` over every antenna pair.
    pub fn total_gain(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Circularly-symmetric complex Gaussian sample with total variance `var`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, var: f64) -> ComplexSample {
    let sigma = (0.5 * var).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    ComplexSample::new(sigma * re, sigma * im)
}

pub fn sample_fading<R: Rng + ?Sized>(
    rng: &mut R,
    n_tx: usize,
    n_rx: usize,
    kind: ChannelKind,
    block_index: u64,
) -> Result<FadingRealization> {
    for (field, n) in [("n_tx", n_tx), ("n_rx", n_rx)] {
        if !(1..=2).contains(&n) {
            return Err(Error::invalid(field, format!("{n} antennas (expected 1 or 2)")));
        }
    }
    Ok(match kind {
        ChannelKind::AwgnIdentity => FadingRealization::identity(n_tx, n_rx, block_index),
        ChannelKind::Rayleigh => FadingRealization {
            n_tx,
            n_rx,
            coeffs: (0..n_tx * n_rx).map(|_| complex_gaussian(rng, 1.0)).collect(),
            block_index,
        },
    })
}

/// `rx_j = Σ_i h(i, j) · tx_i`, sample by sample.
pub fn apply_channel(tx: &[TimeFrame], h: &FadingRealization) -> Result<Vec<TimeFrame>> {
    if tx.len() != h.n_tx() {
        return Err(Error::LengthMismatch {
            what: "transmit antennas",
            expected: h.n_tx(),
            actual: tx.len(),
        });
    }
    let len = tx.first().map_or(0, TimeFrame::len);
    if let Some(bad) = tx.iter().find(|f| f.len() != len) {
        return Err(Error::LengthMismatch {
            what: "samples per antenna",
            expected: len,
            actual: bad.len(),
        });
    }
    Ok((0..h.n_rx())
        .map(|j| {
            let mut out = TimeFrame::zeros(len);
            for (i, frame) in tx.iter().enumerate() {
                let g = h.coeff(i, j);
                for (o, s) in out.samples.iter_mut().zip(&frame.samples) {
                    *o += g * s;
                }
            }
            out
        })
        .collect())
}

/// Per-sample complex noise variance N₀ for a target Eb/N0.
///
/// Eb/N0 is converted to Es/N0 with the profile's energy-budget offset, where
/// Es is the useful per-bin energy (unit BPSK symbols) diluted over the unused
/// bins and the prefix. With unitary transforms this puts the post-DFT SNR of
/// each data bin at exactly Eb/N0. `+∞` dB gives zero noise.
pub fn noise_variance_for(eb_n0_db: f64, profile: &OfdmProfile) -> f64 {
    let offset_db = es_eb_offset_db(profile);
    let es_n0_db = eb_n0_db + offset_db;
    let es_per_sample = db_to_linear(offset_db);
    es_per_sample / db_to_linear(es_n0_db)
}

/// Adds complex AWGN of variance `var` to every sample.
pub fn add_awgn<R: Rng + ?Sized>(frames: &mut [TimeFrame], var: f64, rng: &mut R) {
    if var == 0.0 {
        return;
    }
    for f in frames {
        for s in &mut f.samples {
            *s += complex_gaussian(rng, var);
        }
    }
}

/// Interference arrival process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterferenceMode {
    Off,
    /// A burst starts every `period_bits` traffic bits, from bit 0.
    Periodic { period_bits: u64 },
    /// Exponential inter-arrival times with the given mean, in bits.
    Poisson { mean_interarrival_bits: f64 },
}

impl InterferenceMode {
    pub fn name(&self) -> &'static str {
        match self {
            InterferenceMode::Off => "off",
            InterferenceMode::Periodic { .. } => "periodic",
            InterferenceMode::Poisson { .. } => "poisson",
        }
    }
}

/// Which links the interferer reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// The 802.15.4 channel sits at the WLAN center; both links are hit.
    BothInterfered,
    /// Only the 40 MHz 802.11n channel overlaps the interferer.
    NOnly,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::BothInterfered => "both_interfered",
            Scenario::NOnly => "n_only",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both_interfered" | "both" => Ok(Scenario::BothInterfered),
            "n_only" => Ok(Scenario::NOnly),
            other => Err(Error::invalid(
                "scenario",
                format!("`{other}` (expected both_interfered or n_only)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceModel {
    pub mode: InterferenceMode,
    pub burst_length_bits: u64,
    /// Interferer power relative to thermal noise, Pᵢ/P_N in dB.
    pub interferer_to_noise_db: f64,
    /// Fraction of the interferer's band that lands inside the WLAN band.
    pub overlap_fraction: f64,
    pub scenario: Scenario,
}

impl Default for InterferenceModel {
    fn default() -> Self {
        Self::off()
    }
}

impl InterferenceModel {
    pub fn off() -> Self {
        Self {
            mode: InterferenceMode::Off,
            burst_length_bits: 1,
            interferer_to_noise_db: 10.0,
            overlap_fraction: 1.0,
            scenario: Scenario::BothInterfered,
        }
    }

    /// Periodic bursts every `phy_rate / 250 kbps` bits: 24 for g, 120 for n.
    pub fn preset(standard: Standard, scenario: Scenario) -> Self {
        Self {
            mode: InterferenceMode::Periodic {
                period_bits: preset_period_bits(standard),
            },
            scenario,
            ..Self::off()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.burst_length_bits < 1 {
            return Err(Error::invalid("burst_length_bits", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.overlap_fraction) {
            return Err(Error::invalid(
                "overlap_fraction",
                format!("{} is outside [0, 1]", self.overlap_fraction),
            ));
        }
        if !self.interferer_to_noise_db.is_finite() {
            return Err(Error::invalid("interferer_to_noise_db", "must be finite"));
        }
        match self.mode {
            InterferenceMode::Periodic { period_bits: 0 } => {
                Err(Error::invalid("period_bits", "must be at least 1"))
            }
            InterferenceMode::Poisson {
                mean_interarrival_bits: m,
            } if !(m.is_finite() && m > 0.0) => Err(Error::invalid(
                "mean_interarrival_bits",
                format!("{m} must be positive and finite"),
            )),
            _ => Ok(()),
        }
    }

    /// Whether a link of `standard` sees any interference under this model.
    pub fn affects(&self, standard: Standard) -> bool {
        self.mode != InterferenceMode::Off
            && !(self.scenario == Scenario::NOnly && standard == Standard::G)
    }

    /// Extra per-sample noise variance during a burst.
    pub fn burst_variance(&self, n0: f64) -> f64 {
        n0 * db_to_linear(self.interferer_to_noise_db) * self.overlap_fraction
    }
}

/// Burst period in traffic bits for a WLAN of `standard`.
pub fn preset_period_bits(standard: Standard) -> u64 {
    let rate = crate::phy_profiles::profile_for(standard).phy_bit_rate();
    (rate / ZIGBEE_BIT_RATE).round() as u64
}

/// Burst start indices of one simulation stream.
///
/// Poisson arrivals are drawn lazily, in order, from the stream given at
/// construction, so the schedule is a pure function of the seed no matter
/// which indices are queried first.
#[derive(Debug, Clone)]
pub struct BurstSchedule<R> {
    mode: InterferenceMode,
    burst_len: u64,
    rng: R,
    starts: Vec<u64>,
    clock: f64,
}

impl<R: Rng> BurstSchedule<R> {
    pub fn new(model: &InterferenceModel, rng: R) -> Self {
        Self {
            mode: model.mode,
            burst_len: model.burst_length_bits.max(1),
            rng,
            starts: Vec::new(),
            clock: 0.0,
        }
    }

    fn extend_past(&mut self, bit: u64, mean: f64) {
        let exp = Exp::new(1.0 / mean).expect("validated mean");
        while self.starts.last().is_none_or(|&s| s <= bit) {
            self.clock += exp.sample(&mut self.rng);
            self.starts.push(self.clock.floor() as u64);
        }
    }

    pub fn is_active(&mut self, bit_index: u64) -> bool {
        self.any_active(bit_index..bit_index + 1)
    }

    /// True if any bit slot in `span` lies inside a burst.
    pub fn any_active(&mut self, span: Range<u64>) -> bool {
        if span.is_empty() {
            return false;
        }
        match self.mode {
            InterferenceMode::Off => false,
            InterferenceMode::Periodic { period_bits } => {
                let r = span.start % period_bits;
                r < self.burst_len || span.start + (period_bits - r) < span.end
            }
            InterferenceMode::Poisson {
                mean_interarrival_bits,
            } => {
                self.extend_past(span.end, mean_interarrival_bits);
                // first burst starting at or after span.end
                let idx = self.starts.partition_point(|&s| s < span.end);
                idx > 0 && self.starts[idx - 1] + self.burst_len > span.start
            }
        }
    }
}

/// Whether traffic bit `bit_index` falls inside a burst.
pub fn burst_active<R: Rng>(schedule: &mut BurstSchedule<R>, bit_index: u64) -> bool {
    schedule.is_active(bit_index)
}

/// Adds thermal noise and, when a burst overlaps `frame_bit_span`, the
/// interferer's extra noise to every sample of the frames of one OFDM symbol
/// period (one frame per receive antenna).
///
/// Thermal and interference noise come from separate streams so switching the
/// interferer on leaves the thermal realization unchanged. Returns whether
/// the symbol was hit.
#[allow(clippy::too_many_arguments)]
pub fn apply_noise_and_interference<S: Rng, T: Rng + ?Sized, U: Rng + ?Sized>(
    rx: &mut [TimeFrame],
    n0: f64,
    model: &InterferenceModel,
    standard: Standard,
    schedule: &mut BurstSchedule<S>,
    frame_bit_span: Range<u64>,
    thermal: &mut T,
    interference: &mut U,
) -> bool {
    add_awgn(rx, n0, thermal);
    let hit = model.affects(standard) && schedule.any_active(frame_bit_span);
    if hit {
        add_awgn(rx, model.burst_variance(n0), interference);
    }
    hit
}
