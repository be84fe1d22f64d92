//! 802.11g / 802.11n OFDM parameter sets and the bit-to-symbol energy budget.
//!
//! Both profiles use BPSK on every data subcarrier with no pilot tones. The
//! useful symbol duration is derived as `n_fft / sample_rate` (3.2 µs for both
//! standards), so the two profiles cannot drift apart.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Which WLAN standard a profile models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Standard {
    /// 802.11g, SISO-OFDM, 20 MHz.
    G,
    /// 802.11n, 2×2 Alamouti MIMO-OFDM, 40 MHz.
    N,
}

impl Standard {
    pub const ALL: [Standard; 2] = [Standard::G, Standard::N];

    pub fn as_str(self) -> &'static str {
        match self {
            Standard::G => "g",
            Standard::N => "n",
        }
    }
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Standard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g" | "11g" | "802.11g" => Ok(Standard::G),
            "n" | "11n" | "802.11n" => Ok(Standard::N),
            other => Err(Error::invalid("standard", format!("`{other}` (expected g or n)"))),
        }
    }
}

/// Modulation parameter set of one standard.
#[derive(Debug, Clone, PartialEq)]
pub struct OfdmProfile {
    standard: Standard,
    n_fft: usize,
    data_subcarrier_indices: Vec<i32>,
    sample_rate: f64,
    cp_duration: f64,
    n_spatial_streams: usize,
    phy_bit_rate: f64,
}

impl OfdmProfile {
    /// Builds a validated profile.
    ///
    /// Indices are sorted ascending; they must be unique, nonzero and
    /// strictly inside `(-n_fft/2, n_fft/2)`. The cyclic prefix must be a
    /// whole number of samples.
    pub fn new(
        standard: Standard,
        n_fft: usize,
        mut data_subcarrier_indices: Vec<i32>,
        sample_rate: f64,
        cp_duration: f64,
        n_spatial_streams: usize,
        phy_bit_rate: f64,
    ) -> Result<Self> {
        if n_fft == 0 {
            return Err(Error::invalid("n_fft", "must be positive"));
        }
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::invalid("sample_rate", "must be positive and finite"));
        }
        if !(cp_duration.is_finite() && cp_duration >= 0.0) {
            return Err(Error::invalid("cp_duration", "must be nonnegative and finite"));
        }
        let cp_samples = cp_duration * sample_rate;
        if (cp_samples - cp_samples.round()).abs() > 1e-6 {
            return Err(Error::invalid(
                "cp_duration",
                format!("{cp_samples} samples is not a whole number"),
            ));
        }
        if n_spatial_streams == 0 {
            return Err(Error::invalid("n_spatial_streams", "must be at least 1"));
        }
        if !(phy_bit_rate.is_finite() && phy_bit_rate >= 0.0) {
            return Err(Error::invalid("phy_bit_rate", "must be nonnegative and finite"));
        }
        data_subcarrier_indices.sort_unstable();
        let half = (n_fft / 2) as i64;
        for w in data_subcarrier_indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(
                    "data_subcarrier_indices",
                    format!("duplicate index {}", w[0]),
                ));
            }
        }
        if let Some(&bad) = data_subcarrier_indices
            .iter()
            .find(|&&k| k == 0 || (k as i64).abs() >= half)
        {
            return Err(Error::invalid(
                "data_subcarrier_indices",
                format!("index {bad} is DC or outside ±{}", half - 1),
            ));
        }
        Ok(Self {
            standard,
            n_fft,
            data_subcarrier_indices,
            sample_rate,
            cp_duration,
            n_spatial_streams,
            phy_bit_rate,
        })
    }

    pub fn standard(&self) -> Standard {
        self.standard
    }

    pub fn n_fft(&self) -> usize {
        self.n_fft
    }

    /// Signed DFT bin indices carrying data, ascending.
    pub fn data_subcarrier_indices(&self) -> &[i32] {
        &self.data_subcarrier_indices
    }

    /// Number of data subcarriers (nDSC).
    pub fn n_data_subcarriers(&self) -> usize {
        self.data_subcarrier_indices.len()
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn cp_duration(&self) -> f64 {
        self.cp_duration
    }

    /// Cyclic prefix length in samples.
    pub fn n_cp(&self) -> usize {
        (self.cp_duration * self.sample_rate).round() as usize
    }

    /// Samples in one transmitted OFDM symbol, prefix included.
    pub fn symbol_len(&self) -> usize {
        self.n_fft + self.n_cp()
    }

    /// Useful (post-prefix) symbol duration `T_d = n_fft / sample_rate`.
    pub fn data_symbol_duration(&self) -> f64 {
        self.n_fft as f64 / self.sample_rate
    }

    pub fn n_spatial_streams(&self) -> usize {
        self.n_spatial_streams
    }

    pub fn phy_bit_rate(&self) -> f64 {
        self.phy_bit_rate
    }
}

/// Returns the frozen parameter set of `standard`.
pub fn profile_for(standard: Standard) -> OfdmProfile {
    let built = match standard {
        Standard::G => OfdmProfile::new(
            Standard::G,
            64,
            symmetric_indices(26),
            20.0e6,
            0.8e-6,
            1,
            6.0e6,
        ),
        Standard::N => OfdmProfile::new(
            Standard::N,
            128,
            symmetric_indices(57),
            40.0e6,
            0.8e-6,
            2,
            30.0e6,
        ),
    };
    built.expect("built-in profiles are valid")
}

/// `{-k..-1, +1..+k}`
fn symmetric_indices(k: i32) -> Vec<i32> {
    (-k..=-1).chain(1..=k).collect()
}

/// Dilution of symbol energy relative to bit energy, in dB, given the
/// occupied-bin ratio and the prefix overhead.
pub fn energy_dilution_db(n_dsc: usize, n_fft: usize, t_d: f64, t_cp: f64) -> f64 {
    10.0 * (n_dsc as f64 / n_fft as f64).log10() + 10.0 * (t_d / (t_d + t_cp)).log10()
}

/// Offset such that `es_n0_db = eb_n0_db + offset`. Always ≤ 0.
pub fn es_eb_offset_db(profile: &OfdmProfile) -> f64 {
    energy_dilution_db(
        profile.n_data_subcarriers(),
        profile.n_fft(),
        profile.data_symbol_duration(),
        profile.cp_duration(),
    )
}

/// BPSK carries one bit per data subcarrier per spatial stream.
pub fn bits_per_ofdm_symbol(profile: &OfdmProfile) -> usize {
    profile.n_data_subcarriers() * profile.n_spatial_streams()
}

/// Eb/N0 and the matching Es/N0 of one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    pub eb_n0_db: f64,
    pub es_n0_db: f64,
    pub data_symbol_duration: f64,
}

impl EnergyBudget {
    pub fn new(profile: &OfdmProfile, eb_n0_db: f64) -> Self {
        Self {
            eb_n0_db,
            es_n0_db: eb_n0_db + es_eb_offset_db(profile),
            data_symbol_duration: profile.data_symbol_duration(),
        }
    }
}

/// `10^(db/10)`
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10·log10(x)`
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
