//! BPSK mapping and the OFDM modulate/demodulate chain.
//!
//! Transforms are unitary (scaled by `1/√n_fft` in both directions), so the
//! energy of a spectrum frame equals the energy of the time-domain body. The
//! Es/Eb dilution then comes only from the unused bins and the prefix.
//!
//! Signed subcarrier index `k` lives in DFT bin `k mod n_fft`.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::phy_profiles::OfdmProfile;
use crate::{ComplexSample, Error, Result};

/// One OFDM symbol in the frequency domain, indexed by DFT bin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumFrame {
    pub bins: Vec<ComplexSample>,
}

impl SpectrumFrame {
    pub fn zeros(n_fft: usize) -> Self {
        Self {
            bins: vec![ComplexSample::new(0.0, 0.0); n_fft],
        }
    }

    pub fn energy(&self) -> f64 {
        self.bins.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// One OFDM symbol in the time domain: `n_cp` prefix samples then the body.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeFrame {
    pub samples: Vec<ComplexSample>,
}

impl TimeFrame {
    pub fn zeros(len: usize) -> Self {
        Self {
            samples: vec![ComplexSample::new(0.0, 0.0); len],
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|c| c.norm_sqr()).sum()
    }

    /// True when the first `n_cp` samples equal the last `n_cp` samples.
    pub fn has_cyclic_prefix(&self, n_cp: usize) -> bool {
        let n = self.samples.len();
        n >= 2 * n_cp && self.samples[..n_cp] == self.samples[n - n_cp..]
    }
}

/// Bit 0 → +1, bit 1 → −1. Any nonzero byte counts as a 1.
pub fn bpsk_map(bits: &[u8]) -> Vec<ComplexSample> {
    bits.iter()
        .map(|&b| ComplexSample::new(if b == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect()
}

/// Hard decision: 1 iff the real part is negative. Zero decides 0.
pub fn bpsk_demap(symbols: &[ComplexSample]) -> Vec<u8> {
    symbols.iter().map(|s| u8::from(s.re < 0.0)).collect()
}

/// DFT bin holding signed subcarrier `k`.
pub fn bin_for(k: i32, n_fft: usize) -> usize {
    k.rem_euclid(n_fft as i32) as usize
}

/// Places `symbols` on the data subcarriers in ascending index order.
pub fn subcarrier_map(symbols: &[ComplexSample], profile: &OfdmProfile) -> Result<SpectrumFrame> {
    let indices = profile.data_subcarrier_indices();
    if symbols.len() != indices.len() {
        return Err(Error::LengthMismatch {
            what: "data symbols",
            expected: indices.len(),
            actual: symbols.len(),
        });
    }
    let mut frame = SpectrumFrame::zeros(profile.n_fft());
    for (&k, &s) in indices.iter().zip(symbols) {
        frame.bins[bin_for(k, profile.n_fft())] = s;
    }
    Ok(frame)
}

/// Reads the data subcarriers back out, in ascending index order.
pub fn subcarrier_extract(frame: &SpectrumFrame, profile: &OfdmProfile) -> Result<Vec<ComplexSample>> {
    check_len("spectrum bins", profile.n_fft(), frame.bins.len())?;
    Ok(profile
        .data_subcarrier_indices()
        .iter()
        .map(|&k| frame.bins[bin_for(k, profile.n_fft())])
        .collect())
}

fn check_len(what: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            what,
            expected,
            actual,
        })
    }
}

/// OFDM modulator/demodulator with cached transform plans for one profile.
#[derive(Clone)]
pub struct OfdmModem {
    n_fft: usize,
    n_cp: usize,
    scale: f64,
    inverse: Arc<dyn Fft<f64>>,
    forward: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for OfdmModem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OfdmModem")
            .field("n_fft", &self.n_fft)
            .field("n_cp", &self.n_cp)
            .finish()
    }
}

impl OfdmModem {
    pub fn new(profile: &OfdmProfile) -> Self {
        let mut planner = FftPlanner::new();
        let n_fft = profile.n_fft();
        Self {
            n_fft,
            n_cp: profile.n_cp(),
            scale: 1.0 / (n_fft as f64).sqrt(),
            inverse: planner.plan_fft_inverse(n_fft),
            forward: planner.plan_fft_forward(n_fft),
        }
    }

    pub fn n_fft(&self) -> usize {
        self.n_fft
    }

    pub fn n_cp(&self) -> usize {
        self.n_cp
    }

    /// Unitary inverse DFT of `frame`, then prepend the last `n_cp` samples.
    pub fn modulate(&self, frame: &SpectrumFrame) -> Result<TimeFrame> {
        check_len("spectrum bins", self.n_fft, frame.bins.len())?;
        let mut body = frame.bins.clone();
        self.inverse.process(&mut body);
        let mut samples = Vec::with_capacity(self.n_cp + self.n_fft);
        samples.extend(body[self.n_fft - self.n_cp..].iter().map(|&c| c * self.scale));
        samples.extend(body.iter().map(|&c| c * self.scale));
        Ok(TimeFrame { samples })
    }

    /// Drop the prefix, then unitary forward DFT of the body.
    pub fn demodulate(&self, tf: &TimeFrame) -> Result<SpectrumFrame> {
        check_len("time samples", self.n_fft + self.n_cp, tf.samples.len())?;
        let mut bins = tf.samples[self.n_cp..].to_vec();
        self.forward.process(&mut bins);
        for c in &mut bins {
            *c *= self.scale;
        }
        Ok(SpectrumFrame { bins })
    }
}

/// One-shot modulation; plans the transform on every call.
pub fn ofdm_modulate(frame: &SpectrumFrame, profile: &OfdmProfile) -> Result<TimeFrame> {
    OfdmModem::new(profile).modulate(frame)
}

/// One-shot demodulation; plans the transform on every call.
pub fn ofdm_demodulate(tf: &TimeFrame, profile: &OfdmProfile) -> Result<SpectrumFrame> {
    OfdmModem::new(profile).demodulate(tf)
}
