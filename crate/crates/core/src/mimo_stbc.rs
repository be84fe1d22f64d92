//! Alamouti 2×2 space-time block code, applied per subcarrier over two
//! consecutive OFDM symbol periods.
//!
//! Transmit power is split equally between the two antennas: the simulator
//! scales each antenna's symbol by [`TX_POWER_SCALE`] so a MIMO link radiates
//! the same total power per bit as a SISO link at equal Eb/N0.

use crate::channel_model::FadingRealization;
use crate::{ComplexSample, Error, Result};

/// Per-antenna amplitude scale, `1/√2`.
pub const TX_POWER_SCALE: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Alamouti codeword, `tx[time][antenna]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StbcCodeword {
    pub tx: [[ComplexSample; 2]; 2],
}

impl StbcCodeword {
    pub fn scaled(self, k: f64) -> Self {
        let mut tx = self.tx;
        for row in &mut tx {
            for c in row {
                *c *= k;
            }
        }
        Self { tx }
    }

    /// Total energy over both periods and both antennas.
    pub fn energy(&self) -> f64 {
        self.tx.iter().flatten().map(|c| c.norm_sqr()).sum()
    }
}

/// Period 0 sends `(s0, s1)`, period 1 sends `(−s1*, s0*)`.
pub fn stbc_encode(s0: ComplexSample, s1: ComplexSample) -> StbcCodeword {
    StbcCodeword {
        tx: [[s0, s1], [-s1.conj(), s0.conj()]],
    }
}

/// Combiner decision statistics for one symbol pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinerOutput {
    pub estimates: [ComplexSample; 2],
    /// `Σ|α|²` over all four antenna pairs.
    pub channel_gain: f64,
}

impl CombinerOutput {
    /// Estimates divided by the channel gain; `None` on a dead channel.
    pub fn normalized(&self) -> Option<[ComplexSample; 2]> {
        (self.channel_gain > 0.0).then(|| self.estimates.map(|e| e / self.channel_gain))
    }
}

fn require_2x2(h: &FadingRealization) -> Result<()> {
    if h.n_tx() == 2 && h.n_rx() == 2 {
        Ok(())
    } else {
        Err(Error::AntennaGrid {
            n_tx: 2,
            n_rx: 2,
            actual: h.coeffs().len(),
        })
    }
}

/// Alamouti maximum-ratio combining.
///
/// `rx[time][rx_antenna]` holds the two received periods. With no noise the
/// estimates equal `channel_gain × (s0, s1)` times whatever transmit scaling
/// was applied. A zero gain returns [`Error::DegenerateChannel`].
pub fn stbc_combine(rx: &[[ComplexSample; 2]; 2], h: &FadingRealization) -> Result<CombinerOutput> {
    require_2x2(h)?;
    let mut est0 = ComplexSample::new(0.0, 0.0);
    let mut est1 = ComplexSample::new(0.0, 0.0);
    for j in 0..2 {
        let h1 = h.coeff(0, j);
        let h2 = h.coeff(1, j);
        let r0 = rx[0][j];
        let r1 = rx[1][j];
        est0 += h1.conj() * r0 + h2 * r1.conj();
        est1 += h2.conj() * r0 - h1 * r1.conj();
    }
    let channel_gain = h.total_gain();
    if channel_gain == 0.0 {
        return Err(Error::DegenerateChannel);
    }
    Ok(CombinerOutput {
        estimates: [est0, est1],
        channel_gain,
    })
}

/// Effective Eb/N0 after combining: `Σ|α|² × eb_n0`.
///
/// This does not include the transmit power split; callers that model it
/// halve the result.
pub fn post_combining_ebn0(h: &FadingRealization, eb_n0_linear: f64) -> f64 {
    h.total_gain() * eb_n0_linear
}
