//! 2.4 GHz channel maps for 802.11 and 802.15.4 and spectral overlap.
//!
//! WLAN channels are 22 MHz wide (20 MHz-class) or 40 MHz wide; 802.15.4
//! channels are 3 MHz wide. Bands are open intervals: two bands that only
//! touch at an edge do not overlap.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Lower edge of the 2.4 GHz ISM band, MHz.
pub const ISM_LOW_MHZ: f64 = 2400.0;
/// Upper edge of the 2.4 GHz ISM band, MHz.
pub const ISM_HIGH_MHZ: f64 = 2483.5;

pub const WLAN_20_OCCUPIED_MHZ: f64 = 22.0;
pub const WLAN_40_OCCUPIED_MHZ: f64 = 40.0;
pub const ZIGBEE_WIDTH_MHZ: f64 = 3.0;

pub const ZIGBEE_CHANNELS: std::ops::RangeInclusive<u8> = 11..=26;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub center: f64,
    pub width: f64,
}

impl Band {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0 && center.is_finite() && width.is_finite()) {
            return Err(Error::invalid("band", format!("width {width} must be positive")));
        }
        Ok(Self { center, width })
    }

    pub fn low(&self) -> f64 {
        self.center - self.width / 2.0
    }

    pub fn high(&self) -> f64 {
        self.center + self.width / 2.0
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] MHz", self.low(), self.high())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WlanWidth {
    /// 20 MHz channel, 22 MHz occupied.
    Mhz20,
    /// 40 MHz, extension channel above the primary.
    Mhz40Above,
    /// 40 MHz, extension channel below the primary.
    Mhz40Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WlanDeployment {
    pub channel_number: u8,
    pub width: WlanWidth,
}

impl WlanDeployment {
    pub fn new(channel_number: u8, width: WlanWidth) -> Self {
        Self {
            channel_number,
            width,
        }
    }
}

impl fmt::Display for WlanDeployment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.width {
            WlanWidth::Mhz20 => "20",
            WlanWidth::Mhz40Above => "40+",
            WlanWidth::Mhz40Below => "40-",
        };
        write!(f, "{}:{}", self.channel_number, w)
    }
}

/// Parses `<channel>:<width>` with width `20`, `22`, `40+` or `40-`.
impl FromStr for WlanDeployment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::invalid(
                "wlan",
                format!("`{s}` (expected <channel 1-14>:<20|22|40+|40->)"),
            )
        };
        let (ch, w) = s.trim().split_once(':').ok_or_else(bad)?;
        let channel_number: u8 = ch.trim().parse().map_err(|_| bad())?;
        let width = match w.trim() {
            "20" | "22" => WlanWidth::Mhz20,
            "40+" | "40" => WlanWidth::Mhz40Above,
            "40-" => WlanWidth::Mhz40Below,
            _ => return Err(bad()),
        };
        Ok(Self::new(channel_number, width))
    }
}

/// Center frequency of 802.11 channel `n` in the 2.4 GHz band.
pub fn wlan_center_mhz(channel_number: u8) -> Result<f64> {
    match channel_number {
        1..=13 => Ok(2407.0 + 5.0 * channel_number as f64),
        14 => Ok(2484.0),
        n => Err(Error::invalid("wlan channel", format!("{n} is outside 1..=14"))),
    }
}

/// Occupied band of a WLAN deployment.
pub fn wlan_band(d: &WlanDeployment) -> Result<Band> {
    let primary = wlan_center_mhz(d.channel_number)?;
    let band = match d.width {
        WlanWidth::Mhz20 => Band::new(primary, WLAN_20_OCCUPIED_MHZ)?,
        WlanWidth::Mhz40Above => Band::new(primary + 10.0, WLAN_40_OCCUPIED_MHZ)?,
        WlanWidth::Mhz40Below => Band::new(primary - 10.0, WLAN_40_OCCUPIED_MHZ)?,
    };
    if d.width != WlanWidth::Mhz20 && (band.low() < ISM_LOW_MHZ || band.high() > ISM_HIGH_MHZ) {
        return Err(Error::invalid(
            "wlan",
            format!("40 MHz deployment {d} spans {band}, outside {ISM_LOW_MHZ}-{ISM_HIGH_MHZ} MHz"),
        ));
    }
    Ok(band)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZigbeeChannel {
    pub channel_number: u8,
    pub center: f64,
    pub width: f64,
}

impl ZigbeeChannel {
    pub fn new(channel_number: u8) -> Result<Self> {
        if !ZIGBEE_CHANNELS.contains(&channel_number) {
            return Err(Error::invalid(
                "zigbee channel",
                format!("{channel_number} is outside 11..=26"),
            ));
        }
        Ok(Self {
            channel_number,
            center: 2405.0 + 5.0 * (channel_number as f64 - 11.0),
            width: ZIGBEE_WIDTH_MHZ,
        })
    }

    pub fn band(&self) -> Band {
        Band {
            center: self.center,
            width: self.width,
        }
    }
}

/// All sixteen 2.4 GHz 802.15.4 channels.
pub fn zigbee_channels() -> Vec<ZigbeeChannel> {
    ZIGBEE_CHANNELS
        .map(|n| ZigbeeChannel::new(n).expect("in range"))
        .collect()
}

/// Open-interval intersection test.
pub fn overlaps(a: &Band, b: &Band) -> bool {
    a.low() < b.high() && b.low() < a.high()
}

/// Width of the intersection of two bands, MHz (0 when disjoint).
pub fn intersection_width(a: &Band, b: &Band) -> f64 {
    (a.high().min(b.high()) - a.low().max(b.low())).max(0.0)
}

/// Share of the 802.15.4 channel's band lying inside the WLAN band.
pub fn overlap_fraction(zigbee: &ZigbeeChannel, wlan: &Band) -> f64 {
    intersection_width(&zigbee.band(), wlan) / zigbee.width
}

/// 802.15.4 channel numbers whose band overlaps none of the deployments.
pub fn free_zigbee_channels(deployments: &[WlanDeployment]) -> Result<BTreeSet<u8>> {
    let bands = deployments.iter().map(wlan_band).collect::<Result<Vec<_>>>()?;
    Ok(zigbee_channels()
        .into_iter()
        .filter(|z| !bands.iter().any(|b| overlaps(&z.band(), b)))
        .map(|z| z.channel_number)
        .collect())
}
