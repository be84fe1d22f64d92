//! Spectrum planner report: which 802.15.4 channels each WLAN deployment
//! covers, and which stay free.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use coexsim_core::spectrum_planner::{
    free_zigbee_channels, overlap_fraction, overlaps, wlan_band, zigbee_channels,
};
use coexsim_core::{WlanDeployment, WlanWidth};

use crate::output::fmt_db;
use crate::CliError;

/// Free-channel count commonly quoted for a WLAN plan on channels 1, 6 and 11.
pub const QUOTED_FREE_COUNT_1_6_11: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRow {
    pub zigbee_channel: u8,
    pub center_mhz: f64,
    /// Overlapping deployments with the overlapped share of the channel.
    pub overlapping: Vec<(WlanDeployment, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub deployments: Vec<WlanDeployment>,
    pub rows: Vec<ChannelRow>,
    pub free: BTreeSet<u8>,
    pub annotation: Option<String>,
}

/// Parses `1:20,6:20,11:20`. An empty string or `none` means no WLANs.
pub fn parse_deployments(spec: &str) -> Result<Vec<WlanDeployment>, CliError> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "none" {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|item| item.parse::<WlanDeployment>().map_err(CliError::from))
        .collect()
}

pub fn spectrum_report(deployments: &[WlanDeployment]) -> Result<SpectrumReport, CliError> {
    let bands = deployments
        .iter()
        .map(|d| wlan_band(d).map(|b| (*d, b)))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = zigbee_channels()
        .into_iter()
        .map(|z| ChannelRow {
            zigbee_channel: z.channel_number,
            center_mhz: z.center,
            overlapping: bands
                .iter()
                .filter(|(_, b)| overlaps(&z.band(), b))
                .map(|(d, b)| (*d, overlap_fraction(&z, b)))
                .collect(),
        })
        .collect();
    let free = free_zigbee_channels(deployments)?;
    Ok(SpectrumReport {
        deployments: deployments.to_vec(),
        annotation: annotation(deployments, &free),
        rows,
        free,
    })
}

fn annotation(deployments: &[WlanDeployment], free: &BTreeSet<u8>) -> Option<String> {
    let set: HashSet<_> = deployments.iter().copied().collect();
    let classic: HashSet<_> = [1, 6, 11]
        .map(|ch| WlanDeployment::new(ch, WlanWidth::Mhz20))
        .into_iter()
        .collect();
    (set == classic && free.len() != QUOTED_FREE_COUNT_1_6_11).then(|| {
        format!(
            "note: WLAN channels 1/6/11 are often said to leave {QUOTED_FREE_COUNT_1_6_11} 802.15.4 channels free; \
             with 22 MHz WLAN and 3 MHz 802.15.4 bands the computed free set has {} ({})",
            free.len(),
            join(free)
        )
    })
}

fn join(free: &BTreeSet<u8>) -> String {
    if free.is_empty() {
        "none".into()
    } else {
        free.iter().map(u8::to_string).collect::<Vec<_>>().join(", ")
    }
}

impl SpectrumReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let deps = if self.deployments.is_empty() {
            "none".to_string()
        } else {
            self.deployments.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        };
        let _ = writeln!(s, "WLAN deployments: {deps}");
        for row in &self.rows {
            let _ = write!(s, "  802.15.4 ch{:>2} @ {} MHz: ", row.zigbee_channel, fmt_db(row.center_mhz));
            if row.overlapping.is_empty() {
                let _ = writeln!(s, "free");
            } else {
                let hits: Vec<_> = row
                    .overlapping
                    .iter()
                    .map(|(d, f)| format!("{d} (overlap {f:.3})"))
                    .collect();
                let _ = writeln!(s, "{}", hits.join(", "));
            }
        }
        let _ = writeln!(s, "free channels ({}): {}", self.free.len(), join(&self.free));
        if let Some(a) = &self.annotation {
            let _ = writeln!(s, "{a}");
        }
        s
    }

    /// One row per (channel, overlapping deployment); free channels get a
    /// single row with an empty deployment column.
    pub fn csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["zigbee_channel", "center_mhz", "overlapping_wlan", "overlap_fraction", "free"])
            .expect("in-memory");
        for row in &self.rows {
            let free = row.overlapping.is_empty().to_string();
            let ch = row.zigbee_channel.to_string();
            let center = fmt_db(row.center_mhz);
            if row.overlapping.is_empty() {
                w.write_record([ch.as_str(), &center, "", "0", &free]).expect("in-memory");
            }
            for (d, f) in &row.overlapping {
                w.write_record([ch.clone(), center.clone(), d.to_string(), fmt_db(*f), free.clone()])
                    .expect("in-memory");
            }
        }
        w.into_inner().expect("in-memory")
    }
}
