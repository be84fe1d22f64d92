//! CSV rendering and output files.

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::Path;

use coexsim_core::analytic::{
    ber_bpsk_awgn, ber_bpsk_fading_semianalytic, per_from_ber, ser_bpsk_awgn, throughput_bps,
};
use coexsim_core::phy_profiles::{db_to_linear, es_eb_offset_db, profile_for};
use coexsim_core::rng::{stream, Lane};
use coexsim_core::{MetricRecord, Standard};

use crate::CliError;

pub const METRICS_HEADER: [&str; 11] = [
    "standard",
    "scenario",
    "ebno_db",
    "bits",
    "bit_errors",
    "packets",
    "packet_errors",
    "ber",
    "per",
    "throughput_bps",
    "seed",
];

pub const ANALYTIC_HEADER: [&str; 11] = [
    "standard",
    "ebno_db",
    "esno_db",
    "ber_awgn",
    "ser_awgn",
    "ber_rayleigh",
    "per_awgn",
    "per_rayleigh",
    "throughput_awgn_bps",
    "throughput_rayleigh_bps",
    "packet_length_bits",
];

/// Ratios keep 11 significant digits.
pub fn fmt_ratio(x: f64) -> String {
    format!("{x:.10e}")
}

/// Rates to the millibit per second, trailing zeros dropped:
/// `30000000`, `22500000.5`.
pub fn fmt_rate(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Shortest string that parses back to `x`.
pub fn fmt_db(x: f64) -> String {
    format!("{x}")
}

fn finish(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("in-memory writer cannot fail")
}

pub fn metrics_csv(records: &[MetricRecord]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(METRICS_HEADER).expect("in-memory");
    for r in records {
        w.write_record([
            r.standard.as_str().to_string(),
            r.scenario.as_str().to_string(),
            fmt_db(r.eb_n0_db),
            r.bits_simulated.to_string(),
            r.bit_errors.to_string(),
            r.packets.to_string(),
            r.packet_errors.to_string(),
            fmt_ratio(r.ber),
            fmt_ratio(r.per),
            fmt_rate(r.throughput_bps),
            r.seed.to_string(),
        ])
        .expect("in-memory");
    }
    finish(w)
}

/// One row of the closed-form / semianalytic curves.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticRow {
    pub standard: Standard,
    pub eb_n0_db: f64,
    pub es_n0_db: f64,
    pub ber_awgn: f64,
    pub ser_awgn: f64,
    /// Rayleigh average: 1×1 for g, 2×2 Alamouti for n.
    pub ber_rayleigh: f64,
    pub per_awgn: f64,
    pub per_rayleigh: f64,
    pub throughput_awgn_bps: f64,
    pub throughput_rayleigh_bps: f64,
    pub packet_length_bits: u64,
}

pub fn analytic_rows(
    standard: Standard,
    points: &[f64],
    draws: usize,
    seed: u64,
    packet_length_bits: u64,
) -> Vec<AnalyticRow> {
    let profile = profile_for(standard);
    let offset = es_eb_offset_db(&profile);
    let n_ant = profile.n_spatial_streams();
    let rate = profile.phy_bit_rate();
    points
        .iter()
        .enumerate()
        .map(|(i, &eb)| {
            let es = eb + offset;
            let mut rng = stream(seed, i as u64, 0, Lane::Analytic);
            let ber_awgn = ber_bpsk_awgn(db_to_linear(eb));
            let ber_rayleigh = ber_bpsk_fading_semianalytic(db_to_linear(eb), n_ant, n_ant, draws, &mut rng);
            let per_awgn = per_from_ber(ber_awgn, packet_length_bits);
            let per_rayleigh = per_from_ber(ber_rayleigh, packet_length_bits);
            AnalyticRow {
                standard,
                eb_n0_db: eb,
                es_n0_db: es,
                ber_awgn,
                ser_awgn: ser_bpsk_awgn(db_to_linear(es)),
                ber_rayleigh,
                per_awgn,
                per_rayleigh,
                throughput_awgn_bps: throughput_bps(rate, per_awgn),
                throughput_rayleigh_bps: throughput_bps(rate, per_rayleigh),
                packet_length_bits,
            }
        })
        .collect()
}

pub fn analytic_csv(rows: &[AnalyticRow]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ANALYTIC_HEADER).expect("in-memory");
    for r in rows {
        w.write_record([
            r.standard.as_str().to_string(),
            fmt_db(r.eb_n0_db),
            fmt_db(r.es_n0_db),
            fmt_ratio(r.ber_awgn),
            fmt_ratio(r.ser_awgn),
            fmt_ratio(r.ber_rayleigh),
            fmt_ratio(r.per_awgn),
            fmt_ratio(r.per_rayleigh),
            fmt_rate(r.throughput_awgn_bps),
            fmt_rate(r.throughput_rayleigh_bps),
            r.packet_length_bits.to_string(),
        ])
        .expect("in-memory");
    }
    finish(w)
}

/// Writes `bytes` to `path`, or to stdout when `path` is `None`.
///
/// An existing file is only replaced when `force` is set.
pub fn write_output(path: Option<&Path>, bytes: &[u8], force: bool) -> Result<(), CliError> {
    let Some(path) = path else {
        return io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")));
    };
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    let mut file = opts.open(path).map_err(|e| {
        if e.kind() == io::ErrorKind::AlreadyExists {
            CliError::io(format!("`{}` already exists (pass --force to overwrite)", path.display()))
        } else {
            CliError::io(format!("cannot write `{}`: {e}", path.display()))
        }
    })?;
    file.write_all(bytes)
        .map_err(|e| CliError::io(format!("cannot write `{}`: {e}", path.display())))
}
