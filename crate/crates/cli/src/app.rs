//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use coexsim_core::sim_engine::Execution;
use coexsim_core::Standard;

use crate::config::{parse_config_with, parse_points, Overrides};
use crate::output::{analytic_csv, analytic_rows, metrics_csv, write_output};
use crate::report::{parse_deployments, spectrum_report};
use crate::{run_plan, CliError};

#[derive(Debug, Parser)]
#[command(name = "coexsim", version, about = "802.11g/802.11n link simulator under 802.15.4 interference")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo BER/PER/throughput sweep.
    Sweep(SweepArgs),
    /// Closed-form AWGN and semianalytic Rayleigh curves.
    Analytic(AnalyticArgs),
    /// 802.15.4 channels left free by a WLAN channel plan.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// TOML config file; omit to run a preset with defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// fig6, fig7, fig8, fig9 or fig10.
    #[arg(long)]
    preset: Option<String>,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Overwrite an existing output file.
    #[arg(long)]
    force: bool,
    /// Override a config key, e.g. `--set stop.max_bits=1000000`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Run points one after another instead of in parallel.
    #[arg(long)]
    serial: bool,
}

#[derive(Debug, Args)]
struct AnalyticArgs {
    /// g or n.
    #[arg(long)]
    standard: String,
    /// Eb/N0 grid in dB, e.g. `0:2:20` or `0,5,10`.
    #[arg(long)]
    ebno: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Channel draws per point for the Rayleigh average.
    #[arg(long, default_value_t = 100_000)]
    draws: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1024)]
    packet_length: u64,
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    /// WLAN plan as `<channel>:<20|40+|40->` items, e.g. `1:20,6:20,11:20`.
    #[arg(long, default_value = "")]
    wlan: String,
    /// Also write the per-channel table as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to stderr as one line.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let err = CliError::usage(first.trim_start_matches("error: "));
            eprintln!("{err}");
            return err.exit_code();
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sweep(a) => sweep(a),
        Command::Analytic(a) => analytic(a),
        Command::Spectrum(a) => spectrum(a),
    }
}

fn sweep(a: SweepArgs) -> Result<(), CliError> {
    let text = match &a.config {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::io(format!("cannot read `{}`: {e}", p.display())))?,
        None => String::new(),
    };
    let overrides = Overrides {
        preset: a.preset,
        seed: a.seed,
        set: a.set,
    };
    let plan = parse_config_with(&text, &overrides)?;
    if let Some(out) = &a.out {
        if out.exists() && !a.force {
            return Err(CliError::io(format!("`{}` already exists (pass --force to overwrite)", out.display())));
        }
    }
    let execution = if a.serial { Execution::Serial } else { Execution::Parallel };
    let records = run_plan(&plan, execution)?;
    write_output(a.out.as_deref(), &metrics_csv(&records), a.force)
}

fn analytic(a: AnalyticArgs) -> Result<(), CliError> {
    let standard: Standard = a
        .standard
        .parse()
        .map_err(|_| CliError::usage(format!("--standard `{}` (accepted: g, n)", a.standard)))?;
    let points = parse_points(&a.ebno).map_err(|e| CliError::usage(format!("--ebno: {e}")))?;
    if a.draws == 0 {
        return Err(CliError::usage("--draws must be at least 1"));
    }
    if a.packet_length == 0 {
        return Err(CliError::usage("--packet-length must be at least 1"));
    }
    let rows = analytic_rows(standard, &points, a.draws, a.seed, a.packet_length);
    write_output(a.out.as_deref(), &analytic_csv(&rows), a.force)
}

fn spectrum(a: SpectrumArgs) -> Result<(), CliError> {
    let report = spectrum_report(&parse_deployments(&a.wlan)?)?;
    if let Some(out) = &a.out {
        write_output(Some(out), &report.csv(), a.force)?;
    }
    print!("{}", report.text());
    Ok(())
}
