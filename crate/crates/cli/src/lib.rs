//! Command-line front end for the coexsim link simulator: config parsing
//! with experiment presets, CSV emission, and the spectrum report.

pub mod app;
pub mod config;
mod error;
pub mod output;
pub mod report;

pub use config::{parse_config, parse_config_with, Overrides, Preset, SweepPlan};
pub use error::CliError;

use coexsim_core::sim_engine::{sweep_with, Execution};
use coexsim_core::MetricRecord;

/// Runs every link of the plan over its grid; records are grouped by
/// standard in plan order.
pub fn run_plan(plan: &SweepPlan, execution: Execution) -> Result<Vec<MetricRecord>, CliError> {
    let mut out = Vec::with_capacity(plan.links.len() * plan.eb_n0_points.len());
    for link in &plan.links {
        out.extend(sweep_with(link, &plan.eb_n0_points, execution)?);
    }
    Ok(out)
}
