//! Sweep configuration: a small TOML document, optional presets, and
//! command-line overrides.
//!
//! ```toml
//! preset = "fig7"            # optional; fills every other key
//! standards = ["g", "n"]
//! eb_n0_points = "0:2:20"    # or [0, 5, 10]
//! channel = "rayleigh"       # awgn | rayleigh
//! packet_length_bits = 1024
//! seed = 1
//!
//! [stop]
//! min_bit_errors = 100
//! max_bits = 10000000
//!
//! [interference]
//! mode = "periodic"          # off | periodic | poisson
//! scenario = "both_interfered"
//! burst_length_bits = 1
//! inr_db = 10.0
//! overlap_fraction = 1.0
//! period_bits_g = 24
//! period_bits_n = 120
//! mean_interarrival_bits_g = 24.0
//! mean_interarrival_bits_n = 120.0
//! ```
//!
//! Explicit keys win over the preset; overrides win over the file.

use std::fmt;
use std::str::FromStr;

use coexsim_core::channel_model::preset_period_bits;
use coexsim_core::sim_engine::{DEFAULT_MAX_BITS, DEFAULT_MIN_BIT_ERRORS, DEFAULT_PACKET_LENGTH_BITS};
use coexsim_core::{
    ChannelKind, InterferenceMode, InterferenceModel, LinkConfig, Scenario, Standard, StopRule,
};
use toml::{Table, Value};

use crate::CliError;

const TOP_KEYS: &[&str] = &[
    "preset",
    "standards",
    "eb_n0_points",
    "channel",
    "packet_length_bits",
    "seed",
    "stop",
    "interference",
];
const STOP_KEYS: &[&str] = &["min_bit_errors", "max_bits"];
const INTERFERENCE_KEYS: &[&str] = &[
    "mode",
    "scenario",
    "burst_length_bits",
    "inr_db",
    "overlap_fraction",
    "period_bits_g",
    "period_bits_n",
    "mean_interarrival_bits_g",
    "mean_interarrival_bits_n",
];

/// Named experiment setups. All use Rayleigh fading and 0:2:20 dB.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// g and n, no interference.
    Fig6,
    /// g and n, both links interfered.
    Fig7,
    /// g and n, only the n link interfered.
    Fig8,
    /// g alone, interfered.
    Fig9,
    /// n alone, interfered.
    Fig10,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig6, Preset::Fig7, Preset::Fig8, Preset::Fig9, Preset::Fig10];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::Fig9 => "fig9",
            Preset::Fig10 => "fig10",
        }
    }

    pub fn standards(self) -> Vec<Standard> {
        match self {
            Preset::Fig9 => vec![Standard::G],
            Preset::Fig10 => vec![Standard::N],
            _ => Standard::ALL.to_vec(),
        }
    }

    fn mode(self) -> &'static str {
        match self {
            Preset::Fig6 => "off",
            _ => "periodic",
        }
    }

    fn scenario(self) -> Scenario {
        match self {
            Preset::Fig8 => Scenario::NOnly,
            _ => Scenario::BothInterfered,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::config(format!("`preset` = \"{s}\" is not accepted (accepted: fig6, fig7, fig8, fig9, fig10)")))
    }
}

/// Command-line adjustments applied on top of the document.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub preset: Option<String>,
    pub seed: Option<u64>,
    /// `key=value` pairs; `section.key` reaches into `[stop]` and
    /// `[interference]`. Values are read as TOML, falling back to a string.
    pub set: Vec<String>,
}

/// A validated sweep: one link per standard, sharing the Eb/N0 grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub preset: Option<Preset>,
    pub links: Vec<LinkConfig>,
    pub eb_n0_points: Vec<f64>,
}

pub fn parse_config(text: &str) -> Result<SweepPlan, CliError> {
    parse_config_with(text, &Overrides::default())
}

pub fn parse_config_with(text: &str, overrides: &Overrides) -> Result<SweepPlan, CliError> {
    let mut doc: Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::config(format!("malformed config: {}", e.message())))?;
    if let Some(p) = &overrides.preset {
        doc.insert("preset".into(), Value::String(p.clone()));
    }
    for kv in &overrides.set {
        apply_set(&mut doc, kv)?;
    }
    let mut plan = build(&doc)?;
    if let Some(seed) = overrides.seed {
        for link in &mut plan.links {
            link.master_seed = seed;
        }
    }
    Ok(plan)
}

fn apply_set(doc: &mut Table, kv: &str) -> Result<(), CliError> {
    let (key, raw) = kv
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("--set expects key=value, got `{kv}`")))?;
    let (key, raw) = (key.trim(), raw.trim());
    let value = format!("v = {raw}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()));
    match key.split_once('.') {
        None => {
            doc.insert(key.to_string(), value);
        }
        Some((section, sub)) => {
            let entry = doc
                .entry(section.to_string())
                .or_insert_with(|| Value::Table(Table::new()));
            let Value::Table(t) = entry else {
                return Err(CliError::config(format!("`{section}` is not a section")));
            };
            t.insert(sub.to_string(), value);
        }
    }
    Ok(())
}

/// Typed access to one table with key paths for diagnostics.
struct Section<'a> {
    name: &'a str,
    table: &'a Table,
}

impl<'a> Section<'a> {
    fn path(&self, key: &str) -> String {
        if self.name.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.name)
        }
    }

    fn reject_unknown(&self, accepted: &[&str]) -> Result<(), CliError> {
        for key in self.table.keys() {
            if !accepted.contains(&key.as_str()) {
                return Err(CliError::config(format!(
                    "unknown key `{}` (accepted: {})",
                    self.path(key),
                    accepted.join(", ")
                )));
            }
        }
        Ok(())
    }

    fn bad(&self, key: &str, value: &Value, accepted: &str) -> CliError {
        CliError::config(format!("`{}` = {value} is out of range (accepted: {accepted})", self.path(key)))
    }

    fn str(&self, key: &str, accepted: &str) -> Result<Option<&'a str>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(v) => Err(self.bad(key, v, accepted)),
        }
    }

    fn int(&self, key: &str, min: i64) -> Result<Option<u64>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= min => Ok(Some(*i as u64)),
            Some(v) => Err(self.bad(key, v, &format!("integer >= {min}"))),
        }
    }

    fn float(&self, key: &str, accepted: &str, ok: impl Fn(f64) -> bool) -> Result<Option<f64>, CliError> {
        let x = match self.table.get(key) {
            None => return Ok(None),
            Some(Value::Integer(i)) => *i as f64,
            Some(Value::Float(f)) => *f,
            Some(v) => return Err(self.bad(key, v, accepted)),
        };
        if ok(x) {
            Ok(Some(x))
        } else {
            Err(self.bad(key, &self.table[key], accepted))
        }
    }

    fn sub(&self, key: &'a str) -> Result<Option<Section<'a>>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Table(t)) => Ok(Some(Section { name: key, table: t })),
            Some(v) => Err(self.bad(key, v, "a [section] table")),
        }
    }
}

fn build(doc: &Table) -> Result<SweepPlan, CliError> {
    let top = Section { name: "", table: doc };
    top.reject_unknown(TOP_KEYS)?;

    let preset = top
        .str("preset", "fig6, fig7, fig8, fig9, fig10")?
        .map(Preset::from_str)
        .transpose()?;

    let mut missing = Vec::new();
    let channel = match top.str("channel", "\"awgn\" or \"rayleigh\"")? {
        Some(s) => Some(
            s.parse::<ChannelKind>()
                .map_err(|_| top.bad("channel", &doc["channel"], "\"awgn\" or \"rayleigh\""))?,
        ),
        None => preset.map(|_| ChannelKind::Rayleigh),
    };
    if channel.is_none() {
        missing.push("channel");
    }
    let points = match doc.get("eb_n0_points") {
        Some(v) => Some(parse_points_value(v)?),
        None => preset.map(|_| parse_points("0:2:20").expect("valid range")),
    };
    if points.is_none() {
        missing.push("eb_n0_points");
    }
    if !missing.is_empty() {
        return Err(CliError::config(format!(
            "missing required keys: {} (or set `preset` to one of fig6, fig7, fig8, fig9, fig10)",
            missing.join(", ")
        )));
    }
    let (channel, points) = (channel.expect("checked"), points.expect("checked"));

    let standards = match doc.get("standards") {
        Some(v) => parse_standards(v)?,
        None => preset.map_or_else(|| Standard::ALL.to_vec(), Preset::standards),
    };
    let packet_length_bits = top.int("packet_length_bits", 1)?.unwrap_or(DEFAULT_PACKET_LENGTH_BITS);
    let seed = top.int("seed", 0)?.unwrap_or(1);

    let mut stop_rule = StopRule {
        min_bit_errors: DEFAULT_MIN_BIT_ERRORS,
        max_bits: DEFAULT_MAX_BITS,
    };
    if let Some(stop) = top.sub("stop")? {
        stop.reject_unknown(STOP_KEYS)?;
        if let Some(v) = stop.int("min_bit_errors", 1)? {
            stop_rule.min_bit_errors = v;
        }
        if let Some(v) = stop.int("max_bits", 1)? {
            stop_rule.max_bits = v;
        }
    }
    if stop_rule.max_bits < packet_length_bits {
        return Err(CliError::config(format!(
            "`stop.max_bits` = {} is out of range (accepted: integer >= packet_length_bits = {packet_length_bits})",
            stop_rule.max_bits
        )));
    }

    let interference = parse_interference(top.sub("interference")?, preset)?;

    let mut links = Vec::with_capacity(standards.len());
    for standard in standards {
        let cfg = LinkConfig {
            packet_length_bits,
            stop_rule,
            master_seed: seed,
            interference: interference.model_for(standard),
            ..LinkConfig::new(standard, channel)
        };
        cfg.validate()?;
        links.push(cfg);
    }
    Ok(SweepPlan {
        preset,
        links,
        eb_n0_points: points,
    })
}

struct InterferenceSpec {
    mode: String,
    base: InterferenceModel,
    period: [u64; 2],
    mean: [f64; 2],
}

impl InterferenceSpec {
    fn model_for(&self, standard: Standard) -> InterferenceModel {
        let i = match standard {
            Standard::G => 0,
            Standard::N => 1,
        };
        let mode = match self.mode.as_str() {
            "periodic" => InterferenceMode::Periodic {
                period_bits: self.period[i],
            },
            "poisson" => InterferenceMode::Poisson {
                mean_interarrival_bits: self.mean[i],
            },
            _ => InterferenceMode::Off,
        };
        InterferenceModel { mode, ..self.base }
    }
}

fn parse_interference(section: Option<Section<'_>>, preset: Option<Preset>) -> Result<InterferenceSpec, CliError> {
    let periods = [preset_period_bits(Standard::G), preset_period_bits(Standard::N)];
    let mut spec = InterferenceSpec {
        mode: preset.map_or("off", Preset::mode).to_string(),
        base: InterferenceModel {
            scenario: preset.map_or(Scenario::BothInterfered, Preset::scenario),
            ..InterferenceModel::off()
        },
        period: periods,
        mean: periods.map(|p| p as f64),
    };
    let Some(s) = section else {
        return Ok(spec);
    };
    s.reject_unknown(INTERFERENCE_KEYS)?;
    const MODES: &str = "\"off\", \"periodic\", \"poisson\"";
    if let Some(m) = s.str("mode", MODES)? {
        if !["off", "periodic", "poisson"].contains(&m) {
            return Err(s.bad("mode", &s.table["mode"], MODES));
        }
        spec.mode = m.to_string();
    }
    const SCENARIOS: &str = "\"both_interfered\", \"n_only\"";
    if let Some(sc) = s.str("scenario", SCENARIOS)? {
        spec.base.scenario = sc
            .parse()
            .map_err(|_| s.bad("scenario", &s.table["scenario"], SCENARIOS))?;
    }
    if let Some(b) = s.int("burst_length_bits", 1)? {
        spec.base.burst_length_bits = b;
    }
    if let Some(x) = s.float("inr_db", "finite number (dB)", f64::is_finite)? {
        spec.base.interferer_to_noise_db = x;
    }
    if let Some(x) = s.float("overlap_fraction", "number in [0, 1]", |x| (0.0..=1.0).contains(&x))? {
        spec.base.overlap_fraction = x;
    }
    for (i, suffix) in ["g", "n"].into_iter().enumerate() {
        if let Some(p) = s.int(&format!("period_bits_{suffix}"), 1)? {
            spec.period[i] = p;
        }
        let key = format!("mean_interarrival_bits_{suffix}");
        if let Some(m) = s.float(&key, "number > 0", |x| x.is_finite() && x > 0.0)? {
            spec.mean[i] = m;
        }
    }
    Ok(spec)
}

fn parse_standards(v: &Value) -> Result<Vec<Standard>, CliError> {
    let bad = || {
        CliError::config(format!(
            "`standards` = {v} is out of range (accepted: non-empty array of distinct \"g\", \"n\")"
        ))
    };
    let Value::Array(items) = v else {
        return Err(bad());
    };
    let mut out = Vec::new();
    for item in items {
        let s: Standard = item.as_str().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if out.contains(&s) {
            return Err(bad());
        }
        out.push(s);
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn parse_points_value(v: &Value) -> Result<Vec<f64>, CliError> {
    const ACCEPTED: &str = "\"start:step:stop\" range, comma list, or non-empty array of finite numbers";
    let bad = |detail: String| CliError::config(format!("`eb_n0_points` = {v} is out of range ({detail}; accepted: {ACCEPTED})"));
    match v {
        Value::String(s) => parse_points(s).map_err(bad),
        Value::Array(items) if !items.is_empty() => items
            .iter()
            .map(|x| match x {
                Value::Integer(i) => Ok(*i as f64),
                Value::Float(f) if f.is_finite() => Ok(*f),
                other => Err(bad(format!("{other} is not a finite number"))),
            })
            .collect(),
        _ => Err(bad("empty or wrong type".into())),
    }
}

/// Expands an Eb/N0 grid. Accepts comma-separated items, each a number,
/// `start:stop` (step 1) or `start:step:stop`; ranges include `stop` when it
/// lies on the grid.
pub fn parse_points(spec: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim) {
        let nums = item
            .split(':')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number")))
            .collect::<Result<Vec<_>, _>>()?;
        if nums.iter().any(|x| !x.is_finite()) {
            return Err("points must be finite".into());
        }
        let (start, step, stop) = match nums[..] {
            [x] => {
                out.push(x);
                continue;
            }
            [a, b] => (a, 1.0, b),
            [a, s, b] => (a, s, b),
            _ => return Err(format!("`{item}` has too many fields")),
        };
        if step <= 0.0 || stop < start {
            return Err(format!("`{item}` needs step > 0 and stop >= start"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        if n > 100_000 {
            return Err(format!("`{item}` expands to too many points"));
        }
        out.extend((0..=n).map(|i| start + i as f64 * step));
    }
    Ok(out)
}
