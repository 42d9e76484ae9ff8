//! Run configuration: TOML document parsing, the angle grammar and the
//! preset machines.
//!
//! Angle strings are either exact multiples of pi ("pi/2", "2pi/8", "3pi/4",
//! "pi", "0"), kept as rationals of a full turn, or plain floats, kept as raw
//! radians. Exact angles enable period detection; floats opt out of it.
//!
//! ```toml
//! cycles = 1
//! indices = "standard"    # or a list of digit strings like ["33000"]
//! seed = 42
//!
//! [machine]
//! preset = "cat"          # or: angles = ["pi/2", "0", "0", "0"]
//! m = 4                   # optional with a preset
//! g = 1.0
//!
//! [output]
//! path = "records.csv"
//! format = "csv"          # csv | json
//! ```

use std::path::PathBuf;

use num_rational::Rational64;
use serde::Deserialize;

use crate::clusterops::ClusterIndex;
use crate::error::{Error, Result};
use crate::machine::{Angle, MachineSpec};
use crate::records::Format;

/// Environment variable holding the default output directory.
pub const OUT_DIR_ENV: &str = "QTURING_OUT_DIR";

/// Which correlation indices a command should evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum IndexSelection {
    /// The end-of-cycle set: head one-points, memory one-points, memory
    /// pairs, head-memory pairs.
    Standard,
    Explicit(Vec<ClusterIndex>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: Format,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: MachineSpec,
    pub cycles: u64,
    pub indices: IndexSelection,
    pub output: Option<OutputSpec>,
    pub seed: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    machine: RawMachine,
    #[serde(default = "default_cycles")]
    cycles: u64,
    #[serde(default)]
    indices: RawIndices,
    #[serde(default)]
    seed: u64,
    output: Option<RawOutput>,
}

fn default_cycles() -> u64 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMachine {
    preset: Option<String>,
    m: Option<usize>,
    angles: Option<Vec<toml::Value>>,
    g: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(untagged)]
enum RawIndices {
    #[default]
    Unset,
    Keyword(String),
    List(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: PathBuf,
    #[serde(default = "default_format")]
    format: Format,
}

fn default_format() -> Format {
    Format::Csv
}

/// Parse one angle string per the grammar above.
pub fn parse_angle(text: &str) -> Result<Angle> {
    let s = text.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let err = || Error::Config(format!("malformed angle {text:?}"));
    if let Some(pos) = s.find("pi") {
        let (coeff, tail) = s.split_at(pos);
        let num: i64 = if coeff.is_empty() {
            1
        } else {
            coeff.trim().parse().map_err(|_| err())?
        };
        let tail = &tail[2..];
        let den: i64 = if tail.is_empty() {
            1
        } else {
            let d = tail.trim().strip_prefix('/').ok_or_else(err)?;
            d.trim().parse().map_err(|_| err())?
        };
        if den == 0 {
            return Err(err());
        }
        // n*pi/d radians = n/(2d) turns
        let sign = if neg { -1 } else { 1 };
        return Ok(Angle::Turns(Rational64::new(sign * num, 2 * den)));
    }
    let v: f64 = s.parse().map_err(|_| err())?;
    let v = if neg { -v } else { v };
    if v == 0.0 {
        Ok(Angle::ZERO)
    } else {
        Ok(Angle::Radians(v))
    }
}

fn parse_angle_value(v: &toml::Value) -> Result<Angle> {
    match v {
        toml::Value::String(s) => parse_angle(s),
        toml::Value::Integer(i) => {
            if *i == 0 {
                Ok(Angle::ZERO)
            } else {
                Ok(Angle::Radians(*i as f64))
            }
        }
        toml::Value::Float(f) => parse_angle(&f.to_string()),
        other => Err(Error::Config(format!("malformed angle {other:?}"))),
    }
}

/// Expand a preset name into a machine, honoring an optional ring size.
pub fn preset_machine(name: &str, cells: Option<usize>) -> Result<MachineSpec> {
    let m = cells.unwrap_or(4);
    match name {
        "zeno" => MachineSpec::zeno(m),
        "coin" => MachineSpec::coin(m),
        "cat" => MachineSpec::cat(m),
        other => Err(Error::Config(format!("unknown preset {other:?}"))),
    }
}

fn build_machine(raw: &RawMachine) -> Result<MachineSpec> {
    let mut spec = match (&raw.preset, &raw.angles) {
        (Some(name), None) => preset_machine(name, raw.m)?,
        (None, Some(values)) => {
            let angles = values
                .iter()
                .map(parse_angle_value)
                .collect::<Result<Vec<_>>>()?;
            if let Some(m) = raw.m {
                if m != angles.len() {
                    return Err(Error::Config(format!(
                        "m = {m} disagrees with {} angles",
                        angles.len()
                    )));
                }
            }
            MachineSpec::new(angles)?
        }
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "specify either a preset or an angle list, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Config(
                "machine needs a preset or an angle list".into(),
            ))
        }
    };
    if let Some(g) = raw.g {
        if g <= 0.0 {
            return Err(Error::InvalidCoupling(g));
        }
        spec = spec.with_coupling(g);
    }
    Ok(spec)
}

/// Parse and validate a config document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let spec = build_machine(&raw.machine)?;
    if raw.cycles < 1 {
        return Err(Error::Config("cycles must be >= 1".into()));
    }
    let subsystems = spec.num_cells() + 1;
    let indices = match &raw.indices {
        RawIndices::Unset => IndexSelection::Standard,
        RawIndices::Keyword(k) if k == "standard" => IndexSelection::Standard,
        RawIndices::Keyword(other) => {
            return Err(Error::Config(format!("unknown index keyword {other:?}")))
        }
        RawIndices::List(items) => {
            let mut parsed = Vec::with_capacity(items.len());
            for item in items {
                let idx: ClusterIndex = item
                    .parse()
                    .map_err(|_| Error::Config(format!("malformed index {item:?}")))?;
                if idx.len() != subsystems {
                    return Err(Error::Config(format!(
                        "index {item:?} has length {}, machine has {subsystems} subsystems",
                        idx.len()
                    )));
                }
                parsed.push(idx);
            }
            IndexSelection::Explicit(parsed)
        }
    };
    let output = raw.output.map(|o| OutputSpec {
        path: resolve_out_path(o.path),
        format: o.format,
    });
    Ok(RunConfig {
        spec,
        cycles: raw.cycles,
        indices,
        output,
        seed: raw.seed,
    })
}

/// Relative output paths land in `QTURING_OUT_DIR` when it is set.
pub fn resolve_out_path(path: PathBuf) -> PathBuf {
    if path.is_absolute() {
        return path;
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path,
    }
}
