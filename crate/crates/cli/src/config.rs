//! Run configuration: one JSON document, every field optional.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use boxwell::spectral::{parse_packet_json, parse_packet_text, time_grid, PacketEntry, DEFAULT_NORM_TOLERANCE};
use boxwell::{Execution, WavePacket, WellConfig};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub well: WellConfig,
    pub packet: PacketSpec,
    pub time: TimeSpec,
    pub oracle: OracleSpec,
    pub output: OutputSpec,
    /// Levels listed by `eigen`.
    pub eigen_count: usize,
    /// Mode index used by `symbolic`.
    pub symbolic_n: usize,
    /// `verify` fails when max |residual| exceeds this.
    pub threshold: f64,
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PacketSpec {
    /// `[n, re, im]` triples.
    pub modes: Vec<PacketEntry>,
    /// Read the triples from this file instead (JSON array or whitespace columns).
    pub file: Option<PathBuf>,
    pub renormalize: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeSpec {
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSpec {
    pub pairs: Vec<(usize, usize)>,
    /// Barrier heights as multiples of the ground-state energy `E₁`.
    pub ladder: Vec<f64>,
    pub grid_points: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    /// Unset means a human-readable table on stdout.
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            well: WellConfig::default(),
            packet: PacketSpec::default(),
            time: TimeSpec::default(),
            oracle: OracleSpec::default(),
            output: OutputSpec::default(),
            eigen_count: 10,
            symbolic_n: 1,
            threshold: 1e-9,
            parallel: true,
        }
    }
}

impl Default for PacketSpec {
    fn default() -> Self {
        // equal superposition of the two lowest states
        PacketSpec {
            modes: vec![PacketEntry(1, FRAC_1_SQRT_2, 0.0), PacketEntry(2, FRAC_1_SQRT_2, 0.0)],
            file: None,
            renormalize: false,
        }
    }
}

impl Default for TimeSpec {
    fn default() -> Self {
        TimeSpec { t_start: 0.0, t_end: 1.0, steps: 101 }
    }
}

impl Default for OracleSpec {
    fn default() -> Self {
        OracleSpec { pairs: vec![(1, 2), (2, 3), (1, 3)], ladder: vec![1e2, 1e3, 1e4, 1e5], grid_points: 4096 }
    }
}

fn from_json_str(text: &str) -> Result<RunConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            anyhow!("{}", e.inner())
        } else {
            anyhow!("field `{path}`: {}", e.inner())
        }
    })
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        from_json_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Apply `key.path=value` overrides. Values parse as JSON, falling back to a plain string.
    pub fn with_overrides(self, overrides: &[String]) -> Result<Self> {
        if overrides.is_empty() {
            return Ok(self);
        }
        let mut doc = serde_json::to_value(&self)?;
        for o in overrides {
            let (key, raw) = o.split_once('=').ok_or_else(|| anyhow!("override `{o}` is not KEY=VALUE"))?;
            let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
            *slot(&mut doc, key)? = value;
        }
        from_json_str(&doc.to_string()).context("applying overrides")
    }

    /// SHA-256 of the compact JSON serialization, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn execution(&self) -> Execution {
        if self.parallel {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }

    pub fn packet(&self) -> Result<WavePacket> {
        let entries = match &self.packet.file {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).with_context(|| format!("reading packet file {}", path.display()))?;
                let parsed = if text.trim_start().starts_with('[') {
                    parse_packet_json(&text)
                } else {
                    parse_packet_text(&text)
                };
                parsed.with_context(|| format!("parsing packet file {}", path.display()))?
            }
            None => self.packet.modes.clone(),
        };
        WavePacket::from_entries(&entries, self.packet.renormalize).map_err(|e| {
            let hint = if self.packet.renormalize {
                String::new()
            } else {
                format!(" (tolerance {DEFAULT_NORM_TOLERANCE:e}; set packet.renormalize = true to rescale)")
            };
            anyhow!("packet: {e}{hint}")
        })
    }

    pub fn times(&self) -> Result<Vec<f64>> {
        let t = &self.time;
        time_grid(t.t_start, t.t_end, t.steps).context("time")
    }

    pub fn check_oracle(&self) -> Result<()> {
        let o = &self.oracle;
        if o.pairs.is_empty() {
            bail!("oracle.pairs is empty");
        }
        if let Some(&(n, j)) = o.pairs.iter().find(|&&(n, j)| n == 0 || j == 0) {
            bail!("oracle.pairs: ({n}, {j}) uses level 0; levels start at 1");
        }
        if o.ladder.is_empty() || o.ladder.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            bail!("oracle.ladder needs positive finite multiples of E1");
        }
        if o.grid_points < 64 {
            bail!("oracle.grid_points = {} is too small (minimum 64)", o.grid_points);
        }
        Ok(())
    }
}

fn slot<'a>(doc: &'a mut Value, key: &str) -> Result<&'a mut Value> {
    let mut cur = doc;
    for part in key.split('.') {
        cur = match cur {
            Value::Object(map) => {
                if !map.contains_key(part) {
                    bail!("unknown config field `{key}`");
                }
                map.get_mut(part).unwrap()
            }
            Value::Array(items) => {
                let i: usize = part.parse().map_err(|_| anyhow!("`{part}` in `{key}` is not an index"))?;
                let len = items.len();
                items.get_mut(i).ok_or_else(|| anyhow!("index {i} in `{key}` out of range (length {len})"))?
            }
            _ => bail!("`{key}` descends into a scalar"),
        };
    }
    Ok(cur)
}
