//! Run configuration: a flat `key = value` text format whose keys coincide
//! with the CLI flag names, so a file and flag overrides share one setter.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::GroupSpec;
use crate::localization::{Cocycle, ModelSpec};
use crate::oracle::{QuadratureRule, QuadratureSpec};

const MAX_GRID_POINTS: usize = 1_000_000;
const MAX_NODES: usize = 1 << 16;
const MAX_LEVELS: usize = 12;
const MAX_BOX: usize = 4096;

/// Inclusive arithmetic grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl XiGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::Parse("non-finite grid bound".into()));
        }
        if !(step > 0.0) || stop < start {
            return Err(Error::Parse(format!("empty grid {start}:{stop}:{step}")));
        }
        let grid = XiGrid { start, stop, step };
        if (stop - start) / step >= MAX_GRID_POINTS as f64 {
            return Err(Error::Parse(format!(
                "grid {grid} has more than {MAX_GRID_POINTS} points"
            )));
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `start + i step` without accumulated rounding.
    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

impl fmt::Display for XiGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl FromStr for XiGrid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("grid '{s}' is not start:stop:step")));
        }
        let v: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad grid number '{p}'")))
            })
            .collect::<Result<_>>()?;
        XiGrid::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Both,
}

impl OutputFormat {
    pub fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }

    pub fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Both => "both",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "both" => Ok(OutputFormat::Both),
            other => Err(Error::Parse(format!("unknown output format '{other}'"))),
        }
    }
}

/// Quadrature written as `rule:nodes:levels:tolerance`.
pub fn parse_quadrature(s: &str) -> Result<QuadratureSpec> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "quadrature '{s}' is not rule:nodes:levels:tolerance"
        )));
    }
    let rule: QuadratureRule = parts[0].parse()?;
    let int = |p: &str| {
        p.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad integer '{p}'")))
    };
    let nodes = int(parts[1])?;
    let levels = int(parts[2])?;
    let tolerance: f64 = parts[3]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad tolerance '{}'", parts[3])))?;
    if nodes > MAX_NODES || levels > MAX_LEVELS || nodes << levels > MAX_NODES {
        return Err(Error::Parse(format!(
            "quadrature '{s}' exceeds {MAX_NODES} nodes"
        )));
    }
    QuadratureSpec::new(rule, nodes, levels, tolerance).map_err(|e| Error::Parse(e.to_string()))
}

fn format_quadrature(q: &QuadratureSpec) -> String {
    format!("{}:{}:{}:{}", q.rule, q.nodes, q.levels, q.tolerance)
}

pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    GroupSpec::parse(s)
}

pub fn parse_model_spec(s: &str) -> Result<ModelSpec> {
    s.parse()
}

pub fn parse_xi_grid(s: &str) -> Result<XiGrid> {
    s.parse()
}

pub fn parse_run_config(s: &str) -> Result<RunConfig> {
    RunConfig::parse(s)
}

/// Everything a CLI run needs. Optional fields left unset select the
/// subcommand default.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub model: ModelSpec,
    pub cocycle: Cocycle,
    pub lambda_max: Option<usize>,
    pub xi_grid: Option<XiGrid>,
    pub oracle: bool,
    pub sigma: f64,
    /// Truncation box; unset selects the subcommand default.
    pub box_size: Option<usize>,
    /// Angles of the class `C` in the pairing, one per torus coordinate.
    pub class: Option<Vec<f64>>,
    /// Pass/fail threshold; unset selects the subcommand default.
    pub tol: Option<f64>,
    pub quadrature: QuadratureSpec,
    pub out: Option<String>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: GroupSpec::su2(),
            model: ModelSpec::ConjugacyClass { theta: 1.0 },
            cocycle: Cocycle::One,
            lambda_max: None,
            xi_grid: None,
            oracle: false,
            sigma: 0.01,
            box_size: None,
            class: None,
            tol: None,
            quadrature: QuadratureSpec::default(),
            out: None,
            format: OutputFormat::Json,
        }
    }
}

fn parse_positive(key: &str, value: &str) -> Result<f64> {
    let x: f64 = value
        .parse()
        .map_err(|_| Error::Parse(format!("{key}: bad number '{value}'")))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::Parse(format!(
            "{key}: {value} must be positive and finite"
        )))
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Parse(format!("{key}: bad boolean '{value}'"))),
    }
}

fn parse_unset<T>(value: &str, parse: impl FnOnce(&str) -> Result<T>) -> Result<Option<T>> {
    if value == "none" {
        Ok(None)
    } else {
        parse(value).map(Some)
    }
}

impl RunConfig {
    pub const KEYS: [&'static str; 13] = [
        "group",
        "model",
        "cocycle",
        "lambda-max",
        "xi-grid",
        "oracle",
        "sigma",
        "box",
        "class",
        "tol",
        "quadrature",
        "out",
        "format",
    ];

    /// Assigns one key; used for config file lines and flag overrides alike.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "group" => self.group = GroupSpec::parse(value)?,
            "model" => self.model = value.parse()?,
            "cocycle" => self.cocycle = value.parse()?,
            "lambda-max" => {
                self.lambda_max = parse_unset(value, |v| {
                    let n: usize = v
                        .parse()
                        .map_err(|_| Error::Parse(format!("lambda-max: bad integer '{v}'")))?;
                    if n > MAX_BOX {
                        return Err(Error::Parse(format!("lambda-max {n} exceeds {MAX_BOX}")));
                    }
                    Ok(n)
                })?
            }
            "xi-grid" => self.xi_grid = parse_unset(value, |v| v.parse())?,
            "oracle" => self.oracle = parse_bool("oracle", value)?,
            "sigma" => self.sigma = parse_positive("sigma", value)?,
            "box" => {
                self.box_size = parse_unset(value, |v| {
                    let n: usize = v
                        .parse()
                        .map_err(|_| Error::Parse(format!("box: bad integer '{v}'")))?;
                    if n == 0 || n > MAX_BOX {
                        return Err(Error::Parse(format!("box {n} outside 1..={MAX_BOX}")));
                    }
                    Ok(n)
                })?
            }
            "class" => {
                self.class = parse_unset(value, |v| {
                    v.split(',')
                        .map(|a| {
                            let x: f64 = a
                                .trim()
                                .parse()
                                .map_err(|_| Error::Parse(format!("class: bad angle '{a}'")))?;
                            if x.is_finite() {
                                Ok(x)
                            } else {
                                Err(Error::Parse("class: non-finite angle".into()))
                            }
                        })
                        .collect()
                })?
            }
            "tol" => self.tol = parse_unset(value, |v| parse_positive("tol", v))?,
            "quadrature" => self.quadrature = parse_quadrature(value)?,
            "out" => self.out = parse_unset(value, |v| Ok(v.to_string()))?,
            "format" => self.format = value.parse()?,
            other => return Err(Error::Parse(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines over the defaults; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", n + 1)))?;
            config.set(key, value).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", n + 1)),
                other => other,
            })?;
        }
        Ok(config)
    }

    /// Every key in a fixed order; `parse(normalized())` reproduces `self`.
    pub fn normalized(&self) -> String {
        let unset = |o: Option<String>| o.unwrap_or_else(|| "none".into());
        let values = [
            self.group.to_string(),
            self.model.to_string(),
            self.cocycle.to_string(),
            unset(self.lambda_max.map(|n| n.to_string())),
            unset(self.xi_grid.map(|g| g.to_string())),
            self.oracle.to_string(),
            self.sigma.to_string(),
            unset(self.box_size.map(|n| n.to_string())),
            unset(
                self.class
                    .as_ref()
                    .map(|c| c.iter().map(f64::to_string).collect::<Vec<_>>().join(",")),
            ),
            unset(self.tol.map(|t| t.to_string())),
            format_quadrature(&self.quadrature),
            unset(self.out.clone()),
            self.format.to_string(),
        ];
        Self::KEYS
            .iter()
            .zip(values)
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}
