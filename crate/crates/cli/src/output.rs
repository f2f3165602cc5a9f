use std::fmt::Write as _;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;

use grouploc::config::RunConfig;
use grouploc::localization::PairingSeries;
use grouploc::{Error, Result};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// One identity of a verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub identity: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(identity: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Check {
            identity: identity.into(),
            residual,
            threshold,
            passed: residual < threshold,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub target: String,
    pub group: String,
    pub checks: Vec<Check>,
    pub violations: Vec<String>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(target: &str, group: String, checks: Vec<Check>) -> Self {
        let violations: Vec<String> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.identity.clone())
            .collect();
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            target: target.to_string(),
            group,
            passed: violations.is_empty(),
            violations,
            checks,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("identity,residual,threshold,passed\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{}",
                c.identity, c.residual, c.threshold, c.passed
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartialSumRow {
    #[serde(rename = "box")]
    pub box_size: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub schema_version: u32,
    pub group: String,
    pub model: String,
    pub cocycle: String,
    pub class_angles: Vec<f64>,
    pub sigma: f64,
    #[serde(rename = "box")]
    pub box_size: usize,
    pub rows: Vec<PartialSumRow>,
    pub value_re: f64,
    pub value_im: f64,
    pub cauchy_difference: f64,
    pub tolerance: f64,
    pub converged: bool,
    pub group_volume: f64,
    pub class_volume: f64,
    pub stabilizer_order: u32,
    pub violations: Vec<String>,
}

impl PairingReport {
    pub fn new(
        config: &RunConfig,
        box_size: usize,
        class_angles: Vec<f64>,
        series: &PairingSeries,
    ) -> Self {
        let violations = if series.converged {
            Vec::new()
        } else {
            vec![format!(
                "partial sums S({}) and S({}) are not Cauchy",
                box_size,
                2 * box_size
            )]
        };
        PairingReport {
            schema_version: SCHEMA_VERSION,
            group: config.group.to_string(),
            model: config.model.to_string(),
            cocycle: config.cocycle.to_string(),
            class_angles,
            sigma: config.sigma,
            box_size,
            rows: series
                .partial_sums
                .iter()
                .map(|(b, v)| PartialSumRow {
                    box_size: *b,
                    re: v.re,
                    im: v.im,
                })
                .collect(),
            value_re: series.value.re,
            value_im: series.value.im,
            cauchy_difference: series.cauchy_difference,
            tolerance: series.tolerance,
            converged: series.converged,
            group_volume: series.group_volume,
            class_volume: series.class_volume,
            stabilizer_order: series.stabilizer_order,
            violations,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("box,re,im\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{:.16e},{:.16e}", r.box_size, r.re, r.im);
        }
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn stem(out: &str) -> PathBuf {
    let path = PathBuf::from(out);
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") | Some("csv") => path.with_extension(""),
        _ => path,
    }
}

/// Writes `<out>.json` and/or `<out>.csv`, or prints to standard output.
pub fn emit(config: &RunConfig, json: &str, csv: &str) -> Result<()> {
    let format = config.format;
    match &config.out {
        Some(out) => {
            let stem = stem(out);
            let write = |ext: &str, body: &str| -> Result<()> {
                let path = stem.with_extension(ext);
                std::fs::write(&path, body)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            };
            if format.json() {
                write("json", json)?;
            }
            if format.csv() {
                write("csv", csv)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let mut print = |body: &str| match stdout.write_all(body.as_bytes()) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
                _ => Ok(()),
            };
            if format.json() {
                print(json)?;
                print("\n")?;
            }
            if format.csv() {
                print(csv)?;
            }
        }
    }
    Ok(())
}
