use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One parameter value of a localization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// The weight `lambda` or the Cartan parameter `xi`.
    pub parameter: Vec<f64>,
    pub value_re: f64,
    pub value_im: f64,
    /// Value divided by the value at the base parameter, when compared as a ratio.
    pub ratio_re: Option<f64>,
    pub ratio_im: Option<f64>,
    pub oracle_re: Option<f64>,
    pub oracle_im: Option<f64>,
    pub abs_diff: Option<f64>,
    pub rel_diff: Option<f64>,
}

impl ReportRow {
    pub fn new(parameter: Vec<f64>, value: Complex64) -> Self {
        ReportRow {
            parameter,
            value_re: value.re,
            value_im: value.im,
            ratio_re: None,
            ratio_im: None,
            oracle_re: None,
            oracle_im: None,
            abs_diff: None,
            rel_diff: None,
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }

    pub fn with_ratio(mut self, ratio: Complex64) -> Self {
        self.ratio_re = Some(ratio.re);
        self.ratio_im = Some(ratio.im);
        self
    }

    /// Records the oracle and the discrepancy of the ratio if present,
    /// otherwise of the value.
    pub fn with_oracle(mut self, oracle: Complex64) -> Self {
        let compared = match (self.ratio_re, self.ratio_im) {
            (Some(re), Some(im)) => Complex64::new(re, im),
            _ => self.value(),
        };
        let abs = (compared - oracle).norm();
        self.oracle_re = Some(oracle.re);
        self.oracle_im = Some(oracle.im);
        self.abs_diff = Some(abs);
        self.rel_diff = Some(if oracle.norm() > 0.0 {
            abs / oracle.norm()
        } else {
            abs
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub group: String,
    pub model: String,
    pub cocycle: String,
    pub tolerance: f64,
    pub quadrature: String,
}

/// Per-parameter fixed-point values with optional oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub schema_version: u32,
    pub metadata: ReportMetadata,
    pub rows: Vec<ReportRow>,
    pub max_abs_diff: Option<f64>,
    pub passed: bool,
}

impl LocalizationReport {
    pub fn new(metadata: ReportMetadata, rows: Vec<ReportRow>) -> Self {
        let max_abs_diff = rows.iter().filter_map(|r| r.abs_diff).reduce(f64::max);
        let passed = max_abs_diff.map_or(true, |d| d <= metadata.tolerance);
        LocalizationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            metadata,
            rows,
            max_abs_diff,
            passed,
        }
    }

    /// Every stored discrepancy matches the stored value and oracle.
    pub fn is_consistent(&self) -> bool {
        self.rows
            .iter()
            .all(|r| match (r.oracle_re, r.oracle_im, r.abs_diff) {
                (Some(ore), Some(oim), Some(d)) => {
                    let compared = match (r.ratio_re, r.ratio_im) {
                        (Some(re), Some(im)) => Complex64::new(re, im),
                        _ => r.value(),
                    };
                    (compared - Complex64::new(ore, oim)).norm() == d
                }
                (None, None, None) => true,
                _ => false,
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV with 17 significant digits; empty cells for absent columns.
    pub fn to_csv(&self) -> String {
        let width = self.rows.first().map_or(1, |r| r.parameter.len());
        let mut out = String::new();
        let params: Vec<String> = (1..=width).map(|i| format!("p{i}")).collect();
        let _ = writeln!(
            out,
            "{},value_re,value_im,ratio_re,ratio_im,oracle_re,oracle_im,abs_diff,rel_diff",
            params.join(",")
        );
        let cell = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.16e}"));
        for r in &self.rows {
            let p: Vec<String> = r.parameter.iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{},{},{},{},{},{}",
                p.join(","),
                r.value_re,
                r.value_im,
                cell(r.ratio_re),
                cell(r.ratio_im),
                cell(r.oracle_re),
                cell(r.oracle_im),
                cell(r.abs_diff),
                cell(r.rel_diff)
            );
        }
        out
    }
}
