use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::distribution::FourierDistribution;
use crate::error::{Error, Result};
use crate::lie::Weight;

pub const FOURIER_SCHEMA_VERSION: u32 = 1;

/// CSV layout: a `# rank=R box=N hardy=B` line, a header
/// `w1,...,wR,re,im`, then one row per nonzero coefficient in table order.
/// Numbers use 17 significant digits.
pub fn write_fourier_csv(d: &FourierDistribution) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# rank={} box={} hardy={}",
        d.rank(),
        d.box_size(),
        d.is_hardy()
    );
    let mut header: Vec<String> = (1..=d.rank()).map(|i| format!("w{i}")).collect();
    header.push("re".into());
    header.push("im".into());
    let _ = writeln!(out, "{}", header.join(","));
    for (nu, c) in d.iter() {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        for w in &nu.coords {
            let _ = write!(out, "{w},");
        }
        let _ = writeln!(out, "{:.16e},{:.16e}", c.re, c.im);
    }
    out
}

/// Largest decoded table, in coefficients.
const MAX_TABLE: usize = 1 << 22;

fn check_table_size(rank: usize, box_size: usize) -> Result<()> {
    let entries = (2 * box_size.min(MAX_TABLE) + 1).checked_pow(rank as u32);
    if (1..=8).contains(&rank) && entries.is_some_and(|n| n <= MAX_TABLE) {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "table of rank {rank} and box {box_size} is too large"
        )))
    }
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// Inverse of [`write_fourier_csv`]. Coefficients not listed are zero.
pub fn read_fourier_csv(text: &str) -> Result<FourierDistribution> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (no, meta) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let meta = meta
        .strip_prefix('#')
        .ok_or_else(|| parse_err(no, "expected '# rank=R box=N hardy=B'"))?;
    let (mut rank, mut box_size, mut hardy) = (None, None, None);
    for field in meta.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(no, format!("bad field '{field}'")))?;
        match key {
            "rank" => rank = Some(value.parse::<usize>().map_err(|e| parse_err(no, e))?),
            "box" => box_size = Some(value.parse::<usize>().map_err(|e| parse_err(no, e))?),
            "hardy" => hardy = Some(value.parse::<bool>().map_err(|e| parse_err(no, e))?),
            other => return Err(parse_err(no, format!("unknown field '{other}'"))),
        }
    }
    let rank = rank.ok_or_else(|| parse_err(no, "missing rank"))?;
    let box_size = box_size.ok_or_else(|| parse_err(no, "missing box"))?;
    let hardy = hardy.ok_or_else(|| parse_err(no, "missing hardy"))?;
    check_table_size(rank, box_size).map_err(|e| parse_err(no, e))?;

    let (no, header) = lines.next().ok_or_else(|| parse_err(2, "missing header"))?;
    let mut expected: Vec<String> = (1..=rank).map(|i| format!("w{i}")).collect();
    expected.push("re".into());
    expected.push("im".into());
    if header
        .split(',')
        .map(str::trim)
        .ne(expected.iter().map(String::as_str))
    {
        return Err(parse_err(
            no,
            format!("expected header '{}'", expected.join(",")),
        ));
    }

    let mut d = FourierDistribution::zero(rank, box_size);
    let mut seen = std::collections::HashSet::new();
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != rank + 2 {
            return Err(parse_err(
                no,
                format!("expected {} fields, found {}", rank + 2, fields.len()),
            ));
        }
        let coords = fields[..rank]
            .iter()
            .map(|f| f.parse::<i64>().map_err(|e| parse_err(no, e)))
            .collect::<Result<Vec<_>>>()?;
        let re: f64 = fields[rank].parse().map_err(|e| parse_err(no, e))?;
        let im: f64 = fields[rank + 1].parse().map_err(|e| parse_err(no, e))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(parse_err(no, "non-finite coefficient"));
        }
        let nu = Weight::new(coords);
        if !seen.insert(nu.clone()) {
            return Err(parse_err(no, format!("duplicate weight {nu}")));
        }
        d.set(&nu, Complex64::new(re, im))
            .map_err(|e| parse_err(no, e))?;
    }
    d.set_hardy(hardy);
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub weight: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

/// JSON form of a coefficient table, nonzero entries only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierTableJson {
    pub schema_version: u32,
    pub group: String,
    pub rank: usize,
    #[serde(rename = "box")]
    pub box_size: usize,
    pub hardy: bool,
    pub coefficients: Vec<CoefficientRow>,
}

impl FourierTableJson {
    pub fn new(group: &str, d: &FourierDistribution) -> Self {
        FourierTableJson {
            schema_version: FOURIER_SCHEMA_VERSION,
            group: group.to_string(),
            rank: d.rank(),
            box_size: d.box_size(),
            hardy: d.is_hardy(),
            coefficients: d
                .iter()
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .map(|(nu, c)| CoefficientRow {
                    weight: nu.coords,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn to_distribution(&self) -> Result<FourierDistribution> {
        check_table_size(self.rank, self.box_size)?;
        let mut d = FourierDistribution::zero(self.rank, self.box_size);
        for row in &self.coefficients {
            d.set(
                &Weight::new(row.weight.clone()),
                Complex64::new(row.re, row.im),
            )?;
        }
        d.set_hardy(self.hardy);
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::delta_minus;
    use crate::lie::{GroupData, TorusElement};

    #[test]
    fn csv_round_trip_is_exact() {
        let g = GroupData::from_name("su3").unwrap();
        let d = delta_minus(&g, &TorusElement::new(vec![0.123456789, 0.987654321]), 6).unwrap();
        let text = write_fourier_csv(&d);
        assert!(text.starts_with("# rank=2 box=6 hardy=true\nw1,w2,re,im\n"));
        assert_eq!(read_fourier_csv(&text).unwrap(), d);
    }

    #[test]
    fn json_round_trip() {
        let g = GroupData::from_name("su2").unwrap();
        let d = delta_minus(&g, &TorusElement::new(vec![0.3]), 8).unwrap();
        let json = serde_json::to_string(&FourierTableJson::new("su2", &d)).unwrap();
        let back: FourierTableJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_distribution().unwrap(), d);
    }

    #[test]
    fn csv_errors() {
        for bad in [
            "",
            "rank=1 box=2 hardy=true\nw1,re,im\n",
            "# rank=1 box=2\nw1,re,im\n",
            "# rank=1 box=2 hardy=true\nw1,im,re\n",
            "# rank=1 box=2 hardy=true\nw1,re,im\n3,1,0\n",
            "# rank=1 box=2 hardy=true\nw1,re,im\n1,1\n",
            "# rank=1 box=2 hardy=true\nw1,re,im\n1,nan,0\n",
            "# rank=1 box=2 hardy=true\nw1,re,im\n1,1,0\n1,2,0\n",
            "# rank=9 box=2 hardy=true\n",
            "# rank=4 box=400 hardy=true\n",
        ] {
            assert!(read_fourier_csv(bad).is_err(), "{bad:?}");
        }
    }
}
