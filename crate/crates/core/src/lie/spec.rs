//! Group specification strings: `su2`, `su3`, `t1`..`t4`, and products
//! joined by `x` (for example `su2xt1`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One simple or abelian factor of a supported group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    /// SU(n) with n in {2, 3}.
    SpecialUnitary(usize),
    /// A torus T^n with n in 1..=4.
    Torus(usize),
}

impl Factor {
    pub fn rank(&self) -> usize {
        match *self {
            Factor::SpecialUnitary(n) => n - 1,
            Factor::Torus(n) => n,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Factor::SpecialUnitary(n) => n * n - 1,
            Factor::Torus(n) => n,
        }
    }

    /// Size of the defining (faithful) matrix representation.
    pub fn matrix_size(&self) -> usize {
        match *self {
            Factor::SpecialUnitary(n) | Factor::Torus(n) => n,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::SpecialUnitary(n) => write!(f, "su{n}"),
            Factor::Torus(n) => write!(f, "t{n}"),
        }
    }
}

const MAX_FACTORS: usize = 4;
const MAX_DIM: usize = 16;

/// A parsed group specification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim().to_ascii_lowercase();
        if trimmed.is_empty() {
            return Err(Error::UnsupportedGroup(input.to_string()));
        }
        if trimmed.split('x').count() > MAX_FACTORS {
            return Err(Error::UnsupportedGroup(input.to_string()));
        }
        let factors = trimmed
            .split('x')
            .map(|tok| parse_factor(tok).ok_or_else(|| Error::UnsupportedGroup(input.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let spec = GroupSpec { factors };
        if spec.dim() > MAX_DIM {
            return Err(Error::UnsupportedGroup(input.to_string()));
        }
        Ok(spec)
    }

    pub fn su2() -> Self {
        GroupSpec {
            factors: vec![Factor::SpecialUnitary(2)],
        }
    }

    pub fn su3() -> Self {
        GroupSpec {
            factors: vec![Factor::SpecialUnitary(3)],
        }
    }

    pub fn torus(n: usize) -> Self {
        GroupSpec {
            factors: vec![Factor::Torus(n)],
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(Factor::rank).sum()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::Torus(_)))
    }
}

fn parse_factor(tok: &str) -> Option<Factor> {
    let (kind, digits) = if let Some(d) = tok.strip_prefix("su") {
        ("su", d)
    } else if let Some(d) = tok.strip_prefix('t') {
        ("t", d)
    } else {
        return None;
    };
    if digits.is_empty() || digits.len() > 1 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: usize = digits.parse().ok()?;
    match (kind, n) {
        ("su", 2 | 3) => Some(Factor::SpecialUnitary(n)),
        ("t", 1..=4) => Some(Factor::Torus(n)),
        _ => None,
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products() {
        let g = GroupSpec::parse("su2xt1").unwrap();
        assert_eq!(g.factors, vec![Factor::SpecialUnitary(2), Factor::Torus(1)]);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.dim(), 4);
        assert_eq!(g.to_string(), "su2xt1");
        assert_eq!(GroupSpec::parse(" SU3 ").unwrap().to_string(), "su3");
        assert_eq!(GroupSpec::parse("su3xsu3").unwrap().dim(), 16);
    }

    #[test]
    fn rejects_unsupported() {
        for bad in [
            "",
            "su4",
            "so3",
            "t5",
            "t0",
            "su2x",
            "xsu2",
            "t12",
            "g2",
            "su+2",
            "su3xsu3xt1",
            "t1xt1xt1xt1xt1",
        ] {
            assert!(
                matches!(GroupSpec::parse(bad), Err(Error::UnsupportedGroup(_))),
                "{bad} should be rejected"
            );
        }
    }
}
