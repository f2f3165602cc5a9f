use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::model::{FixedComponent, Parameter};
use crate::error::{Error, Result};
use crate::lie::{dot, GroupData};

/// Catalog of equivariant cocycles, each known through its restriction to
/// isolated fixed points.
#[derive(Debug, Clone, PartialEq)]
pub enum Cocycle {
    /// The constant function 1.
    One,
    /// The equivariant Liouville form `exp(omega + 2 pi i <Phi, xi>)`.
    Liouville,
    /// `c(2 pi i p) = (2 pi i)^2 |p|^2`.
    Casimir,
    /// The linear function `2 pi i <p, h>` with `h` = rho, or the sum of the
    /// coordinate directions on a torus.
    Height,
    /// A contraction `iota(zeta) beta'`; its localization vanishes.
    Contraction,
    Product(Box<Cocycle>, Box<Cocycle>),
}

impl Cocycle {
    /// Whether the cocycle is a polynomial in the equivariant parameter
    /// (no Liouville factor).
    pub fn is_polynomial(&self) -> bool {
        match self {
            Cocycle::Liouville => false,
            Cocycle::Product(a, b) => a.is_polynomial() && b.is_polynomial(),
            _ => true,
        }
    }

    pub fn is_contraction(&self) -> bool {
        match self {
            Cocycle::Contraction => true,
            Cocycle::Product(a, b) => a.is_contraction() || b.is_contraction(),
            _ => false,
        }
    }

    /// `iota_F^* beta` at the parameter `p`, for an isolated point `F`.
    pub fn restrict(&self, g: &GroupData, f: &FixedComponent, p: &Parameter) -> Result<Complex64> {
        Ok(match self {
            Cocycle::One => Complex64::new(1.0, 0.0),
            Cocycle::Liouville => f.moment_phase(g, p)? * f.omega_restriction.exp(),
            Cocycle::Casimir => {
                let v = p.vector(g);
                Complex64::from(-4.0 * PI * PI * dot(&v, &v))
            }
            Cocycle::Height => {
                let v = p.vector(g);
                let h = height_direction(g);
                Complex64::new(0.0, TAU * dot(&v, &h))
            }
            Cocycle::Contraction => Complex64::new(0.0, 0.0),
            Cocycle::Product(a, b) => a.restrict(g, f, p)? * b.restrict(g, f, p)?,
        })
    }
}

fn height_direction(g: &GroupData) -> Vec<f64> {
    if g.is_abelian() {
        vec![1.0; g.rank()]
    } else {
        g.rho_vector()
    }
}

impl fmt::Display for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cocycle::One => f.write_str("one"),
            Cocycle::Liouville => f.write_str("liouville"),
            Cocycle::Casimir => f.write_str("casimir"),
            Cocycle::Height => f.write_str("height"),
            Cocycle::Contraction => f.write_str("contraction"),
            Cocycle::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// Products nest recursively, so their length is bounded.
const MAX_FACTORS: usize = 64;

impl FromStr for Cocycle {
    type Err = Error;
    fn from_str(name: &str) -> Result<Self> {
        if name.matches('*').count() >= MAX_FACTORS {
            return Err(Error::UnknownCocycle(format!(
                "product of more than {MAX_FACTORS} factors"
            )));
        }
        // Right-nested: `a*b*c` is `a*(b*c)`.
        let mut factors = name.rsplit('*').map(parse_factor);
        let last = factors.next().expect("rsplit yields at least one piece")?;
        factors.try_fold(last, |acc, f| {
            Ok(Cocycle::Product(Box::new(f?), Box::new(acc)))
        })
    }
}

fn parse_factor(name: &str) -> Result<Cocycle> {
    match name.trim() {
        "one" | "1" => Ok(Cocycle::One),
        "liouville" => Ok(Cocycle::Liouville),
        "casimir" => Ok(Cocycle::Casimir),
        "height" => Ok(Cocycle::Height),
        "contraction" => Ok(Cocycle::Contraction),
        other => Err(Error::UnknownCocycle(other.to_string())),
    }
}
