use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A weight, stored by its integer coordinates in the fundamental-weight
/// basis (standard basis on torus factors).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

/// An element of the maximal torus, `t = exp(sum_i angles[i] * b_i)` where
/// `b_i` is the lattice basis dual to the fundamental weights. Angles are
/// kept reduced to `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusElement {
    angles: Vec<f64>,
}

impl TorusElement {
    pub fn new(angles: Vec<f64>) -> Self {
        TorusElement {
            angles: angles.into_iter().map(reduce).collect(),
        }
    }

    pub fn identity(rank: usize) -> Self {
        TorusElement {
            angles: vec![0.0; rank],
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    /// The character value `t^lambda`. Pairing the lattice basis with the
    /// fundamental weights is the identity matrix, so integrality holds for
    /// every integer weight.
    pub fn pow(&self, weight: &Weight) -> Complex64 {
        debug_assert_eq!(self.rank(), weight.rank());
        // Fold the integer weight against the angles before reducing, so that
        // large weights do not amplify the rounding in each angle separately.
        let phase: f64 = self
            .angles
            .iter()
            .zip(&weight.coords)
            .map(|(a, &c)| reduce(a * c as f64))
            .sum();
        Complex64::from_polar(1.0, TAU * phase)
    }

    pub fn mul(&self, other: &TorusElement) -> TorusElement {
        TorusElement::new(
            self.angles
                .iter()
                .zip(&other.angles)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn inverse(&self) -> TorusElement {
        TorusElement::new(self.angles.iter().map(|a| -a).collect())
    }
}

fn reduce(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}
