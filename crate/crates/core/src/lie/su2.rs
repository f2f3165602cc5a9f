use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::group::GroupData;
use super::weight::{TorusElement, Weight};
use crate::error::{Error, Result};

/// An element `[[a, b], [-conj(b), conj(a)]]` of SU(2), `|a|^2 + |b|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2 {
    pub a: Complex64,
    pub b: Complex64,
}

impl Su2 {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::OutOfDomain(format!("|a|^2 + |b|^2 = {norm}")));
        }
        Ok(Su2 { a, b })
    }

    /// Rescales `(a, b)` onto the unit sphere; `(0, 0)` maps to the identity.
    pub fn normalized(a: Complex64, b: Complex64) -> Self {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n == 0.0 {
            return Su2::identity();
        }
        Su2 { a: a / n, b: b / n }
    }

    pub fn identity() -> Self {
        Su2 {
            a: Complex64::from(1.0),
            b: Complex64::from(0.0),
        }
    }

    /// The torus element with lattice angle `s`, `diag(e^{2 pi i s}, e^{-2 pi i s})`.
    pub fn from_angle(s: f64) -> Self {
        Su2 {
            a: Complex64::from_polar(1.0, TAU * s),
            b: Complex64::from(0.0),
        }
    }

    pub fn from_matrix(m: &DMatrix<Complex64>) -> Result<Self> {
        if m.shape() != (2, 2) {
            return Err(Error::Mismatch(format!(
                "expected a 2x2 matrix, got {:?}",
                m.shape()
            )));
        }
        let g = Su2::new(m[(0, 0)], m[(0, 1)])?;
        let residual = (m[(1, 0)] + g.b.conj()).norm() + (m[(1, 1)] - g.a.conj()).norm();
        if residual > 1e-9 {
            return Err(Error::OutOfDomain("matrix is not in SU(2)".into()));
        }
        Ok(g)
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(2, 2, &[self.a, self.b, -self.b.conj(), self.a.conj()])
    }

    pub fn mul(&self, o: &Su2) -> Su2 {
        Su2 {
            a: self.a * o.a - self.b * o.b.conj(),
            b: self.a * o.b + self.b * o.a.conj(),
        }
    }

    pub fn inverse(&self) -> Su2 {
        Su2 {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// `exp(xi)` for `xi` in the orthonormal basis of `su(2)`.
    pub fn exp(g: &GroupData, xi: &[f64]) -> Result<Su2> {
        if !g.is_su2() {
            return Err(Error::UnsupportedGroup(g.name()));
        }
        Su2::from_matrix(&g.lie_matrix(xi).exp())
    }

    /// Half the trace, `cos` of the rotation angle.
    pub fn half_trace(&self) -> f64 {
        self.a.re
    }
}

/// A group element accepted by [`spherical_harmonic`].
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    Torus(TorusElement),
    Su2(Su2),
}

/// A torus element conjugate to `element`, for evaluating class functions.
pub fn torus_representative(g: &GroupData, element: &GroupElement) -> Result<TorusElement> {
    match element {
        GroupElement::Torus(t) => {
            if t.rank() != g.rank() {
                return Err(Error::Mismatch(format!(
                    "torus element of rank {}",
                    t.rank()
                )));
            }
            Ok(t.clone())
        }
        GroupElement::Su2(u) => {
            if !g.is_su2() {
                return Err(Error::Unsupported(format!(
                    "conjugacy classes of {}",
                    g.name()
                )));
            }
            Ok(TorusElement::new(vec![
                u.half_trace().clamp(-1.0, 1.0).acos() / TAU,
            ]))
        }
    }
}

/// The matrix element `Delta_lambda(g) = <v_lambda, g v_lambda>` of the unit
/// highest-weight vector.
pub fn spherical_harmonic(
    g: &GroupData,
    lambda: &Weight,
    element: &GroupElement,
) -> Result<Complex64> {
    g.check_dominant(lambda)?;
    match element {
        GroupElement::Torus(t) => {
            if t.rank() != g.rank() {
                return Err(Error::Mismatch(format!(
                    "torus element of rank {}",
                    t.rank()
                )));
            }
            Ok(t.pow(lambda))
        }
        GroupElement::Su2(u) => {
            if !g.is_su2() {
                return Err(Error::Unsupported(format!(
                    "matrix elements off the torus for {}",
                    g.name()
                )));
            }
            Ok(u.a.powi(lambda.coords[0] as i32))
        }
    }
}
