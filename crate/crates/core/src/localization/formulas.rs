use std::f64::consts::TAU;

use num_complex::Complex64;

use super::cocycle::Cocycle;
use super::model::{FixedComponent, GSpaceModel, Parameter};
use crate::error::{Error, Result};
use crate::lie::{dot, irrep_dimension, GroupData, Weight};

/// Pairings below this modulus count as vanishing.
const SINGULAR_PAIRING: f64 = 1e-12;

/// `sign / prod_j (2 pi i <w_j, xi>)^{m_j}` for an isolated fixed point.
pub fn euler_inverse(g: &GroupData, c: &FixedComponent, xi: &[f64]) -> Result<Complex64> {
    if xi.len() != g.rank() {
        return Err(Error::Mismatch(format!(
            "parameter of length {} for rank {}",
            xi.len(),
            g.rank()
        )));
    }
    let mut euler = Complex64::new(c.orientation_sign as f64, 0.0);
    for (w, m) in &c.normal_weights {
        let pairing = dot(&g.weight_vector(w), xi);
        if pairing.abs() < SINGULAR_PAIRING {
            return Err(Error::SingularParameter(format!(
                "normal weight {w} vanishes on {xi:?}"
            )));
        }
        euler /= Complex64::new(0.0, TAU * pairing).powu(*m);
    }
    Ok(euler)
}

fn fixed_point_sum(m: &GSpaceModel, cocycle: &Cocycle, p: &Parameter) -> Result<Complex64> {
    let g = m.group();
    let xi = p.vector(g);
    let mut total = Complex64::new(0.0, 0.0);
    for f in m.fixed_components() {
        let inverse = euler_inverse(g, f, &xi)?;
        if cocycle.is_contraction() {
            continue;
        }
        total += cocycle.restrict(g, f, p)? * inverse;
    }
    Ok(total)
}

/// `sum_F iota_F^* beta(xi) / Eul(nu_F, 2 pi i xi)`.
pub fn abelian_localize(m: &GSpaceModel, cocycle: &Cocycle, xi: &[f64]) -> Result<Complex64> {
    fixed_point_sum(m, cocycle, &Parameter::Algebra(xi.to_vec()))
}

/// `dim V_lambda sum_F iota_F^*<beta, Delta_lambda> / Eul(nu_F, 2 pi i (lambda + rho))`.
/// The twist by the r-matrix contraction acts trivially at isolated points.
pub fn group_localize_fourier(
    m: &GSpaceModel,
    cocycle: &Cocycle,
    lambda: &Weight,
) -> Result<Complex64> {
    let g = m.group();
    let dim = irrep_dimension(g, lambda)? as f64;
    Ok(fixed_point_sum(m, cocycle, &Parameter::Weight(lambda + g.rho()))? * dim)
}

fn require_polynomial(beta0: &Cocycle) -> Result<()> {
    if beta0.is_polynomial() {
        Ok(())
    } else {
        Err(Error::UnknownCocycle(format!(
            "{beta0} is not a polynomial cocycle"
        )))
    }
}

/// Fourier coefficient `<m^beta, chi_lambda>` of the twisted DH distribution.
pub fn dh_coefficient(m: &GSpaceModel, beta0: &Cocycle, lambda: &Weight) -> Result<Complex64> {
    require_polynomial(beta0)?;
    let integrand = Cocycle::Product(Box::new(beta0.clone()), Box::new(Cocycle::Liouville));
    group_localize_fourier(m, &integrand, lambda)
}

/// `sum_F beta_0(xi) e^{2 pi i <Phi_F, xi>} e^{omega_F} / Eul(nu_F, 2 pi i xi)`.
pub fn abelian_dh_coefficient(m: &GSpaceModel, beta0: &Cocycle, xi: &[f64]) -> Result<Complex64> {
    require_polynomial(beta0)?;
    let integrand = Cocycle::Product(Box::new(beta0.clone()), Box::new(Cocycle::Liouville));
    abelian_localize(m, &integrand, xi)
}
