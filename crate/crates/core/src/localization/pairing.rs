use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::cocycle::Cocycle;
use super::formulas::dh_coefficient;
use super::model::GSpaceModel;
use crate::error::{Error, Result};
use crate::lie::{
    irreducible_character, weyl_denominator, Factor, GroupData, GroupSpec, TorusElement, Weight,
};
use crate::oracle::{interval_rule, periodic_rule, refine, QuadratureSpec};

/// Riemannian volume of SU(2) for the basic inner product, by quadrature of
/// the pulled-back metric in Hopf coordinates.
fn su2_volume(spec: &QuadratureSpec) -> Result<f64> {
    let g = GroupData::build(&GroupSpec::su2())?;
    let density = |eta: f64, x: f64, y: f64| -> f64 {
        let a = Complex64::from_polar(eta.cos(), x);
        let b = Complex64::from_polar(eta.sin(), y);
        let m = |p: Complex64, q: Complex64| {
            DMatrix::from_row_slice(2, 2, &[p, q, -q.conj(), p.conj()])
        };
        let inv = m(a, b).adjoint();
        let i = Complex64::new(0.0, 1.0);
        let tangents = [
            m(
                Complex64::from_polar(-eta.sin(), x),
                Complex64::from_polar(eta.cos(), y),
            ),
            m(i * a, Complex64::new(0.0, 0.0)),
            m(Complex64::new(0.0, 0.0), i * b),
        ];
        let coords: Vec<Vec<f64>> = tangents.iter().map(|t| g.lie_coords(&(&inv * t))).collect();
        let gram = DMatrix::from_fn(3, 3, |p, q| {
            coords[p]
                .iter()
                .zip(&coords[q])
                .map(|(u, v)| u * v)
                .sum::<f64>()
        });
        gram.determinant().max(0.0).sqrt()
    };
    let v = refine(spec, |n| {
        let mut total = 0.0;
        for (eta, we) in interval_rule(spec.rule, n, 0.0, PI / 2.0) {
            for (x, wx) in periodic_rule(2 * n, TAU) {
                for (y, wy) in periodic_rule(2 * n, TAU) {
                    total += we * wx * wy * density(eta, x, y);
                }
            }
        }
        Ok(Complex64::from(total))
    })?;
    Ok(v.re)
}

fn volume_cache() -> &'static Mutex<HashMap<String, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<String, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Volume of `G` for the basic inner product. SU(2) factors are integrated
/// numerically; a torus factor has the covolume of its lattice. Cached per
/// group and quadrature.
pub fn group_volume(g: &GroupData, spec: &QuadratureSpec) -> Result<f64> {
    let key = format!(
        "{}|{}|{}|{}|{:e}",
        g.name(),
        spec.rule,
        spec.nodes,
        spec.levels,
        spec.tolerance
    );
    if let Some(v) = volume_cache().lock().expect("volume cache").get(&key) {
        return Ok(*v);
    }
    let mut vol = 1.0;
    for factor in &g.spec().factors {
        match factor {
            Factor::Torus(_) => {}
            Factor::SpecialUnitary(2) => vol *= su2_volume(spec)?,
            other => return Err(Error::Unsupported(format!("volume of {other}"))),
        }
    }
    if g.is_abelian() {
        let b = g.lattice_basis();
        let gram = DMatrix::from_fn(g.rank(), g.rank(), |i, j| {
            b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum::<f64>()
        });
        vol = gram.determinant().sqrt();
    }
    volume_cache()
        .lock()
        .expect("volume cache")
        .insert(key, vol);
    Ok(vol)
}

/// Liouville volume of the conjugacy class through `c`: the `lambda = 0`
/// DH coefficient of that class for SU(2), one for a torus.
pub fn class_volume(g: &GroupData, c: &TorusElement) -> Result<f64> {
    if g.is_abelian() {
        return Ok(1.0);
    }
    if !g.is_su2() {
        return Err(Error::Unsupported(format!(
            "conjugacy class volumes in {}",
            g.name()
        )));
    }
    let s = c.angles()[0];
    let theta = TAU * s.min(1.0 - s);
    let model = GSpaceModel::conjugacy_class(theta)?;
    Ok(dh_coefficient(&model, &Cocycle::One, &Weight::zero(1))?.re)
}

/// Smoothed partial sums of the pairing series with Cauchy diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct PairingSeries {
    /// `(box, partial sum)` for the requested box, its halvings down to 1 and its double.
    pub partial_sums: Vec<(usize, Complex64)>,
    pub value: Complex64,
    /// `|S(2N) - S(N)|`.
    pub cauchy_difference: f64,
    pub tolerance: f64,
    pub converged: bool,
    pub group_volume: f64,
    pub class_volume: f64,
    pub stabilizer_order: u32,
}

/// Dominant weights with every coordinate bounded by `box_size`, in a fixed order.
pub fn dominant_weights(g: &GroupData, box_size: usize) -> Vec<Weight> {
    let n = box_size as i64;
    let mut out = vec![Weight::zero(g.rank())];
    for i in 0..g.rank() {
        let lo = if g.is_semisimple_coord(i) { 0 } else { -n };
        out = out
            .into_iter()
            .flat_map(|w| {
                (lo..=n).map(move |c| {
                    let mut w = w.clone();
                    w.coords[i] = c;
                    w
                })
            })
            .collect();
    }
    out
}

/// `k Vol C sum_lambda e^{-sigma |lambda + rho|^2} chi_lambda(C^{-1}) <m^beta, chi_lambda> / Vol(G)^2`
/// at boxes `N` and `2N`.
pub fn pairing_series(
    m: &GSpaceModel,
    beta0: &Cocycle,
    c: &TorusElement,
    sigma: f64,
    box_size: usize,
    tolerance: f64,
    spec: &QuadratureSpec,
) -> Result<PairingSeries> {
    let g = m.group();
    if !(sigma > 0.0) {
        return Err(Error::OutOfDomain(format!(
            "smoothing {sigma} must be positive"
        )));
    }
    if box_size == 0 {
        return Err(Error::OutOfDomain("pairing box must be positive".into()));
    }
    if c.rank() != g.rank() {
        return Err(Error::Mismatch(format!(
            "torus element of rank {}",
            c.rank()
        )));
    }
    if !g.is_abelian() && weyl_denominator(g, c).norm() < 1e-9 {
        return Err(Error::SingularValue(format!(
            "{:?} is not a regular element",
            c.angles()
        )));
    }
    let vol_g = group_volume(g, spec)?;
    let vol_c = class_volume(g, c)?;
    let k = m.stabilizer_order() as f64;
    let prefactor = k * vol_c / (vol_g * vol_g);
    let c_inv = c.inverse();

    let term = |lambda: &Weight| -> Result<Complex64> {
        let shifted = lambda + g.rho();
        let damping = (-sigma * g.weight_inner(&shifted, &shifted)).exp();
        if damping == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(irreducible_character(g, lambda, &c_inv)? * dh_coefficient(m, beta0, lambda)? * damping)
    };

    let mut boxes = vec![2 * box_size, box_size];
    let mut b = box_size / 2;
    while b >= 1 {
        boxes.push(b);
        b /= 2;
    }
    boxes.reverse();
    let mut partial_sums = Vec::with_capacity(boxes.len());
    for &b in &boxes {
        let mut sum = Complex64::new(0.0, 0.0);
        for lambda in dominant_weights(g, b) {
            sum += term(&lambda)?;
        }
        partial_sums.push((b, sum * prefactor));
    }
    let at = |b: usize| {
        partial_sums
            .iter()
            .find(|(x, _)| *x == b)
            .map(|(_, v)| *v)
            .unwrap()
    };
    let value = at(box_size);
    let cauchy_difference = (at(2 * box_size) - value).norm();
    Ok(PairingSeries {
        value,
        cauchy_difference,
        tolerance,
        converged: cauchy_difference <= tolerance,
        partial_sums,
        group_volume: vol_g,
        class_volume: vol_c,
        stabilizer_order: m.stabilizer_order(),
    })
}

/// The smoothed pairing at box `N`, provided `S(N)` and `S(2N)` agree within `tolerance`.
pub fn intersection_pairing(
    m: &GSpaceModel,
    beta0: &Cocycle,
    c: &TorusElement,
    sigma: f64,
    box_size: usize,
    tolerance: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let series = pairing_series(m, beta0, c, sigma, box_size, tolerance, spec)?;
    if !series.converged {
        return Err(Error::NonConvergent {
            difference: series.cauchy_difference,
            tolerance,
        });
    }
    Ok(series.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_volume_closed_form() {
        let g = GroupData::from_name("su2").unwrap();
        let v = group_volume(&g, &QuadratureSpec::default()).unwrap();
        assert!((v - 1.0 / (2f64.sqrt() * PI)).abs() < 1e-10, "{v}");
        let t = GroupData::from_name("t3").unwrap();
        assert_eq!(group_volume(&t, &QuadratureSpec::default()).unwrap(), 1.0);
    }

    #[test]
    fn dominant_weight_enumeration() {
        let g = GroupData::from_name("su2xt1").unwrap();
        let ws = dominant_weights(&g, 2);
        assert_eq!(ws.len(), 3 * 5);
        assert!(ws.iter().all(|w| g.is_dominant(w)));
    }

    #[test]
    fn singular_value_rejected() {
        let m = GSpaceModel::conjugacy_class(1.0).unwrap();
        let err = pairing_series(
            &m,
            &Cocycle::One,
            &TorusElement::identity(1),
            0.01,
            8,
            1e-4,
            &QuadratureSpec::default(),
        );
        assert!(matches!(err, Err(Error::SingularValue(_))));
    }

    #[test]
    fn doubling_stabilizer_doubles_pairing() {
        let m = GSpaceModel::conjugacy_class(1.0).unwrap();
        let c = TorusElement::new(vec![1.0 / TAU]);
        let spec = QuadratureSpec::default();
        let one = intersection_pairing(&m, &Cocycle::One, &c, 0.05, 64, 1e-6, &spec).unwrap();
        let two = intersection_pairing(
            &m.clone().with_stabilizer_order(2),
            &Cocycle::One,
            &c,
            0.05,
            64,
            1e-6,
            &spec,
        )
        .unwrap();
        assert!((two - one * 2.0).norm() < 1e-12);
    }

    #[test]
    fn small_box_is_not_cauchy() {
        let m = GSpaceModel::conjugacy_class(1.0).unwrap();
        let c = TorusElement::new(vec![1.0 / TAU]);
        let err = intersection_pairing(
            &m,
            &Cocycle::One,
            &c,
            0.01,
            4,
            1e-4,
            &QuadratureSpec::default(),
        );
        assert!(matches!(err, Err(Error::NonConvergent { .. })));
    }
}
