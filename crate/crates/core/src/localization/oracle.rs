use std::f64::consts::TAU;

use num_complex::Complex64;

use super::model::{GSpaceModel, ModelSpec, MomentValue};
use crate::error::{Error, Result};
use crate::lie::{
    dot, irreducible_character, torus_representative, GroupData, GroupElement, Weight,
};
use crate::oracle::{conjugacy_mean, integrate_sphere, QuadratureSpec};

/// Symplectic density of the orbit through `mu` relative to the round area
/// element: `|<mu, [X_1, X_2]>|` for `[X_i, mu] = u_i`, where `u_1, u_2` is
/// an orthonormal tangent frame.
fn kks_density(g: &GroupData, mu: &[f64]) -> f64 {
    let r = dot(mu, mu).sqrt();
    let n: Vec<f64> = mu.iter().map(|x| x / r).collect();
    let seed = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let proj = dot(&seed, &n);
    let mut u1: Vec<f64> = seed.iter().zip(&n).map(|(s, x)| s - proj * x).collect();
    let l = dot(&u1, &u1).sqrt();
    u1.iter_mut().for_each(|x| *x /= l);
    let u2 = vec![
        n[1] * u1[2] - n[2] * u1[1],
        n[2] * u1[0] - n[0] * u1[2],
        n[0] * u1[1] - n[1] * u1[0],
    ];
    let ad = g.ad_matrix(mu);
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..3)
            .map(|c| (0..3).map(|b| ad[(c, b)] * v[b]).sum())
            .collect()
    };
    let frame = [&u1, &u2];
    let m: Vec<Vec<f64>> = frame
        .iter()
        .map(|ui| frame.iter().map(|uj| dot(ui, &apply(uj))).collect())
        .collect();
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // c_j = -M^{-1} e_j
    let inv = [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ];
    let x: Vec<Vec<f64>> = (0..2)
        .map(|j| {
            (0..3)
                .map(|a| -(inv[0][j] * u1[a] + inv[1][j] * u2[a]))
                .collect()
        })
        .collect();
    let mut omega = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                omega += mu[c] * g.f(a, b, c) * x[0][a] * x[1][b];
            }
        }
    }
    omega.abs()
}

/// `int_M e^{2 pi i <Phi, xi>} omega` over a coadjoint orbit of SU(2) by
/// sphere quadrature, with the Liouville orientation.
pub fn orbit_liouville_integral(
    m: &GSpaceModel,
    xi: &[f64],
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let Some(ModelSpec::Orbit { .. }) = m.spec() else {
        return Err(Error::Unsupported(format!(
            "sphere oracle for model {}",
            m.name()
        )));
    };
    let g = m.group();
    if xi.len() != g.rank() {
        return Err(Error::Mismatch(format!("parameter of length {}", xi.len())));
    }
    let MomentValue::Algebra(top) = &m.fixed_components()[0].moment else {
        return Err(Error::Mismatch(
            "orbit model with a group-valued moment".into(),
        ));
    };
    let radius = dot(top, top).sqrt();
    let xi_g = g.embed_cartan(xi);
    integrate_sphere(
        |n| {
            let mu: Vec<f64> = n.iter().map(|x| radius * x).collect();
            let density = kks_density(g, &mu) * radius * radius;
            Complex64::from_polar(density, TAU * dot(&mu, &xi_g))
        },
        spec,
    )
}

/// Mean of `chi_lambda` over the SU(2) conjugacy class of angle `theta`.
pub fn class_character_mean(
    theta: f64,
    lambda: &Weight,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let g = GroupData::from_name("su2")?;
    g.check_dominant(lambda)?;
    conjugacy_mean(
        |u| {
            torus_representative(&g, &GroupElement::Su2(*u))
                .and_then(|t| irreducible_character(&g, lambda, &t))
                .unwrap_or_default()
        },
        theta,
        spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_volume() {
        for s in [0.5, 1.0, 1.5] {
            let m = GSpaceModel::coadjoint_orbit(s).unwrap();
            let v = orbit_liouville_integral(&m, &[0.0], &QuadratureSpec::default()).unwrap();
            assert!((v.re - 2.0 * s).abs() < 1e-10, "{s}: {v}");
        }
    }

    #[test]
    fn class_mean_of_character() {
        let spec = QuadratureSpec::default();
        for k in [0, 1, 5] {
            let v = class_character_mean(1.0, &Weight::new(vec![k]), &spec).unwrap();
            let expected = ((k + 1) as f64).sin() / 1f64.sin();
            assert!((v.re - expected).abs() < 1e-9);
        }
    }
}
