use std::f64::consts::{PI, TAU};

use grouploc::lie::{GroupData, Weight};
use grouploc::localization::{
    abelian_dh_coefficient, abelian_localize, dh_coefficient, euler_inverse,
    group_localize_fourier, orbit_liouville_integral, Cocycle, GSpaceModel,
};
use grouploc::oracle::QuadratureSpec;
use grouploc::Error;
use num_complex::Complex64;

fn cocycle(name: &str) -> Cocycle {
    name.parse().unwrap()
}

fn along_rho(x: f64) -> Vec<f64> {
    let g = GroupData::from_name("su2").unwrap();
    g.rho_vector().iter().map(|r| r * x).collect()
}

#[test]
fn orbit_matches_closed_form_and_quadrature() {
    let spec = QuadratureSpec::default();
    for s in [0.5, 1.0, 2.25] {
        let m = GSpaceModel::coadjoint_orbit(s).unwrap();
        for xi in [0.13, 0.5, 1.7, 4.2] {
            let v = abelian_dh_coefficient(&m, &Cocycle::One, &along_rho(xi)).unwrap();
            let closed = (TAU * s * xi).sin() / (PI * xi);
            assert!(
                (v - closed).norm() < 1e-12,
                "s {s} xi {xi}: {v} vs {closed}"
            );
            let q = orbit_liouville_integral(&m, &along_rho(xi), &spec).unwrap();
            assert!((v - q).norm() < 1e-8);
        }
    }
}

#[test]
fn orbit_quadrature_off_the_rho_line() {
    // Generic Cartan vectors are still regular for rank one; only the
    // direction matters up to scale.
    let spec = QuadratureSpec::default();
    let m = GSpaceModel::coadjoint_orbit(1.0).unwrap();
    let v = abelian_localize(&m, &Cocycle::Liouville, &[-0.9]).unwrap();
    let q = orbit_liouville_integral(&m, &[-0.9], &spec).unwrap();
    assert!((v - q).norm() < 1e-8);
}

#[test]
fn weyl_swap_leaves_values_unchanged() {
    let c = GSpaceModel::conjugacy_class(1.3).unwrap();
    for k in 0..=10 {
        let lambda = Weight::new(vec![k]);
        let a = dh_coefficient(&c, &Cocycle::One, &lambda).unwrap();
        let b = dh_coefficient(&c.swapped(), &Cocycle::One, &lambda).unwrap();
        assert!((a - b).norm() < 1e-14);
    }
    let o = GSpaceModel::coadjoint_orbit(0.8).unwrap();
    for xi in [0.2, 1.1] {
        let a = abelian_localize(&o, &Cocycle::Liouville, &along_rho(xi)).unwrap();
        let b = abelian_localize(&o.swapped(), &Cocycle::Liouville, &along_rho(xi)).unwrap();
        assert!((a - b).norm() < 1e-14);
    }
}

#[test]
fn reoriented_presentation_is_equivalent() {
    let m = GSpaceModel::conjugacy_class(0.7).unwrap();
    let components = m
        .fixed_components()
        .iter()
        .map(|c| c.reoriented())
        .collect();
    let flipped = GSpaceModel::custom(m.group().clone(), "reoriented", components).unwrap();
    for k in 0..=6 {
        let lambda = Weight::new(vec![k]);
        let a = group_localize_fourier(&m, &Cocycle::Liouville, &lambda).unwrap();
        let b = group_localize_fourier(&flipped, &Cocycle::Liouville, &lambda).unwrap();
        assert!((a - b).norm() < 1e-14);
    }
}

#[test]
fn contractions_localize_to_zero() {
    let m = GSpaceModel::coadjoint_orbit(1.0).unwrap();
    for name in [
        "contraction",
        "contraction*liouville",
        "casimir*contraction",
    ] {
        let v = abelian_localize(&m, &cocycle(name), &along_rho(0.4)).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0), "{name}");
    }
    let c = GSpaceModel::conjugacy_class(1.0).unwrap();
    let v = group_localize_fourier(&c, &cocycle("contraction*liouville"), &Weight::new(vec![3]))
        .unwrap();
    assert_eq!(v, Complex64::new(0.0, 0.0));
}

#[test]
fn invariant_polynomials_factor_out() {
    let m = GSpaceModel::coadjoint_orbit(1.5).unwrap();
    for x in [0.3, 2.0] {
        let xi = along_rho(x);
        let casimir = -4.0 * PI * PI * xi.iter().map(|v| v * v).sum::<f64>();
        let base = abelian_localize(&m, &Cocycle::Liouville, &xi).unwrap();
        let product = abelian_localize(&m, &cocycle("casimir*liouville"), &xi).unwrap();
        assert!((product - base * casimir).norm() < 1e-10 * product.norm().max(1.0));
        let twice = abelian_localize(&m, &cocycle("casimir*casimir*liouville"), &xi).unwrap();
        assert!((twice - base * casimir * casimir).norm() < 1e-9 * twice.norm().max(1.0));
    }
}

#[test]
fn polynomial_cocycles_of_low_degree_integrate_to_zero() {
    // Degree below half the dimension: the fixed-point sum vanishes identically.
    let m = GSpaceModel::coadjoint_orbit(1.0).unwrap();
    for x in [0.2, 0.9, 3.3] {
        let v = abelian_localize(&m, &Cocycle::One, &along_rho(x)).unwrap();
        assert!(v.norm() < 1e-14);
    }
}

#[test]
fn singular_parameters_are_rejected() {
    let m = GSpaceModel::coadjoint_orbit(1.0).unwrap();
    assert!(matches!(
        abelian_localize(&m, &Cocycle::Liouville, &[0.0]),
        Err(Error::SingularParameter(_))
    ));
    let g = GroupData::from_name("su2").unwrap();
    let c = &m.fixed_components()[0];
    assert!(matches!(
        euler_inverse(&g, c, &[0.0, 1.0]),
        Err(Error::Mismatch(_))
    ));
}

#[test]
fn liouville_is_not_a_polynomial_density() {
    let m = GSpaceModel::conjugacy_class(1.0).unwrap();
    assert!(matches!(
        dh_coefficient(&m, &Cocycle::Liouville, &Weight::new(vec![0])),
        Err(Error::UnknownCocycle(_))
    ));
}

#[test]
fn stabilizer_order_scales_nothing_in_the_coefficients() {
    let m = GSpaceModel::conjugacy_class(1.0).unwrap();
    let k2 = m.clone().with_stabilizer_order(2);
    let lambda = Weight::new(vec![4]);
    assert_eq!(
        dh_coefficient(&m, &Cocycle::One, &lambda).unwrap(),
        dh_coefficient(&k2, &Cocycle::One, &lambda).unwrap()
    );
}
