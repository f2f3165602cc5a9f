use std::f64::consts::TAU;

use grouploc::fourier::{
    read_fourier_csv, restrict_invariant_density, restrict_point_mass, write_fourier_csv,
    FourierTableJson, InvariantDensity,
};
use grouploc::lie::{irrep_dimension, GroupData, GroupElement, Su2, TorusElement, Weight};
use grouploc::oracle::{integrate_group_su2, QuadratureSpec};
use num_complex::Complex64;

fn spec() -> QuadratureSpec {
    QuadratureSpec {
        nodes: 8,
        levels: 4,
        ..QuadratureSpec::default()
    }
}

#[test]
fn character_weighted_density_picks_one_coefficient() {
    for (name, nu) in [("su2", vec![3]), ("su3", vec![1, 1]), ("su3", vec![2, 0])] {
        let g = GroupData::from_name(name).unwrap();
        let nu = Weight::new(nu);
        let dim = irrep_dimension(&g, &nu).unwrap() as f64;
        let u = InvariantDensity::character_weighted(nu.clone(), spec());
        let table = restrict_invariant_density(&g, &u, 4).unwrap();
        let target = &nu + g.rho();
        for (w, c) in table.iter() {
            let expected = if w == target { 1.0 / dim } else { 0.0 };
            assert!((c - expected).norm() < 1e-10, "{name} {w}: {c}");
        }
    }
}

/// Gaussian in the distance from the identity, in lattice units.
fn bump(width: f64) -> InvariantDensity {
    let quadrature = QuadratureSpec {
        nodes: 16,
        levels: 6,
        tolerance: 1e-10,
        ..QuadratureSpec::default()
    };
    InvariantDensity::from_class_function(format!("bump{width}"), quadrature, move |_, t| {
        let s = t.angles()[0];
        let d = s.min(1.0 - s);
        Complex64::from((-(d / width).powi(2)).exp())
    })
}

#[test]
fn bump_coefficients_match_group_quadrature() {
    let g = GroupData::from_name("su2").unwrap();
    let u = bump(0.1);
    let table = restrict_invariant_density(&g, &u, 6).unwrap();
    let oracle_spec = QuadratureSpec {
        tolerance: 1e-10,
        ..QuadratureSpec::default()
    };
    for k in 0..=5i64 {
        let expected = integrate_group_su2(
            |x: &Su2| {
                let t = (x.a.re.clamp(-1.0, 1.0)).acos() / TAU;
                let chi = if t.sin() == 0.0 {
                    (k + 1) as f64
                } else {
                    ((k + 1) as f64 * TAU * t).sin() / (TAU * t).sin()
                };
                u.evaluate(&g, &GroupElement::Su2(*x)).unwrap() * chi / (k + 1) as f64
            },
            &oracle_spec,
        )
        .unwrap();
        let got = table.coeff(&Weight::new(vec![k + 1]));
        assert!((got - expected).norm() < 1e-9, "k {k}: {got} vs {expected}");
    }
}

#[test]
fn narrow_bump_approaches_point_mass_at_identity() {
    let g = GroupData::from_name("su2").unwrap();
    let delta =
        restrict_point_mass(&g, &GroupElement::Torus(TorusElement::identity(1)), 3).unwrap();
    let mut previous = f64::INFINITY;
    for width in [0.08, 0.04, 0.02] {
        let table = restrict_invariant_density(&g, &bump(width), 3).unwrap();
        let mass = table.coeff(g.rho());
        let normalized = table.scale(Complex64::from(1.0) / mass);
        let gap = normalized.max_abs_diff(&delta).unwrap();
        assert!(gap < previous, "width {width}: {gap}");
        previous = gap;
    }
    assert!(previous < 0.05, "{previous}");
}

#[test]
fn tables_round_trip_through_csv_and_json() {
    let g = GroupData::from_name("su3").unwrap();
    let h = TorusElement::new(vec![0.1234567, 0.7654321]);
    let table = restrict_point_mass(&g, &GroupElement::Torus(h), 5).unwrap();
    let back = read_fourier_csv(&write_fourier_csv(&table)).unwrap();
    assert_eq!(back, table);
    let json = serde_json::to_string(&FourierTableJson::new("su3", &table)).unwrap();
    let parsed: FourierTableJson = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed.to_distribution().unwrap(), table);
}
