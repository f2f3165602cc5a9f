use nalgebra::SymmetricEigen;

use super::group::GroupData;
use crate::error::{Error, Result};

/// `J^{1/2}(xi)`, the square root of the Jacobian determinant of `exp` at `xi`:
/// `prod sin(theta/2)/(theta/2)` over the eigenvalue pairs `+-i theta` of `ad(xi)`.
///
/// Defined while the spectral radius of `ad(xi)` stays below `2 pi`.
pub fn duflo_factor(g: &GroupData, xi: &[f64]) -> Result<f64> {
    if xi.len() != g.dim() {
        return Err(Error::Mismatch(format!(
            "vector of length {} in dimension {}",
            xi.len(),
            g.dim()
        )));
    }
    if g.is_abelian() {
        return Ok(1.0);
    }
    let ad = g.ad_matrix(xi);
    let eig = SymmetricEigen::new(ad.transpose() * &ad);
    let mut det = 1.0;
    for &mu in eig.eigenvalues.iter() {
        let theta = mu.max(0.0).sqrt();
        if theta >= std::f64::consts::TAU {
            return Err(Error::OutOfDomain(format!(
                "ad spectral radius {theta} >= 2 pi"
            )));
        }
        det *= sinc_half(theta);
    }
    Ok(det.sqrt())
}

fn sinc_half(theta: f64) -> f64 {
    let h = theta / 2.0;
    if h < 1e-6 {
        1.0 - h * h / 6.0
    } else {
        h.sin() / h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    /// Left-trivialized derivative of exp by central differences, determinant.
    fn jacobian_by_differences(g: &GroupData, xi: &[f64]) -> f64 {
        let d = g.dim();
        let h = 1e-5;
        let inv = g.lie_matrix(xi).exp().try_inverse().unwrap();
        let mut jac = DMatrix::<f64>::zeros(d, d);
        for b in 0..d {
            let mut p = xi.to_vec();
            let mut m = xi.to_vec();
            p[b] += h;
            m[b] -= h;
            let diff = (g.lie_matrix(&p).exp() - g.lie_matrix(&m).exp()) / Complex64::from(2.0 * h);
            let coords = g.lie_coords(&(&inv * diff));
            for a in 0..d {
                jac[(a, b)] = coords[a];
            }
        }
        jac.determinant()
    }

    #[test]
    fn zero_gives_one() {
        for name in ["su2", "su3", "t2"] {
            let g = GroupData::from_name(name).unwrap();
            assert_eq!(duflo_factor(&g, &vec![0.0; g.dim()]).unwrap(), 1.0);
        }
    }

    #[test]
    fn su2_matches_finite_difference_jacobian() {
        let g = GroupData::from_name("su2").unwrap();
        for xi in [
            [0.05, 0.0, 0.0],
            [0.2, -0.1, 0.3],
            [0.0, 0.45, 0.2],
            [0.6, 0.1, -0.3],
        ] {
            let j = duflo_factor(&g, &xi).unwrap();
            let oracle = jacobian_by_differences(&g, &xi).sqrt();
            assert!((j - oracle).abs() < 1e-8, "{xi:?}: {j} vs {oracle}");
            let minus: Vec<f64> = xi.iter().map(|x| -x).collect();
            assert!((duflo_factor(&g, &minus).unwrap() - j).abs() < 1e-14);
        }
    }

    #[test]
    fn su2_closed_form() {
        let g = GroupData::from_name("su2").unwrap();
        let xi = [0.0, 0.6, 0.0];
        let ad = g.ad_matrix(&xi);
        let a = (ad.transpose() * &ad).trace().sqrt() / 2f64.sqrt();
        let j = duflo_factor(&g, &xi).unwrap();
        assert!((j - (a / 2.0).sin() / (a / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn su3_matches_finite_difference_jacobian() {
        let g = GroupData::from_name("su3").unwrap();
        let xi = [0.1, -0.2, 0.15, 0.05, -0.12, 0.2, 0.03, 0.0];
        let j = duflo_factor(&g, &xi).unwrap();
        assert!((j - jacobian_by_differences(&g, &xi).sqrt()).abs() < 1e-7);
    }

    #[test]
    fn guard_radius() {
        let g = GroupData::from_name("su2").unwrap();
        assert!(matches!(
            duflo_factor(&g, &[2.0, 0.0, 0.0]),
            Err(Error::OutOfDomain(_))
        ));
    }
}
