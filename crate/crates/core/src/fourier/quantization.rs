use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::distribution::{delta_minus, in_hardy_support, FourierDistribution};
use crate::error::{Error, Result};
use crate::lie::{
    dot, duflo_factor, irreducible_character, irrep_dimension, torus_representative, GroupData,
    GroupElement, Su2, TorusElement, Weight,
};
use crate::oracle::{interval_rule, periodic_rule, QuadratureSpec};

/// An Ad-invariant density on the Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgebraDensity {
    /// The point mass at the origin.
    PointMass,
    /// `exp(-1/(1 - (r/R)^2))` for `r < R`, normalized to unit mass.
    Bump { radius: f64 },
}

impl AlgebraDensity {
    fn profile(&self, r: f64) -> f64 {
        match *self {
            AlgebraDensity::PointMass => 0.0,
            AlgebraDensity::Bump { radius } => {
                let x = r / radius;
                if x >= 1.0 {
                    0.0
                } else {
                    (-1.0 / (1.0 - x * x)).exp()
                }
            }
        }
    }
}

/// Both Fourier tables of the quantization diagram.
#[derive(Debug, Clone)]
pub struct QuantizationPaths {
    /// `r_G^T(exp_*(J^{1/2} u0))`: coefficient `(dim V_lambda)^{-1} int u0 J^{1/2} chi_lambda(exp xi)`.
    pub group_side: FourierDistribution,
    /// `pi^-(exp_* (u0 restricted to t))`: coefficient `int u0 e^{2 pi i <lambda + rho, xi>}`.
    pub torus_side: FourierDistribution,
    pub residual: f64,
}

/// Unit directions of `R^d` for `d <= 3` with surface weights.
fn directions(d: usize, n: usize) -> Vec<(Vec<f64>, f64)> {
    match d {
        1 => vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
        2 => periodic_rule(2 * n, TAU)
            .map(|(p, w)| (vec![p.cos(), p.sin()], w))
            .collect(),
        _ => interval_rule(crate::oracle::QuadratureRule::GaussLegendre, n, -1.0, 1.0)
            .into_iter()
            .flat_map(|(z, wz)| {
                let rho = (1.0 - z * z).sqrt();
                periodic_rule(2 * n, TAU)
                    .map(move |(p, w)| (vec![rho * p.cos(), rho * p.sin(), z], w * wz))
            })
            .collect(),
    }
}

/// Computes both sides of the quantization diagram on the Hardy support in
/// the box and their largest coefficient difference.
pub fn quantization_paths(
    g: &GroupData,
    u0: &AlgebraDensity,
    box_size: usize,
    spec: &QuadratureSpec,
) -> Result<QuantizationPaths> {
    let supported = g.is_su2() || (g.is_abelian() && g.rank() <= 3);
    if !supported {
        return Err(Error::Unsupported(format!(
            "quantization diagram for {}",
            g.name()
        )));
    }
    spec.validate()?;
    if let AlgebraDensity::Bump { radius } = *u0 {
        if !(radius > 0.0) {
            return Err(Error::OutOfDomain(format!("bump radius {radius}")));
        }
    }
    let e = TorusElement::identity(g.rank());
    if *u0 == AlgebraDensity::PointMass {
        let d = delta_minus(g, &e, box_size)?;
        return Ok(QuantizationPaths {
            group_side: d.clone(),
            torus_side: d,
            residual: 0.0,
        });
    }
    let AlgebraDensity::Bump { radius } = *u0 else {
        unreachable!()
    };

    let dim = g.dim();
    let template = FourierDistribution::zero(g.rank(), box_size);
    let targets: Vec<(Weight, Weight, f64, Vec<f64>)> = template
        .iter()
        .map(|(nu, _)| nu)
        .filter(|nu| in_hardy_support(g, nu))
        .map(|nu| {
            let lambda = &nu - g.rho();
            let d = irrep_dimension(g, &lambda).expect("dominant") as f64;
            let v = g.embed_cartan(&g.weight_vector(&nu));
            (nu, lambda, d, v)
        })
        .collect();

    let level = |n: usize| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let radial = interval_rule(spec.rule, n, 0.0, radius);
        let dirs = directions(dim, n);
        let mass: f64 = radial
            .iter()
            .map(|&(r, w)| w * u0.profile(r) * r.powi(dim as i32 - 1))
            .sum::<f64>()
            * dirs.iter().map(|(_, w)| w).sum::<f64>();
        let per_radius: Vec<(Vec<Complex64>, Vec<Complex64>)> = radial
            .par_iter()
            .map(|&(r, wr)| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
                let weight = wr * u0.profile(r) * r.powi(dim as i32 - 1) / mass;
                let mut a = vec![Complex64::new(0.0, 0.0); targets.len()];
                let mut b = vec![Complex64::new(0.0, 0.0); targets.len()];
                for (omega, wd) in &dirs {
                    let xi: Vec<f64> = omega.iter().map(|c| c * r).collect();
                    let w = weight * wd;
                    let j = duflo_factor(g, &xi)?;
                    let t = if g.is_abelian() {
                        g.torus_exp(&xi)
                    } else {
                        torus_representative(g, &GroupElement::Su2(Su2::exp(g, &xi)?))?
                    };
                    for (k, (_, lambda, d, v)) in targets.iter().enumerate() {
                        a[k] += irreducible_character(g, lambda, &t)? * (w * j / d);
                        b[k] += Complex64::from_polar(w, TAU * dot(v, &xi));
                    }
                }
                Ok((a, b))
            })
            .collect::<Result<_>>()?;
        let mut a = vec![Complex64::new(0.0, 0.0); targets.len()];
        let mut b = vec![Complex64::new(0.0, 0.0); targets.len()];
        for (pa, pb) in per_radius {
            for k in 0..targets.len() {
                a[k] += pa[k];
                b[k] += pb[k];
            }
        }
        Ok((a, b))
    };

    let diff = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .zip(y)
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max)
    };
    let mut previous = level(spec.nodes_at(0))?;
    let mut difference = f64::INFINITY;
    for l in 1..=spec.levels {
        let current = level(spec.nodes_at(l))?;
        difference = diff(&current.0, &previous.0).max(diff(&current.1, &previous.1));
        if difference <= spec.tolerance {
            let mut group_side = FourierDistribution::zero(g.rank(), box_size);
            let mut torus_side = FourierDistribution::zero(g.rank(), box_size);
            for (k, (nu, ..)) in targets.iter().enumerate() {
                group_side.set(nu, current.0[k])?;
                torus_side.set(nu, current.1[k])?;
            }
            group_side.set_hardy(true);
            torus_side.set_hardy(true);
            let residual = diff(&current.0, &current.1);
            return Ok(QuantizationPaths {
                group_side,
                torus_side,
                residual,
            });
        }
        previous = current;
    }
    Err(Error::Quadrature {
        difference,
        tolerance: spec.tolerance,
    })
}

/// Largest coefficient discrepancy between the two paths of the diagram.
pub fn verify_quantization_diagram(
    g: &GroupData,
    u0: &AlgebraDensity,
    box_size: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(quantization_paths(g, u0, box_size, spec)?.residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_paths_agree_exactly() {
        let g = GroupData::from_name("su2").unwrap();
        let p = quantization_paths(
            &g,
            &AlgebraDensity::PointMass,
            6,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_eq!(p.residual, 0.0);
        assert_eq!(
            p.group_side,
            delta_minus(&g, &TorusElement::identity(1), 6).unwrap()
        );
    }

    #[test]
    fn torus_paths_agree() {
        for name in ["t1", "t2"] {
            let g = GroupData::from_name(name).unwrap();
            let spec = QuadratureSpec {
                nodes: 16,
                levels: 6,
                tolerance: 1e-10,
                ..QuadratureSpec::default()
            };
            let r =
                verify_quantization_diagram(&g, &AlgebraDensity::Bump { radius: 0.4 }, 3, &spec)
                    .unwrap();
            assert!(r < 1e-12, "{name} {r}");
        }
    }

    #[test]
    fn unsupported_groups() {
        let g = GroupData::from_name("su3").unwrap();
        let err = verify_quantization_diagram(
            &g,
            &AlgebraDensity::Bump { radius: 0.3 },
            2,
            &QuadratureSpec::default(),
        );
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn guard_radius_is_enforced() {
        let g = GroupData::from_name("su2").unwrap();
        let err = verify_quantization_diagram(
            &g,
            &AlgebraDensity::Bump { radius: 2.0 },
            2,
            &QuadratureSpec::default(),
        );
        assert!(matches!(err, Err(Error::OutOfDomain(_))));
    }
}
