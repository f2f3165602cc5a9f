//! Brute-force quadrature on the 2-sphere, on SU(2) and on tori. Every rule
//! is refined by doubling its node count until two successive levels agree.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::Su2;

/// Rule used on non-periodic axes. Periodic axes always use the trapezoid rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    GaussLegendre,
    Trapezoid,
    Product,
}

impl fmt::Display for QuadratureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadratureRule::GaussLegendre => "gauss-legendre",
            QuadratureRule::Trapezoid => "trapezoid",
            QuadratureRule::Product => "product",
        })
    }
}

impl FromStr for QuadratureRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gauss-legendre" | "gl" => Ok(QuadratureRule::GaussLegendre),
            "trapezoid" => Ok(QuadratureRule::Trapezoid),
            "product" => Ok(QuadratureRule::Product),
            other => Err(Error::Parse(format!("unknown quadrature rule '{other}'"))),
        }
    }
}

/// Node count, refinement depth and tolerance of an oracle quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: QuadratureRule,
    /// Nodes per axis at the coarsest level; at least 8.
    pub nodes: usize,
    /// Number of doublings after the coarsest level.
    pub levels: usize,
    pub tolerance: f64,
}

pub const MIN_NODES: usize = 8;

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rule: QuadratureRule::Product,
            nodes: 16,
            levels: 5,
            tolerance: 1e-8,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rule: QuadratureRule, nodes: usize, levels: usize, tolerance: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            rule,
            nodes,
            levels,
            tolerance,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < MIN_NODES {
            return Err(Error::OutOfDomain(format!(
                "{} quadrature nodes, need at least {MIN_NODES}",
                self.nodes
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::OutOfDomain(format!(
                "quadrature tolerance {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn nodes_at(&self, level: usize) -> usize {
        self.nodes << level
    }
}

/// Runs `estimate(n)` for `n = nodes, 2 nodes, ...` until two successive
/// values agree within the tolerance.
pub fn refine<F>(spec: &QuadratureSpec, mut estimate: F) -> Result<Complex64>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    spec.validate()?;
    let mut previous = estimate(spec.nodes_at(0))?;
    let mut difference = f64::INFINITY;
    for level in 1..=spec.levels {
        let current = estimate(spec.nodes_at(level))?;
        difference = (current - previous).norm();
        if difference <= spec.tolerance {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::Quadrature {
        difference,
        tolerance: spec.tolerance,
    })
}

/// Nodes and weights on `[a, b]` for the non-periodic axis.
pub fn interval_rule(rule: QuadratureRule, n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    match rule {
        QuadratureRule::Trapezoid => {
            // midpoint nodes: no endpoint evaluations
            let h = (b - a) / n as f64;
            (0..n).map(|i| (a + (i as f64 + 0.5) * h, h)).collect()
        }
        QuadratureRule::GaussLegendre | QuadratureRule::Product => GaussLegendre::new(n)
            .expect("node count is at least 2")
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (mid + half * x, half * w))
            .collect(),
    }
}

/// Equispaced nodes on a period with equal weights summing to `period`.
pub fn periodic_rule(n: usize, period: f64) -> impl Iterator<Item = (f64, f64)> + Clone {
    let h = period / n as f64;
    (0..n).map(move |i| (i as f64 * h, h))
}

/// Sum of per-node values in a fixed order.
fn ordered_sum(values: Vec<Complex64>) -> Complex64 {
    values
        .into_iter()
        .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v)
}

/// `int_{S^2} f dA` for the round unit sphere (total area `4 pi`).
/// Axial coordinate `z` on the non-periodic axis, azimuth on `2n` nodes.
pub fn integrate_sphere<F>(f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn([f64; 3]) -> Complex64 + Sync,
{
    refine(spec, |n| Ok(sphere_rule(&f, spec.rule, n)))
}

fn sphere_rule<F>(f: &F, rule: QuadratureRule, n: usize) -> Complex64
where
    F: Fn([f64; 3]) -> Complex64 + Sync,
{
    let zs = interval_rule(rule, n, -1.0, 1.0);
    let rows: Vec<Complex64> = zs
        .par_iter()
        .map(|&(z, wz)| {
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let row = periodic_rule(2 * n, TAU)
                .map(|(phi, wp)| f([rho * phi.cos(), rho * phi.sin(), z]) * wp)
                .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
            row * wz
        })
        .collect();
    ordered_sum(rows)
}

/// Haar integral over SU(2), normalized to total mass 1, in Hopf coordinates
/// `a = cos(eta) e^{i s}`, `b = sin(eta) e^{i t}` with density
/// `sin(2 eta) d eta ds dt / (4 pi^2)`.
pub fn integrate_group_su2<F>(f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(&Su2) -> Complex64 + Sync,
{
    refine(spec, |n| {
        let etas = interval_rule(spec.rule, n, 0.0, PI / 2.0);
        let rows: Vec<Complex64> = etas
            .par_iter()
            .map(|&(eta, we)| {
                let (c, s) = (eta.cos(), eta.sin());
                let mut acc = Complex64::new(0.0, 0.0);
                for (x, wx) in periodic_rule(2 * n, TAU) {
                    let a = Complex64::from_polar(c, x);
                    for (y, wy) in periodic_rule(2 * n, TAU) {
                        let g = Su2 {
                            a,
                            b: Complex64::from_polar(s, y),
                        };
                        acc += f(&g) * (wx * wy);
                    }
                }
                acc * (we * (2.0 * eta).sin() / (4.0 * PI * PI))
            })
            .collect();
        Ok(ordered_sum(rows))
    })
}

/// `cos(theta) + i sin(theta) n.sigma`, the conjugate of `diag(e^{i theta}, e^{-i theta})`
/// whose rotation axis is `n`.
pub fn conjugate_of_torus(theta: f64, n: [f64; 3]) -> Su2 {
    let (c, s) = (theta.cos(), theta.sin());
    Su2 {
        a: Complex64::new(c, s * n[2]),
        b: Complex64::new(s * n[1], s * n[0]),
    }
}

/// Average of `f` over the conjugacy class of `diag(e^{i theta}, e^{-i theta})`.
pub fn conjugacy_mean<F>(f: F, theta: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(&Su2) -> Complex64 + Sync,
{
    let total = integrate_sphere(|n| f(&conjugate_of_torus(theta, n)), spec)?;
    Ok(total / (4.0 * PI))
}

/// `int_{[0,1)^rank} f(angles)`, trapezoid on every axis.
pub fn integrate_torus<F>(rank: usize, f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if rank == 0 {
        return Ok(f(&[]));
    }
    refine(spec, |n| {
        let total = n.pow(rank as u32);
        let weight = 1.0 / total as f64;
        let values: Vec<Complex64> = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut angles = vec![0.0; rank];
                angles[0] = first as f64 / n as f64;
                let inner = total / n;
                for k in 0..inner {
                    let mut rest = k;
                    for a in angles.iter_mut().skip(1) {
                        *a = (rest % n) as f64 / n as f64;
                        rest /= n;
                    }
                    acc += f(&angles);
                }
                acc
            })
            .collect();
        Ok(ordered_sum(values) * weight)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_area_and_odd_height() {
        let spec = QuadratureSpec::default();
        let area = integrate_sphere(|_| Complex64::from(1.0), &spec).unwrap();
        assert!((area.re - 4.0 * PI).abs() / (4.0 * PI) < 1e-10);
        let height = integrate_sphere(|p| Complex64::from(p[2]), &spec).unwrap();
        assert!(height.norm() < 1e-12);
        let x2 = integrate_sphere(|p| Complex64::from(p[0] * p[0]), &spec).unwrap();
        assert!((x2.re - 4.0 * PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_few_nodes() {
        let spec = QuadratureSpec {
            nodes: 4,
            ..QuadratureSpec::default()
        };
        assert!(integrate_sphere(|_| Complex64::from(1.0), &spec).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let spec = QuadratureSpec {
            nodes: 8,
            levels: 1,
            ..QuadratureSpec::default()
        };
        let err = integrate_sphere(|p| Complex64::from_polar(1.0, 200.0 * p[2]), &spec);
        assert!(matches!(err, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn haar_total_mass() {
        let spec = QuadratureSpec::default();
        let one = integrate_group_su2(|_| Complex64::from(1.0), &spec).unwrap();
        assert!((one - 1.0).norm() < 1e-12);
    }

    #[test]
    fn trapezoid_rule_also_converges() {
        let spec = QuadratureSpec {
            rule: QuadratureRule::Trapezoid,
            nodes: 64,
            levels: 8,
            tolerance: 1e-7,
        };
        let area = integrate_sphere(|p| Complex64::from(p[2] * p[2]), &spec).unwrap();
        assert!((area.re - 4.0 * PI / 3.0).abs() < 1e-6);
    }

    #[test]
    fn torus_integral_of_character() {
        let spec = QuadratureSpec::default();
        let v = integrate_torus(
            2,
            |a| Complex64::from_polar(1.0, TAU * (3.0 * a[0] - a[1])),
            &spec,
        )
        .unwrap();
        assert!(v.norm() < 1e-12);
        let one = integrate_torus(2, |_| Complex64::from(1.0), &spec).unwrap();
        assert!((one - 1.0).norm() < 1e-14);
    }

    #[test]
    fn conjugate_has_expected_trace() {
        let g = conjugate_of_torus(0.7, [0.6, 0.0, 0.8]);
        assert!((g.half_trace() - 0.7f64.cos()).abs() < 1e-15);
        assert!((g.a.norm_sqr() + g.b.norm_sqr() - 1.0).abs() < 1e-15);
    }
}
