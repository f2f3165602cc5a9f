use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::distribution::{in_hardy_support, FourierDistribution};
use crate::error::{Error, Result};
use crate::lie::{
    alternating_sum, irreducible_character, irrep_dimension, spherical_harmonic,
    torus_representative, weyl_denominator, GroupData, GroupElement, Su2, TorusElement, Weight,
};
use crate::oracle::QuadratureSpec;

/// `r_G^T(delta_g)`: coefficient `Delta_lambda(g)` at `lambda + rho`.
pub fn restrict_point_mass(
    g: &GroupData,
    element: &GroupElement,
    box_size: usize,
) -> Result<FourierDistribution> {
    let mut d = FourierDistribution::zero(g.rank(), box_size);
    let weights: Vec<Weight> = d
        .iter()
        .map(|(nu, _)| nu)
        .filter(|nu| in_hardy_support(g, nu))
        .collect();
    for nu in weights {
        let lambda = &nu - g.rho();
        d.set(&nu, spherical_harmonic(g, &lambda, element)?)?;
    }
    d.set_hardy(true);
    Ok(d)
}

type DensityFn = dyn Fn(&GroupData, &GroupElement) -> Result<Complex64> + Send + Sync;

/// An Ad-invariant density on `G`, paired against characters by quadrature.
#[derive(Clone)]
pub struct InvariantDensity {
    name: String,
    eval: Arc<DensityFn>,
    quadrature: QuadratureSpec,
}

impl fmt::Debug for InvariantDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvariantDensity")
            .field("name", &self.name)
            .field("quadrature", &self.quadrature)
            .finish()
    }
}

impl InvariantDensity {
    /// A density given as a class function of a torus representative.
    pub fn from_class_function<F>(name: impl Into<String>, quadrature: QuadratureSpec, f: F) -> Self
    where
        F: Fn(&GroupData, &TorusElement) -> Complex64 + Send + Sync + 'static,
    {
        InvariantDensity {
            name: name.into(),
            eval: Arc::new(move |g, x| Ok(f(g, &torus_representative(g, x)?))),
            quadrature,
        }
    }

    /// The normalized Haar density.
    pub fn haar(quadrature: QuadratureSpec) -> Self {
        InvariantDensity::from_class_function("haar", quadrature, |_, _| Complex64::new(1.0, 0.0))
    }

    /// `conj(chi_nu)` times Haar, which pairs to one against `chi_nu`.
    pub fn character_weighted(nu: Weight, quadrature: QuadratureSpec) -> Self {
        let name = format!("character{nu}");
        InvariantDensity::from_class_function(name, quadrature, move |g, t| {
            irreducible_character(g, &nu, t)
                .map(|c| c.conj())
                .unwrap_or_default()
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quadrature
    }

    pub fn evaluate(&self, g: &GroupData, x: &GroupElement) -> Result<Complex64> {
        (self.eval)(g, x)
    }

    /// Largest `|u(x) - u(k x k^-1)|` over random SU(2) pairs `(x, k)`.
    pub fn ad_invariance_residual(&self, g: &GroupData, samples: usize, seed: u64) -> Result<f64> {
        if !g.is_su2() {
            return Err(Error::Unsupported(format!(
                "random conjugation in {}",
                g.name()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = || {
            let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            Su2::normalized(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
        };
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x = random();
            let k = random();
            let y = k.mul(&x).mul(&k.inverse());
            let a = self.evaluate(g, &GroupElement::Su2(x))?;
            let b = self.evaluate(g, &GroupElement::Su2(y))?;
            worst = worst.max((a - b).norm());
        }
        Ok(worst)
    }
}

/// `r_G^T(u)` for an invariant density: coefficient
/// `(dim V_lambda)^{-1} int_G u chi_lambda` at `lambda + rho`, computed on the
/// torus as `|W|^{-1} int_T u A_{lambda+rho} conj(A_rho)`.
pub fn restrict_invariant_density(
    g: &GroupData,
    u: &InvariantDensity,
    box_size: usize,
) -> Result<FourierDistribution> {
    let spec = u.quadrature();
    spec.validate()?;
    let rank = g.rank();
    let template = FourierDistribution::zero(rank, box_size);
    let targets: Vec<(Weight, Weight, f64)> = template
        .iter()
        .map(|(nu, _)| nu)
        .filter(|nu| in_hardy_support(g, nu))
        .map(|nu| {
            let lambda = &nu - g.rho();
            let dim = irrep_dimension(g, &lambda).expect("support weights are dominant") as f64;
            (nu, lambda, dim)
        })
        .collect();
    let order = g.weyl_group().len() as f64;
    // Resolve every frequency in the box at the coarsest level.
    let max_rho = g.rho().coords.iter().copied().max().unwrap_or(0) as usize;
    let first = spec.nodes.max(2 * (box_size + 2 * max_rho) + 2);

    let evaluate_level = |n: usize| -> Result<Vec<Complex64>> {
        let total = n.pow(rank as u32);
        let nodes: Vec<(TorusElement, Complex64)> = (0..total)
            .into_par_iter()
            .map(|k| {
                let mut rest = k;
                let angles: Vec<f64> = (0..rank)
                    .map(|_| {
                        let a = (rest % n) as f64 / n as f64;
                        rest /= n;
                        a
                    })
                    .collect();
                let t = TorusElement::new(angles);
                let weight = u.evaluate(g, &GroupElement::Torus(t.clone()))?
                    * weyl_denominator(g, &t).conj()
                    / (total as f64 * order);
                Ok((t, weight))
            })
            .collect::<Result<_>>()?;
        Ok(targets
            .par_iter()
            .map(|(nu, _, dim)| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (t, w) in &nodes {
                    acc += alternating_sum(g, nu, t) * w;
                }
                acc / *dim
            })
            .collect())
    };

    let mut previous = evaluate_level(first)?;
    let mut difference = f64::INFINITY;
    for level in 1..=spec.levels {
        let current = evaluate_level(first << level)?;
        difference = current
            .iter()
            .zip(&previous)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if difference <= spec.tolerance {
            let mut out = FourierDistribution::zero(rank, box_size);
            for ((nu, _, _), c) in targets.iter().zip(current) {
                out.set(nu, c)?;
            }
            out.set_hardy(true);
            return Ok(out);
        }
        previous = current;
    }
    Err(Error::Quadrature {
        difference,
        tolerance: spec.tolerance,
    })
}
