use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::element::{clifford_multiply, gamma_element, tau_element};
use super::operator::{
    build_operator, exterior_multiplication, twist_operator, OperatorKind, SuperOperator,
};
use super::rmatrix::build_r_matrix;
use crate::error::Result;
use crate::lie::{dot, GroupData};

/// `2 pi i sum_k rho_k iota_k` on the Cartan directions.
fn rho_contraction(g: &GroupData) -> Result<SuperOperator> {
    let rho = g.rho_vector();
    let mut op = SuperOperator::zero(g.dim(), super::Parity::Odd);
    for (k, &rk) in rho.iter().enumerate() {
        if rk != 0.0 {
            let iota = build_operator(g, OperatorKind::Contraction(k))?;
            op = op.add(&iota.scale(Complex64::new(0.0, 2.0 * PI * rk)));
        }
    }
    Ok(op)
}

/// Operator-norm residual of `(p∘T)∘d^Cl = (2 pi i rho_k iota_k)∘(p∘T)`.
pub fn verify_clif_intertwine(g: &GroupData) -> Result<f64> {
    let p = build_operator(g, OperatorKind::CartanProjection)?;
    let t = build_operator(g, OperatorKind::Twist)?;
    let d = build_operator(g, OperatorKind::CliffordDifferential)?;
    let pt = p.compose(&t);
    let lhs = pt.compose(&d);
    let rhs = rho_contraction(g)?.compose(&pt);
    Ok(lhs.sub(&rhs).operator_norm())
}

/// Residuals of the operator identities of the Clifford engine.
#[derive(Debug, Clone, Serialize)]
pub struct CliffordInvariants {
    /// `[iota_a, d] = L_a`, `[L_a, iota_b] = f_abc iota_c`,
    /// `[L_a, L_b] = f_abc L_c`, `[iota_a, iota_b] = 0`.
    pub cartan_relations: f64,
    pub differential_square: f64,
    /// `gamma^2 = -(1/48) sum f_abc^2`.
    pub gamma_square: f64,
    /// Alternative form `-1/2 f_abc y_b y_c iota_a - 1/24 f_abc iota_a iota_b iota_c` of `d^Cl`.
    pub differential_expansion: f64,
    pub twist_inverse: f64,
    /// `Ad(T) y_a = y_a - r_ab iota_b`.
    pub twist_conjugation: f64,
    /// `p(T(tau(exp mu))) = t^rho` over random `mu`.
    pub tau_kernel: f64,
    pub intertwine: f64,
}

impl CliffordInvariants {
    pub fn worst(&self) -> f64 {
        [
            self.cartan_relations,
            self.differential_square,
            self.gamma_square,
            self.differential_expansion,
            self.twist_inverse,
            self.twist_conjugation,
            self.tau_kernel,
            self.intertwine,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Evaluates every Clifford identity for `g`. `samples` random Cartan
/// vectors drawn from `seed` are used for the `tau` kernel check.
pub fn clifford_invariants(g: &GroupData, samples: usize, seed: u64) -> Result<CliffordInvariants> {
    let n = g.dim();
    let iota: Vec<SuperOperator> = (0..n)
        .map(|a| build_operator(g, OperatorKind::Contraction(a)))
        .collect::<Result<_>>()?;
    let lie: Vec<SuperOperator> = (0..n)
        .map(|a| build_operator(g, OperatorKind::LieDerivative(a)))
        .collect::<Result<_>>()?;
    let y: Vec<SuperOperator> = (0..n)
        .map(|a| exterior_multiplication(g, a))
        .collect::<Result<_>>()?;
    let d = build_operator(g, OperatorKind::CliffordDifferential)?;

    let combine = |coeffs: &dyn Fn(usize) -> f64, ops: &[SuperOperator]| {
        let mut acc = SuperOperator::zero(g.dim(), ops[0].parity());
        for (c, op) in ops.iter().enumerate() {
            let f = coeffs(c);
            if f != 0.0 {
                acc = acc.add(&op.scale(Complex64::from(f)));
            }
        }
        acc
    };

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let cartan_relations = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut worst: f64 = 0.0;
            worst = worst.max(iota[a].bracket(&iota[b]).max_abs());
            let li = lie[a].bracket(&iota[b]);
            worst = worst.max(li.distance(&combine(&|c| g.f(a, b, c), &iota)));
            let ll = lie[a].bracket(&lie[b]);
            worst = worst.max(ll.distance(&combine(&|c| g.f(a, b, c), &lie)));
            if b == 0 {
                worst = worst.max(iota[a].bracket(&d).distance(&lie[a]));
            }
            worst
        })
        .reduce(|| 0.0, f64::max);

    let differential_square = d.compose(&d).max_abs();

    let gamma = gamma_element(g);
    let sum_f2: f64 = g.structure_constants().iter().map(|f| f * f).sum();
    let gamma_square =
        clifford_multiply(g, &gamma, &gamma)?.scalar_residual(Complex64::from(-sum_f2 / 48.0));

    let mut expansion = SuperOperator::zero(n, super::Parity::Odd);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let f = g.f(a, b, c);
                if f == 0.0 {
                    continue;
                }
                let quad = y[b]
                    .compose(&y[c])
                    .compose(&iota[a])
                    .scale(Complex64::from(-0.5 * f));
                let cubic = iota[a]
                    .compose(&iota[b])
                    .compose(&iota[c])
                    .scale(Complex64::from(-f / 24.0));
                expansion = expansion.add(&quad).add(&cubic);
            }
        }
    }
    let differential_expansion = expansion.distance(&d);

    let r = build_r_matrix(g);
    let t = twist_operator(g, &r, 1.0)?;
    let t_inv = twist_operator(g, &r, -1.0)?;
    let twist_inverse = t.compose(&t_inv).distance(&SuperOperator::identity(n));

    let twist_conjugation = (0..n)
        .into_par_iter()
        .map(|a| {
            let lhs = t.compose(&y[a]).compose(&t_inv);
            let mut rhs = y[a].clone();
            for (b, iota_b) in iota.iter().enumerate() {
                let rab = r.get(a, b);
                if rab != Complex64::from(0.0) {
                    rhs = rhs.sub(&iota_b.scale(rab));
                }
            }
            lhs.distance(&rhs)
        })
        .reduce(|| 0.0, f64::max);

    let p = build_operator(g, OperatorKind::CartanProjection)?;
    let pt = p.compose(&t);
    let rho = g.rho_vector();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mus: Vec<Vec<f64>> = (0..samples)
        .map(|_| (0..g.rank()).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let tau_kernel = mus
        .par_iter()
        .map(|mu| -> Result<f64> {
            let tau = tau_element(g, mu)?;
            let expected = Complex64::from_polar(1.0, 2.0 * PI * dot(mu, &rho));
            Ok(pt.apply(&tau).scalar_residual(expected))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let intertwine = verify_clif_intertwine(g)?;

    Ok(CliffordInvariants {
        cartan_relations,
        differential_square,
        gamma_square,
        differential_expansion,
        twist_inverse,
        twist_conjugation,
        tau_kernel,
        intertwine,
    })
}
