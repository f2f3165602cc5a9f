use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::element::{gamma_element, monomial_product, quadratic_element, Parity, SuperElement};
use super::rmatrix::{build_r_matrix, RMatrix};
use crate::error::{Error, Result};
use crate::lie::GroupData;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A linear operator on `wedge g_C`, as a dense `2^dim x 2^dim` matrix in the
/// monomial basis, with a parity.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    dim: usize,
    parity: Parity,
    /// Row-major, `size x size`.
    data: Vec<Complex64>,
}

/// Operators obtainable from [`build_operator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Contraction(usize),
    LieDerivative(usize),
    CliffordDifferential,
    Twist,
    CartanProjection,
}

impl SuperOperator {
    pub fn zero(dim: usize, parity: Parity) -> Self {
        let n = 1 << dim;
        SuperOperator {
            dim,
            parity,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = SuperOperator::zero(dim, Parity::Even);
        let n = op.size();
        for i in 0..n {
            op.data[i * n + i] = Complex64::from(1.0);
        }
        op
    }

    /// Builds the operator column by column from its action on monomials.
    pub fn from_columns<F>(dim: usize, parity: Parity, column: F) -> Self
    where
        F: Fn(usize, &mut [Complex64]) + Sync,
    {
        let n = 1 << dim;
        let cols: Vec<Vec<Complex64>> = (0..n)
            .into_par_iter()
            .map(|j| {
                let mut col = vec![ZERO; n];
                column(j, &mut col);
                col
            })
            .collect();
        let mut op = SuperOperator::zero(dim, parity);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                op.data[i * n + j] = v;
            }
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        1 << self.dim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.size() + col]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// True when every nonzero entry maps monomials of parity `p` to parity
    /// `p + self.parity`.
    pub fn parity_consistent(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.data[i * n + j] == ZERO
                    || Parity::of_degree(i.count_ones() + j.count_ones()) == self.parity
            })
        })
    }

    /// `self ∘ other`; zero entries of `self` are skipped.
    pub fn compose(&self, other: &SuperOperator) -> SuperOperator {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.size();
        let mut data = vec![ZERO; n * n];
        data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs = &other.data[k * n..(k + 1) * n];
                for (r, b) in row.iter_mut().zip(rhs) {
                    *r += a * b;
                }
            }
        });
        SuperOperator {
            dim: self.dim,
            parity: self.parity.sum(other.parity),
            data,
        }
    }

    pub fn apply(&self, x: &SuperElement) -> SuperElement {
        let n = self.size();
        let input = x.coeffs();
        let out: Vec<Complex64> = (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(input)
                    .filter(|(a, _)| **a != ZERO)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        SuperElement::from_coeffs(self.dim, out).expect("operator and element share a dimension")
    }

    pub fn scale(&self, c: Complex64) -> SuperOperator {
        SuperOperator {
            dim: self.dim,
            parity: self.parity,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &SuperOperator) -> SuperOperator {
        debug_assert_eq!(self.dim, other.dim);
        SuperOperator {
            dim: self.dim,
            parity: self.parity,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SuperOperator) -> SuperOperator {
        self.add(&other.scale(Complex64::from(-1.0)))
    }

    /// Super-commutator `[A, B] = AB - (-1)^{|A||B|} BA`.
    pub fn bracket(&self, other: &SuperOperator) -> SuperOperator {
        let ab = self.compose(other);
        let ba = other.compose(self);
        if self.parity.is_odd() && other.parity.is_odd() {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-abs entry difference.
    pub fn distance(&self, other: &SuperOperator) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Spectral norm, the largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let n = self.size();
        DMatrix::from_row_slice(n, n, &self.data)
            .singular_values()
            .max()
    }

    /// Power series `exp(self)`, summed until the terms vanish. Terminates
    /// after finitely many steps on nilpotent operators.
    pub fn exp(&self) -> SuperOperator {
        let mut sum = SuperOperator::identity(self.dim);
        let mut term = SuperOperator::identity(self.dim);
        for k in 1..=(2 * self.size()) {
            term = term.compose(self).scale(Complex64::from(1.0 / k as f64));
            if term.max_abs() < 1e-300 {
                break;
            }
            sum = sum.add(&term);
        }
        sum.parity = Parity::Even;
        sum
    }
}

/// Operators are dense `2^d x 2^d` matrices.
pub const MAX_OPERATOR_DIM: usize = 10;

fn check_operator_dim(d: usize) -> Result<()> {
    if d > MAX_OPERATOR_DIM {
        return Err(Error::Unsupported(format!(
            "operators on wedge g need dim g <= {MAX_OPERATOR_DIM}, got {d}"
        )));
    }
    Ok(())
}

/// The super-commutator action `ad(u) w = u w - (-1)^{|u||w|} w u` of a
/// homogeneous element.
pub fn ad_operator(u: &SuperElement) -> Result<SuperOperator> {
    check_operator_dim(u.dim())?;
    let parity = u
        .parity()
        .ok_or_else(|| Error::Mismatch("ad of an inhomogeneous element".into()))?;
    let terms: Vec<(usize, Complex64)> = u.terms().collect();
    Ok(SuperOperator::from_columns(u.dim(), parity, |w, col| {
        let w_odd = w.count_ones() % 2 == 1;
        let sign = if parity.is_odd() && w_odd { -1.0 } else { 1.0 };
        for &(a, c) in &terms {
            let (m1, s1) = monomial_product(a, w);
            let (m2, s2) = monomial_product(w, a);
            col[m1] += c * s1;
            col[m2] -= c * (sign * s2);
        }
    }))
}

/// Exterior multiplication by the symbol `y_a`.
pub fn exterior_multiplication(g: &GroupData, a: usize) -> Result<SuperOperator> {
    let d = g.dim();
    check_operator_dim(d)?;
    if a >= d {
        return Err(Error::BadIndex { index: a, dim: d });
    }
    Ok(SuperOperator::from_columns(d, Parity::Odd, |w, col| {
        if w >> a & 1 == 0 {
            let below = (w & ((1 << a) - 1)).count_ones();
            col[w | 1 << a] = Complex64::from(if below % 2 == 0 { 1.0 } else { -1.0 });
        }
    }))
}

/// `exp(c/2 r_ab iota_a iota_b)`; `c = 1` gives the twist, `c = -1` its inverse.
pub fn twist_operator(g: &GroupData, r: &RMatrix, c: f64) -> Result<SuperOperator> {
    let d = g.dim();
    let iotas: Vec<SuperOperator> = (0..d)
        .map(|a| build_operator(g, OperatorKind::Contraction(a)))
        .collect::<Result<_>>()?;
    let mut gen = SuperOperator::zero(d, Parity::Even);
    for a in 0..d {
        for b in 0..d {
            let rab = r.get(a, b);
            if rab == ZERO {
                continue;
            }
            gen = gen.add(&iotas[a].compose(&iotas[b]).scale(rab * (0.5 * c)));
        }
    }
    Ok(gen.exp())
}

/// The canonical operators on `wedge g_C`.
pub fn build_operator(g: &GroupData, kind: OperatorKind) -> Result<SuperOperator> {
    let d = g.dim();
    let check = |a: usize| {
        if a >= d {
            Err(Error::BadIndex { index: a, dim: d })
        } else {
            Ok(())
        }
    };
    match kind {
        OperatorKind::Contraction(a) => {
            check(a)?;
            ad_operator(&SuperElement::generator(d, a)?)
        }
        OperatorKind::LieDerivative(a) => {
            check(a)?;
            let mut e = vec![0.0; d];
            e[a] = 1.0;
            let q = quadratic_element(g, &e);
            let mut op = ad_operator(&q)?;
            op.parity = Parity::Even;
            Ok(op)
        }
        OperatorKind::CliffordDifferential => {
            let mut op = ad_operator(&gamma_element(g))?;
            op.parity = Parity::Odd;
            Ok(op)
        }
        OperatorKind::Twist => twist_operator(g, &build_r_matrix(g), 1.0),
        OperatorKind::CartanProjection => {
            let torus_mask = (1usize << g.rank()) - 1;
            Ok(SuperOperator::from_columns(d, Parity::Even, |w, col| {
                if w & !torus_mask == 0 {
                    col[w] = Complex64::from(1.0);
                }
            }))
        }
    }
}
