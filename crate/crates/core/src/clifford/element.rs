use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::GroupData;

/// Grading of a homogeneous element or operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(k: u32) -> Parity {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sum(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Sign and factor of `x_A x_B = sign * 2^{-|A & B|} x_{A ^ B}` for ordered
/// monomials in an orthonormal basis, where `x_a x_a = 1/2`.
#[inline]
pub(crate) fn monomial_product(a: usize, b: usize) -> (usize, f64) {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        // generators of A above b must pass over it
        swaps += (a >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    let overlap = (a & b).count_ones() as i32;
    (a ^ b, sign * 0.5f64.powi(overlap))
}

/// An element of `Cl(g)_C`, identified with `wedge g_C` through the symbol
/// map. Coefficients are indexed by the bitmask of the ordered monomial
/// `x_{a_1} ... x_{a_k}` (`a_1 < ... < a_k`).
#[derive(Clone, PartialEq)]
pub struct SuperElement {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(mask, c)| format!("{c}*{}", monomial_name(mask)))
            .collect();
        write!(f, "SuperElement[dim {}]({})", self.dim, terms.join(" + "))
    }
}

fn monomial_name(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| format!("y{b}"))
        .collect::<Vec<_>>()
        .join("")
}

impl SuperElement {
    pub fn zero(dim: usize) -> Self {
        SuperElement {
            dim,
            coeffs: vec![Complex64::from(0.0); 1 << dim],
        }
    }

    pub fn scalar(dim: usize, c: Complex64) -> Self {
        let mut e = SuperElement::zero(dim);
        e.coeffs[0] = c;
        e
    }

    pub fn one(dim: usize) -> Self {
        SuperElement::scalar(dim, Complex64::from(1.0))
    }

    pub fn monomial(dim: usize, mask: usize, c: Complex64) -> Self {
        let mut e = SuperElement::zero(dim);
        e.coeffs[mask] = c;
        e
    }

    /// The generator `x_a` (symbol `y_a`).
    pub fn generator(dim: usize, a: usize) -> Result<Self> {
        if a >= dim {
            return Err(Error::BadIndex { index: a, dim });
        }
        Ok(SuperElement::monomial(dim, 1 << a, Complex64::from(1.0)))
    }

    /// `sum_a v_a x_a` for a complex vector in the orthonormal basis.
    pub fn linear(v: &[Complex64]) -> Self {
        let mut e = SuperElement::zero(v.len());
        for (a, c) in v.iter().enumerate() {
            e.coeffs[1 << a] = *c;
        }
        e
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 1 << dim {
            return Err(Error::Mismatch(format!(
                "{} coefficients for dimension {dim}",
                coeffs.len()
            )));
        }
        Ok(SuperElement { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: usize) -> Complex64 {
        self.coeffs[mask]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Nonzero terms as `(mask, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::from(0.0))
            .map(|(m, c)| (m, *c))
    }

    /// The parity if the element is homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for (mask, _) in self.terms() {
            let p = Parity::of_degree(mask.count_ones());
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    pub fn degree(&self) -> u32 {
        self.terms().map(|(m, _)| m.count_ones()).max().unwrap_or(0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference from `c * 1`.
    pub fn scalar_residual(&self, c: Complex64) -> f64 {
        let mut r = (self.coeffs[0] - c).norm();
        for z in &self.coeffs[1..] {
            r = r.max(z.norm());
        }
        r
    }

    pub fn scale(&self, c: Complex64) -> Self {
        SuperElement {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &SuperElement) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        SuperElement {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SuperElement) -> Self {
        self.add(&other.scale(Complex64::from(-1.0)))
    }

    /// Clifford product.
    pub fn mul(&self, other: &SuperElement) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = SuperElement::zero(self.dim);
        let rhs: Vec<(usize, Complex64)> = other.terms().collect();
        for (a, ca) in self.terms() {
            for &(b, cb) in &rhs {
                let (m, s) = monomial_product(a, b);
                out.coeffs[m] += ca * cb * s;
            }
        }
        out
    }

    /// Clifford exponential by scaling and squaring.
    pub fn exp(&self) -> Self {
        let norm: f64 = self.coeffs.iter().map(|c| c.norm()).sum();
        let mut squarings = 0;
        let mut scale = 1.0;
        while norm * scale > 0.25 {
            scale *= 0.5;
            squarings += 1;
        }
        let x = self.scale(Complex64::from(scale));
        let mut sum = SuperElement::one(self.dim);
        let mut term = SuperElement::one(self.dim);
        for k in 1..40 {
            term = term.mul(&x).scale(Complex64::from(1.0 / k as f64));
            sum = sum.add(&term);
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        sum
    }
}

/// The Clifford product `a b` for elements over `g`.
pub fn clifford_multiply(
    g: &GroupData,
    a: &SuperElement,
    b: &SuperElement,
) -> Result<SuperElement> {
    if a.dim() != g.dim() || b.dim() != g.dim() {
        return Err(Error::Mismatch(format!(
            "elements of dimension {} and {} over a group of dimension {}",
            a.dim(),
            b.dim(),
            g.dim()
        )));
    }
    Ok(a.mul(b))
}

/// `gamma = -(1/6) f_abc x_a x_b x_c`.
pub fn gamma_element(g: &GroupData) -> SuperElement {
    let d = g.dim();
    let mut out = SuperElement::zero(d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let f = g.f(a, b, c);
                if f == 0.0 || a == b || b == c || a == c {
                    continue;
                }
                let (m1, s1) = monomial_product(1 << a, 1 << b);
                let (m, s2) = monomial_product(m1, 1 << c);
                out.coeffs[m] += Complex64::from(-f * s1 * s2 / 6.0);
            }
        }
    }
    out
}

/// The quadratic element `-1/2 f_abc v_a x_b x_c` for a vector `v` of `g`.
pub fn quadratic_element(g: &GroupData, v: &[f64]) -> SuperElement {
    let d = g.dim();
    let mut out = SuperElement::zero(d);
    for (a, &va) in v.iter().enumerate() {
        if va == 0.0 {
            continue;
        }
        for b in 0..d {
            for c in 0..d {
                let f = g.f(a, b, c);
                if f == 0.0 {
                    continue;
                }
                let (m, s) = monomial_product(1 << b, 1 << c);
                out.coeffs[m] += Complex64::from(-0.5 * va * f * s);
            }
        }
    }
    out
}

/// `tau(exp mu) = exp(-1/2 f_abc mu_a x_b x_c)` for `mu` in the Cartan subalgebra.
pub fn tau_element(g: &GroupData, mu: &[f64]) -> Result<SuperElement> {
    if mu.len() != g.rank() {
        return Err(Error::Mismatch(format!(
            "Cartan vector of length {} for rank {}",
            mu.len(),
            g.rank()
        )));
    }
    Ok(quadratic_element(g, &g.embed_cartan(mu)).exp())
}
