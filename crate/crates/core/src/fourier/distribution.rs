use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::{GroupData, TorusElement, Weight};

/// A distribution on the maximal torus, given by its Fourier coefficients
/// `<u, t^nu>` for all weights `nu` with every coordinate in `[-N, N]`.
/// Coefficients outside the box are treated as unknown and read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierDistribution {
    rank: usize,
    box_size: usize,
    hardy: bool,
    coeffs: Vec<Complex64>,
}

impl FourierDistribution {
    pub fn zero(rank: usize, box_size: usize) -> Self {
        let side = 2 * box_size + 1;
        FourierDistribution {
            rank,
            box_size,
            hardy: false,
            coeffs: vec![Complex64::new(0.0, 0.0); side.pow(rank as u32)],
        }
    }

    pub fn from_fn<F>(rank: usize, box_size: usize, f: F) -> Self
    where
        F: Fn(&Weight) -> Complex64,
    {
        let mut d = FourierDistribution::zero(rank, box_size);
        for i in 0..d.coeffs.len() {
            d.coeffs[i] = f(&d.weight_at(i));
        }
        d
    }

    /// `<delta_h, t^nu> = h^nu`.
    pub fn point_mass(h: &TorusElement, box_size: usize) -> Self {
        FourierDistribution::from_fn(h.rank(), box_size, |nu| h.pow(nu))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn box_size(&self) -> usize {
        self.box_size
    }

    pub fn is_hardy(&self) -> bool {
        self.hardy
    }

    pub(crate) fn set_hardy(&mut self, hardy: bool) {
        self.hardy = hardy;
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn index(&self, nu: &Weight) -> Option<usize> {
        if nu.rank() != self.rank {
            return None;
        }
        let n = self.box_size as i64;
        let side = 2 * n + 1;
        let mut idx = 0i64;
        for &c in nu.coords.iter().rev() {
            if c.unsigned_abs() > n as u64 {
                return None;
            }
            idx = idx * side + (c + n);
        }
        Some(idx as usize)
    }

    fn weight_at(&self, mut idx: usize) -> Weight {
        let side = 2 * self.box_size + 1;
        let n = self.box_size as i64;
        let mut coords = Vec::with_capacity(self.rank);
        for _ in 0..self.rank {
            coords.push((idx % side) as i64 - n);
            idx /= side;
        }
        Weight::new(coords)
    }

    pub fn in_box(&self, nu: &Weight) -> bool {
        self.index(nu).is_some()
    }

    /// The coefficient `<u, t^nu>`; zero outside the box.
    pub fn coeff(&self, nu: &Weight) -> Complex64 {
        self.index(nu)
            .map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn set(&mut self, nu: &Weight, value: Complex64) -> Result<()> {
        let i = self.index(nu).ok_or_else(|| {
            Error::Mismatch(format!(
                "weight {nu} outside the box of size {}",
                self.box_size
            ))
        })?;
        self.coeffs[i] = value;
        Ok(())
    }

    /// All `(weight, coefficient)` pairs in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = (Weight, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.weight_at(i), *c))
    }

    pub fn max_abs_diff(&self, other: &FourierDistribution) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn scale(&self, c: Complex64) -> FourierDistribution {
        FourierDistribution {
            coeffs: self.coeffs.iter().map(|z| z * c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &FourierDistribution) -> Result<FourierDistribution> {
        self.check_compatible(other)?;
        Ok(FourierDistribution {
            rank: self.rank,
            box_size: self.box_size,
            hardy: self.hardy && other.hardy,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    fn check_compatible(&self, other: &FourierDistribution) -> Result<()> {
        if self.rank != other.rank || self.box_size != other.box_size {
            return Err(Error::Mismatch(format!(
                "tables of rank {} box {} and rank {} box {}",
                self.rank, self.box_size, other.rank, other.box_size
            )));
        }
        Ok(())
    }

    /// Whether every coefficient off `rho + dominant` vanishes.
    pub fn satisfies_hardy_support(&self, g: &GroupData) -> bool {
        self.iter()
            .all(|(nu, c)| c == Complex64::new(0.0, 0.0) || in_hardy_support(g, &nu))
    }
}

/// `nu - rho` is dominant.
pub fn in_hardy_support(g: &GroupData, nu: &Weight) -> bool {
    g.is_dominant(&(nu - g.rho()))
}

/// The Szegő projector: keeps the coefficients on `rho + dominant`.
pub fn szego_project(g: &GroupData, d: &FourierDistribution) -> Result<FourierDistribution> {
    if d.rank() != g.rank() {
        return Err(Error::Mismatch(format!(
            "table of rank {} for group of rank {}",
            d.rank(),
            g.rank()
        )));
    }
    let mut out = d.clone();
    for i in 0..out.coeffs.len() {
        if !in_hardy_support(g, &out.weight_at(i)) {
            out.coeffs[i] = Complex64::new(0.0, 0.0);
        }
    }
    out.hardy = true;
    Ok(out)
}

/// Convolution, which multiplies Fourier coefficients pointwise.
pub fn convolve(d1: &FourierDistribution, d2: &FourierDistribution) -> Result<FourierDistribution> {
    d1.check_compatible(d2)?;
    Ok(FourierDistribution {
        rank: d1.rank,
        box_size: d1.box_size,
        hardy: d1.hardy || d2.hardy,
        coeffs: d1
            .coeffs
            .iter()
            .zip(&d2.coeffs)
            .map(|(a, b)| a * b)
            .collect(),
    })
}

/// `delta_h^-`: coefficient `h^{lambda + rho}` at `lambda + rho` for dominant `lambda`.
pub fn delta_minus(
    g: &GroupData,
    h: &TorusElement,
    box_size: usize,
) -> Result<FourierDistribution> {
    if h.rank() != g.rank() {
        return Err(Error::Mismatch(format!(
            "torus element of rank {}",
            h.rank()
        )));
    }
    let mut d = FourierDistribution::from_fn(g.rank(), box_size, |nu| {
        if in_hardy_support(g, nu) {
            h.pow(nu)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    d.hardy = true;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let d = FourierDistribution::zero(2, 3);
        for i in 0..d.len() {
            assert_eq!(d.index(&d.weight_at(i)), Some(i));
        }
        assert!(!d.in_box(&Weight::new(vec![4, 0])));
        assert_eq!(d.coeff(&Weight::new(vec![0, -9])), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn szego_of_delta_e() {
        let g = GroupData::from_name("su2").unwrap();
        let e = TorusElement::identity(1);
        let p = szego_project(&g, &FourierDistribution::point_mass(&e, 6)).unwrap();
        assert_eq!(p, delta_minus(&g, &e, 6).unwrap());
        for (nu, c) in p.iter() {
            let expected = if nu.coords[0] >= 1 { 1.0 } else { 0.0 };
            assert_eq!(c, Complex64::from(expected));
        }
        assert!(p.satisfies_hardy_support(&g));
    }

    #[test]
    fn delta_minus_su2_phase() {
        let g = GroupData::from_name("su2").unwrap();
        let s = 0.13;
        let theta = std::f64::consts::TAU * s;
        let d = delta_minus(&g, &TorusElement::new(vec![s]), 10).unwrap();
        for k in 0..9 {
            let c = d.coeff(&Weight::new(vec![k + 1]));
            let expected = Complex64::from_polar(1.0, (k + 1) as f64 * theta);
            assert!((c - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn convolution_box_mismatch() {
        let a = FourierDistribution::zero(1, 3);
        let b = FourierDistribution::zero(1, 4);
        assert!(matches!(convolve(&a, &b), Err(Error::Mismatch(_))));
    }
}
