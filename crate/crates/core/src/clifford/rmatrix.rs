use std::f64::consts::PI;

use num_complex::Complex64;

use crate::lie::GroupData;

/// The classical r-matrix `r = sum_alpha e_alpha ^ e_{-alpha}` as an
/// antisymmetric matrix in the orthonormal basis of `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    dim: usize,
    r: Vec<Complex64>,
}

impl RMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.r[a * self.dim + b]
    }

    pub fn max_abs(&self) -> f64 {
        self.r.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |r_ab + r_ba|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                worst = worst.max((self.get(a, b) + self.get(b, a)).norm());
            }
        }
        worst
    }
}

pub fn build_r_matrix(g: &GroupData) -> RMatrix {
    let d = g.dim();
    let mut r = vec![Complex64::from(0.0); d * d];
    for root in g.positive_roots() {
        for a in 0..d {
            for b in 0..d {
                r[a * d + b] += 0.5 * (root.plus[a] * root.minus[b] - root.minus[a] * root.plus[b]);
            }
        }
    }
    RMatrix { dim: d, r }
}

/// `max_a |sum_bc f_abc r_bc - 4 pi i rho_a|`.
pub fn contraction_residual(g: &GroupData, r: &RMatrix) -> f64 {
    let d = g.dim();
    let rho = g.embed_cartan(&g.rho_vector());
    (0..d)
        .map(|a| {
            let mut s = Complex64::from(0.0);
            for b in 0..d {
                for c in 0..d {
                    s += g.f(a, b, c) * r.get(b, c);
                }
            }
            (s - Complex64::new(0.0, 4.0 * PI * rho[a])).norm()
        })
        .fold(0.0, f64::max)
}

/// `max |Cycl(r_as f_sbt r_tc) - f_abc / 4|` over all index triples.
pub fn yang_baxter_residual(g: &GroupData, r: &RMatrix) -> f64 {
    let d = g.dim();
    let mut rfr = vec![Complex64::from(0.0); d * d * d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let mut s = Complex64::from(0.0);
                for si in 0..d {
                    let ras = r.get(a, si);
                    if ras == Complex64::from(0.0) {
                        continue;
                    }
                    for t in 0..d {
                        s += ras * g.f(si, b, t) * r.get(t, c);
                    }
                }
                rfr[(a * d + b) * d + c] = s;
            }
        }
    }
    let at = |a: usize, b: usize, c: usize| rfr[(a * d + b) * d + c];
    let mut worst: f64 = 0.0;
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let cyc = at(a, b, c) + at(b, c, a) + at(c, a, b);
                worst = worst.max((cyc - g.f(a, b, c) / 4.0).norm());
            }
        }
    }
    worst
}

/// `max |ad(h) r + r ad(h)^T|` over the Cartan basis vectors `h`.
pub fn torus_invariance_residual(g: &GroupData, r: &RMatrix) -> f64 {
    let d = g.dim();
    let mut worst: f64 = 0.0;
    for k in 0..g.rank() {
        let mut h = vec![0.0; d];
        h[k] = 1.0;
        let ad = g.ad_matrix(&h);
        for a in 0..d {
            for b in 0..d {
                let mut s = Complex64::from(0.0);
                for c in 0..d {
                    s += ad[(a, c)] * r.get(c, b) + ad[(b, c)] * r.get(a, c);
                }
                worst = worst.max(s.norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_r_matrix_vanishes() {
        let g = GroupData::from_name("t3").unwrap();
        assert_eq!(build_r_matrix(&g).max_abs(), 0.0);
    }

    #[test]
    fn r_matrix_identities() {
        for name in ["su2", "su3", "su2xt1"] {
            let g = GroupData::from_name(name).unwrap();
            let r = build_r_matrix(&g);
            assert!(r.antisymmetry_residual() < 1e-15);
            assert!(contraction_residual(&g, &r) < 1e-10, "{name}");
            assert!(yang_baxter_residual(&g, &r) < 1e-10, "{name}");
            assert!(torus_invariance_residual(&g, &r) < 1e-10, "{name}");
        }
    }

    #[test]
    fn cartan_weyl_entries() {
        // Only the entries pairing e_alpha with e_-alpha survive, with value +-1/2.
        let g = GroupData::from_name("su3").unwrap();
        let r = build_r_matrix(&g);
        for root in g.positive_roots() {
            let mut s = Complex64::from(0.0);
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    s += r.get(a, b) * root.minus[a] * root.plus[b];
                }
            }
            assert!((s - 0.5).norm() < 1e-14);
            let mut diag = Complex64::from(0.0);
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    diag += r.get(a, b) * root.plus[a] * root.plus[b];
                }
            }
            assert!(diag.norm() < 1e-14);
        }
    }
}
