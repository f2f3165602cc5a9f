use std::collections::{HashSet, VecDeque};
use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::spec::{Factor, GroupSpec};
use super::weight::{TorusElement, Weight};
use crate::error::{Error, Result};

/// Root data for one positive root.
#[derive(Debug, Clone)]
pub struct PositiveRoot {
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    /// Coordinates in the orthonormal Cartan basis.
    pub vector: Vec<f64>,
    /// Coefficients of the coroot in the lattice basis.
    pub coroot: Vec<i64>,
    /// Basis indices `(u, v)` of the real root plane, `e_alpha = (u - i v)/sqrt 2`.
    pub plane: (usize, usize),
    /// Components of `e_alpha` in the orthonormal basis of `g`.
    pub plus: Vec<Complex64>,
    /// Components of `e_{-alpha}`, the complex conjugate of `e_alpha`.
    pub minus: Vec<Complex64>,
}

/// A Weyl group element acting on fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: Vec<i64>,
    pub sign: i64,
}

impl WeylElement {
    pub fn apply(&self, weight: &Weight) -> Weight {
        let r = weight.rank();
        Weight::new(
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| self.matrix[i * r + j] * weight.coords[j])
                        .sum()
                })
                .collect(),
        )
    }
}

/// Root system, weight lattice, structure constants and Cartan-Weyl data for
/// one supported group, with the basic inner product `<X, Y> = -tr(XY)/(4 pi^2)`
/// in the defining representation of each factor.
///
/// The orthonormal basis of `g` lists the Cartan directions first
/// (indices `0..rank`), followed by the real root planes `(u_alpha, v_alpha)`
/// in the order of [`GroupData::positive_roots`].
#[derive(Debug, Clone)]
pub struct GroupData {
    spec: GroupSpec,
    rank: usize,
    dim: usize,
    gram: DMatrix<f64>,
    weight_gram: DMatrix<f64>,
    fundamental_vectors: Vec<Vec<f64>>,
    lattice_basis: Vec<Vec<f64>>,
    semisimple: Vec<bool>,
    positive_roots: Vec<PositiveRoot>,
    simple_roots: Vec<usize>,
    rho: Weight,
    structure: Vec<f64>,
    basis_matrices: Vec<DMatrix<Complex64>>,
    weyl: Vec<WeylElement>,
}

fn basic_inner(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> f64 {
    -(x * y).trace().re / (4.0 * PI * PI)
}

impl GroupData {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        if spec.factors.is_empty() {
            return Err(Error::UnsupportedGroup(String::new()));
        }
        let rank = spec.rank();
        let dim = spec.dim();
        let size: usize = spec.factors.iter().map(Factor::matrix_size).sum();
        let block = |offset: usize, local: DMatrix<Complex64>| {
            let mut m = DMatrix::<Complex64>::zeros(size, size);
            m.view_mut((offset, offset), local.shape())
                .copy_from(&local);
            m
        };

        let mut cartan: Vec<DMatrix<Complex64>> = Vec::with_capacity(rank);
        let mut planes: Vec<(DMatrix<Complex64>, DMatrix<Complex64>)> = Vec::new();
        let mut root_entries: Vec<(usize, usize, usize)> = Vec::new();
        let mut simple_entries: Vec<usize> = Vec::new();
        let mut semisimple = Vec::with_capacity(rank);
        let mut factor_ranges = Vec::new();

        let mut offset = 0;
        for factor in &spec.factors {
            let n = factor.matrix_size();
            let first = cartan.len();
            match *factor {
                Factor::Torus(n) => {
                    for k in 0..n {
                        let mut d = DMatrix::<Complex64>::zeros(n, n);
                        d[(k, k)] = Complex64::new(0.0, 2.0 * PI);
                        cartan.push(block(offset, d));
                        semisimple.push(false);
                    }
                }
                Factor::SpecialUnitary(n) => {
                    // Gram-Schmidt on diag(i, -i, 0, ...), diag(0, i, -i, ...), ...
                    let mut local: Vec<DMatrix<Complex64>> = Vec::new();
                    for k in 0..n - 1 {
                        let mut d = DMatrix::<Complex64>::zeros(n, n);
                        d[(k, k)] = Complex64::i();
                        d[(k + 1, k + 1)] = -Complex64::i();
                        for prev in &local {
                            let c = basic_inner(&d, prev);
                            d -= prev * Complex64::from(c);
                        }
                        let norm = basic_inner(&d, &d).sqrt();
                        d /= Complex64::from(norm);
                        local.push(d);
                    }
                    for d in local {
                        cartan.push(block(offset, d));
                        semisimple.push(true);
                    }
                    for i in 0..n {
                        for j in i + 1..n {
                            let mut u = DMatrix::<Complex64>::zeros(n, n);
                            let mut v = DMatrix::<Complex64>::zeros(n, n);
                            u[(i, j)] = Complex64::from(SQRT_2 * PI);
                            u[(j, i)] = Complex64::from(-SQRT_2 * PI);
                            v[(i, j)] = Complex64::new(0.0, SQRT_2 * PI);
                            v[(j, i)] = Complex64::new(0.0, SQRT_2 * PI);
                            planes.push((block(offset, u), block(offset, v)));
                            root_entries.push((offset + i, offset + j, first));
                            if j == i + 1 {
                                simple_entries.push(planes.len() - 1);
                            }
                        }
                    }
                }
            }
            factor_ranges.push((first, cartan.len(), *factor));
            offset += n;
        }

        let mut basis_matrices = cartan.clone();
        for (u, v) in &planes {
            basis_matrices.push(u.clone());
            basis_matrices.push(v.clone());
        }
        debug_assert_eq!(basis_matrices.len(), dim);

        // Root vectors in orthonormal Cartan coordinates from the adjoint
        // eigenvalue 2 pi i <alpha, e_k> on the matrix unit E_ij.
        let root_vectors: Vec<Vec<f64>> = root_entries
            .iter()
            .map(|&(i, j, _)| {
                cartan
                    .iter()
                    .map(|c| ((c[(i, i)] - c[(j, j)]) / Complex64::new(0.0, 2.0 * PI)).re)
                    .collect()
            })
            .collect();

        // Lattice basis: simple coroots 2 alpha/<alpha, alpha> on simple factors,
        // the standard basis on torus factors; fundamental weights are dual to it.
        let mut lattice_basis = vec![vec![0.0; rank]; rank];
        let mut fundamental_vectors = vec![vec![0.0; rank]; rank];
        let mut simple_roots = vec![usize::MAX; rank];
        for &(first, last, factor) in &factor_ranges {
            match factor {
                Factor::Torus(_) => {
                    for k in first..last {
                        lattice_basis[k][k] = 1.0;
                        fundamental_vectors[k][k] = 1.0;
                    }
                }
                Factor::SpecialUnitary(_) => {
                    let local_simple: Vec<usize> = simple_entries
                        .iter()
                        .copied()
                        .filter(|&r| root_entries[r].2 == first)
                        .collect();
                    let r = last - first;
                    let mut coroots = DMatrix::<f64>::zeros(r, r);
                    for (col, &root) in local_simple.iter().enumerate() {
                        let a = &root_vectors[root];
                        let len2: f64 = a.iter().map(|x| x * x).sum();
                        for row in 0..r {
                            coroots[(row, col)] = 2.0 * a[first + row] / len2;
                        }
                        simple_roots[first + col] = root;
                    }
                    let inv_t = coroots
                        .transpose()
                        .try_inverse()
                        .expect("simple coroots are linearly independent");
                    for col in 0..r {
                        for row in 0..r {
                            lattice_basis[first + col][first + row] = coroots[(row, col)];
                            // columns of (B^T)^{-1}
                            fundamental_vectors[first + col][first + row] = inv_t[(row, col)];
                        }
                    }
                }
            }
        }

        let weight_gram = DMatrix::from_fn(rank, rank, |i, j| {
            dot(&fundamental_vectors[i], &fundamental_vectors[j])
        });

        let positive_roots: Vec<PositiveRoot> = root_vectors
            .iter()
            .enumerate()
            .map(|(idx, vector)| {
                let len2 = dot(vector, vector);
                let weight = Weight::new(
                    lattice_basis
                        .iter()
                        .map(|b| dot(vector, b).round() as i64)
                        .collect(),
                );
                let coroot = fundamental_vectors
                    .iter()
                    .map(|w| (2.0 * dot(vector, w) / len2).round() as i64)
                    .collect();
                let u = rank + 2 * idx;
                let v = u + 1;
                let s = 1.0 / SQRT_2;
                let mut plus = vec![Complex64::from(0.0); dim];
                let mut minus = vec![Complex64::from(0.0); dim];
                plus[u] = Complex64::from(s);
                plus[v] = Complex64::new(0.0, -s);
                minus[u] = Complex64::from(s);
                minus[v] = Complex64::new(0.0, s);
                PositiveRoot {
                    weight,
                    vector: vector.clone(),
                    coroot,
                    plane: (u, v),
                    plus,
                    minus,
                }
            })
            .collect();

        let rho = Weight::new(semisimple.iter().map(|&s| i64::from(s)).collect());

        let mut structure = vec![0.0; dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let br = &basis_matrices[a] * &basis_matrices[b]
                    - &basis_matrices[b] * &basis_matrices[a];
                for c in 0..dim {
                    let val = basic_inner(&br, &basis_matrices[c]);
                    structure[(a * dim + b) * dim + c] = if val.abs() < 1e-13 { 0.0 } else { val };
                }
            }
        }

        let weyl = weyl_group(rank, &simple_roots, &positive_roots);

        Ok(GroupData {
            spec: spec.clone(),
            rank,
            dim,
            gram: DMatrix::identity(rank, rank),
            weight_gram,
            fundamental_vectors,
            lattice_basis,
            semisimple,
            positive_roots,
            simple_roots: simple_roots
                .into_iter()
                .filter(|&r| r != usize::MAX)
                .collect(),
            rho,
            structure,
            basis_matrices,
            weyl,
        })
    }

    /// Parses a group specification string and builds its data.
    pub fn from_name(name: &str) -> Result<Self> {
        GroupData::build(&GroupSpec::parse(name)?)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.positive_roots.is_empty()
    }

    /// True for the group SU(2) itself (not a product).
    pub fn is_su2(&self) -> bool {
        self.spec.factors == [Factor::SpecialUnitary(2)]
    }

    /// Inner product on `t` in the orthonormal Cartan basis.
    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Inner products `<w_i, w_j>` of the fundamental weights.
    pub fn weight_gram(&self) -> &DMatrix<f64> {
        &self.weight_gram
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &PositiveRoot> {
        self.simple_roots.iter().map(|&i| &self.positive_roots[i])
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        (0..self.rank)
            .map(|i| {
                let mut c = vec![0; self.rank];
                c[i] = 1;
                Weight::new(c)
            })
            .collect()
    }

    /// Whether coordinate `i` belongs to the semisimple part.
    pub fn is_semisimple_coord(&self, i: usize) -> bool {
        self.semisimple[i]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_vector(&self) -> Vec<f64> {
        self.weight_vector(&self.rho)
    }

    /// `f_abc = <[e_a, e_b], e_c>`.
    pub fn f(&self, a: usize, b: usize, c: usize) -> f64 {
        self.structure[(a * self.dim + b) * self.dim + c]
    }

    pub fn structure_constants(&self) -> &[f64] {
        &self.structure
    }

    pub fn basis_matrices(&self) -> &[DMatrix<Complex64>] {
        &self.basis_matrices
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn lattice_basis(&self) -> &[Vec<f64>] {
        &self.lattice_basis
    }

    pub fn is_dominant(&self, weight: &Weight) -> bool {
        weight
            .coords
            .iter()
            .zip(&self.semisimple)
            .all(|(&c, &ss)| !ss || c >= 0)
    }

    pub fn check_dominant(&self, weight: &Weight) -> Result<()> {
        if weight.rank() != self.rank {
            return Err(Error::Mismatch(format!(
                "weight of rank {} for a group of rank {}",
                weight.rank(),
                self.rank
            )));
        }
        if self.is_dominant(weight) {
            Ok(())
        } else {
            Err(Error::NotDominant(weight.coords.clone()))
        }
    }

    /// A weight as a vector in the orthonormal Cartan basis.
    pub fn weight_vector(&self, weight: &Weight) -> Vec<f64> {
        let mut v = vec![0.0; self.rank];
        for (c, w) in weight.coords.iter().zip(&self.fundamental_vectors) {
            for (vi, wi) in v.iter_mut().zip(w) {
                *vi += *c as f64 * wi;
            }
        }
        v
    }

    /// `<lambda, mu>` for weights given in fundamental coordinates.
    pub fn weight_inner(&self, a: &Weight, b: &Weight) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a.coords[i] as f64 * self.weight_gram[(i, j)] * b.coords[j] as f64;
            }
        }
        s
    }

    /// The torus element `exp(mu)` for `mu` in the orthonormal Cartan basis.
    pub fn torus_exp(&self, mu: &[f64]) -> TorusElement {
        TorusElement::new(
            self.fundamental_vectors
                .iter()
                .map(|w| dot(w, mu))
                .collect(),
        )
    }

    /// Orthonormal-basis vector of `g` for a Cartan vector `mu`.
    pub fn embed_cartan(&self, mu: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.dim];
        x[..self.rank].copy_from_slice(mu);
        x
    }

    /// `ad(xi)` as a real `dim x dim` matrix, `ad(xi) e_b = sum_c xi_a f_abc e_c`.
    pub fn ad_matrix(&self, xi: &[f64]) -> DMatrix<f64> {
        let d = self.dim;
        DMatrix::from_fn(d, d, |c, b| (0..d).map(|a| xi[a] * self.f(a, b, c)).sum())
    }

    /// The Lie algebra element in the faithful block-diagonal representation.
    pub fn lie_matrix(&self, xi: &[f64]) -> DMatrix<Complex64> {
        let n = self.basis_matrices[0].nrows();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (x, e) in xi.iter().zip(&self.basis_matrices) {
            m += e * Complex64::from(*x);
        }
        m
    }

    /// Coordinates of a matrix in the orthonormal basis of `g`.
    pub fn lie_coords(&self, m: &DMatrix<Complex64>) -> Vec<f64> {
        self.basis_matrices
            .iter()
            .map(|e| basic_inner(m, e))
            .collect()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn weyl_group(rank: usize, simple: &[usize], roots: &[PositiveRoot]) -> Vec<WeylElement> {
    let identity: Vec<i64> = (0..rank * rank)
        .map(|k| i64::from(k / rank == k % rank))
        .collect();
    // s_i(lambda) = lambda - lambda_i alpha_i in fundamental coordinates.
    let generators: Vec<Vec<i64>> = simple
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != usize::MAX)
        .map(|(i, &r)| {
            let alpha = &roots[r].weight.coords;
            let mut m = identity.clone();
            for row in 0..rank {
                m[row * rank + i] -= alpha[row];
            }
            m
        })
        .collect();

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back((identity, 1i64));
    while let Some((m, sign)) = queue.pop_front() {
        for g in &generators {
            let prod = matmul(g, &m, rank);
            if seen.insert(prod.clone()) {
                queue.push_back((prod, -sign));
            }
        }
        out.push(WeylElement { matrix: m, sign });
    }
    out
}

fn matmul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0 {
                for j in 0..n {
                    c[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    c
}

#[cfg(test)]
fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_groups() -> Vec<GroupData> {
        ["su2", "su3", "t1", "t2", "su2xt1", "su2xsu3", "t4"]
            .iter()
            .map(|n| GroupData::from_name(n).unwrap())
            .collect()
    }

    #[test]
    fn su2_basic_normalization() {
        let g = GroupData::from_name("su2").unwrap();
        assert_eq!((g.rank(), g.dim()), (1, 3));
        assert_eq!(g.positive_roots().len(), 1);
        let alpha = &g.positive_roots()[0];
        assert!((dot(&alpha.vector, &alpha.vector) - 2.0).abs() < 1e-12);
        assert_eq!(alpha.weight, Weight::new(vec![2]));
        // rho = alpha / 2
        let rho = g.rho_vector();
        assert!((rho[0] - alpha.vector[0] / 2.0).abs() < 1e-12);
        assert_eq!(g.weyl_group().len(), 2);
    }

    #[test]
    fn torus_has_no_roots() {
        let g = GroupData::from_name("t2").unwrap();
        assert_eq!((g.rank(), g.dim()), (2, 2));
        assert!(g.positive_roots().is_empty());
        assert!(g.rho().is_zero());
        assert!(g.structure_constants().iter().all(|&f| f == 0.0));
        assert_eq!(g.weyl_group().len(), 1);
    }

    #[test]
    fn su3_rho_is_sum_of_fundamental_weights() {
        let g = GroupData::from_name("su3").unwrap();
        assert_eq!(g.positive_roots().len(), 3);
        assert_eq!(g.weyl_group().len(), 6);
        let sum = g
            .positive_roots()
            .iter()
            .fold(Weight::zero(2), |acc, r| &acc + &r.weight);
        assert_eq!(sum, g.rho().scale(2));
        assert_eq!(g.rho(), &Weight::new(vec![1, 1]));
        for r in g.positive_roots() {
            assert!((dot(&r.vector, &r.vector) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orthonormal_basis_has_identity_gram() {
        for g in all_groups() {
            for (a, ea) in g.basis_matrices().iter().enumerate() {
                for (b, eb) in g.basis_matrices().iter().enumerate() {
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!(
                        (basic_inner(ea, eb) - expected).abs() < 1e-12,
                        "{} {a} {b}",
                        g.name()
                    );
                }
            }
        }
    }

    #[test]
    fn structure_constants_antisymmetric_and_jacobi() {
        for g in all_groups() {
            let d = g.dim();
            let mut worst: f64 = 0.0;
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        worst = worst.max((g.f(a, b, c) + g.f(b, a, c)).abs());
                        worst = worst.max((g.f(a, b, c) + g.f(a, c, b)).abs());
                    }
                }
            }
            assert!(worst < 1e-12, "{} antisymmetry {worst}", g.name());
            // Jacobi: sum_e f_abe f_ecd + f_bce f_ead + f_cae f_ebd = 0
            let mut jac: f64 = 0.0;
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        for dd in 0..d {
                            let s: f64 = (0..d)
                                .map(|e| {
                                    g.f(a, b, e) * g.f(e, c, dd)
                                        + g.f(b, c, e) * g.f(e, a, dd)
                                        + g.f(c, a, e) * g.f(e, b, dd)
                                })
                                .sum();
                            jac = jac.max(s.abs());
                        }
                    }
                }
            }
            assert!(jac < 1e-12 * 1e3, "{} jacobi {jac}", g.name());
        }
    }

    #[test]
    fn cartan_weyl_normalization() {
        for g in all_groups() {
            let mut worst: f64 = 0.0;
            for root in g.positive_roots() {
                let to_matrix = |c: &[Complex64]| {
                    c.iter().zip(g.basis_matrices()).fold(
                        DMatrix::<Complex64>::zeros(
                            g.basis_matrices()[0].nrows(),
                            g.basis_matrices()[0].nrows(),
                        ),
                        |acc, (z, e)| acc + e * *z,
                    )
                };
                let ep = to_matrix(&root.plus);
                let em = to_matrix(&root.minus);
                // [e_alpha, e_-alpha] = 2 pi i alpha
                let br = &ep * &em - &em * &ep;
                let alpha =
                    g.lie_matrix(&g.embed_cartan(&root.vector)) * Complex64::new(0.0, 2.0 * PI);
                worst = worst.max(max_abs(&(br - alpha)));
                // e_alpha . e_-alpha = 1 (complex bilinear extension)
                let pairing = -(&ep * &em).trace() / (4.0 * PI * PI);
                worst = worst.max((pairing - 1.0).norm());
                // [xi, e_alpha] = 2 pi i <alpha, xi> e_alpha for a Cartan xi
                let xi: Vec<f64> = (0..g.rank()).map(|k| 0.3 + 0.17 * k as f64).collect();
                let x = g.lie_matrix(&g.embed_cartan(&xi));
                let lhs = &x * &ep - &ep * &x;
                let rhs = &ep * Complex64::new(0.0, 2.0 * PI * dot(&root.vector, &xi));
                worst = worst.max(max_abs(&(lhs - rhs)));
            }
            assert!(worst < 1e-12, "{} {worst}", g.name());
        }
    }

    #[test]
    fn lattice_dual_to_fundamental_weights() {
        for g in all_groups() {
            for (i, w) in g.fundamental_weights().iter().enumerate() {
                let wv = g.weight_vector(w);
                for (j, b) in g.lattice_basis().iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((dot(&wv, b) - expected).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn weyl_group_orders_and_signs() {
        let g = GroupData::from_name("su2xsu3").unwrap();
        assert_eq!(g.weyl_group().len(), 12);
        let total: i64 = g.weyl_group().iter().map(|w| w.sign).sum();
        assert_eq!(total, 0);
        // W permutes the roots
        let g = GroupData::from_name("su3").unwrap();
        for w in g.weyl_group() {
            for r in g.positive_roots() {
                let image = w.apply(&r.weight);
                assert!(g
                    .positive_roots()
                    .iter()
                    .any(|s| s.weight == image || s.weight == -&image));
            }
        }
    }
}
