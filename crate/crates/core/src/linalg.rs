//! Dense complex linear algebra shared by every numeric module.
//!
//! Matrices are dense `nalgebra` matrices over `Complex64`. Norms and spectra
//! use dense decompositions applied per connected component of the sparsity
//! pattern.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Default relative tolerance for verification residuals.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative eigenvalue threshold separating the kernel from the range of a Gram matrix.
pub const KERNEL_TOL: f64 = 1e-9;

const EIG_MAX_ITER: usize = 10_000;

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

/// Largest absolute entry.
pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn basis_vector(dim: usize, i: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(dim);
    v[i] = C64::new(1.0, 0.0);
    v
}

/// Eigenvalues and derived quantities of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    pub rank: usize,
    pub operator_norm: f64,
}

impl SpectralReport {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// One eigenpair of a Hermitian matrix; the vector has the full ambient length.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: ComplexVector,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components of a square matrix's symmetric sparsity pattern.
///
/// Every index appears in exactly one component; components are sorted by their
/// smallest index and each component's indices are ascending.
pub fn symmetric_components(a: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let mut uf = UnionFind::new(n);
    for c in 0..n {
        for r in 0..n {
            if r != c && a[(r, c)] != C64::new(0.0, 0.0) {
                uf.union(r, c);
            }
        }
    }
    group(n, |i| uf.find(i))
}

fn group(n: usize, mut root: impl FnMut(usize) -> usize) -> Vec<Vec<usize>> {
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = root(i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(i);
    }
    out
}

/// Components of the bipartite row/column graph of the nonzero entries.
/// Rows and columns without nonzero entries are dropped.
fn bipartite_components(a: &ComplexMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (nr, nc) = a.shape();
    let mut uf = UnionFind::new(nr + nc);
    let mut touched = vec![false; nr + nc];
    for c in 0..nc {
        for r in 0..nr {
            if a[(r, c)] != C64::new(0.0, 0.0) {
                uf.union(r, nr + c);
                touched[r] = true;
                touched[nr + c] = true;
            }
        }
    }
    let mut slot = vec![usize::MAX; nr + nc];
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 0..nr + nc {
        if !touched[i] {
            continue;
        }
        let r = uf.find(i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push((Vec::new(), Vec::new()));
        }
        if i < nr {
            out[slot[r]].0.push(i);
        } else {
            out[slot[r]].1.push(i - nr);
        }
    }
    out
}

pub fn submatrix(a: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows.len(), cols.len(), |i, j| a[(rows[i], cols[j])])
}

fn hermitian_eigenvalues_dense(b: &ComplexMatrix) -> Option<Vec<f64>> {
    if b.nrows() == 1 {
        return Some(vec![b[(0, 0)].re]);
    }
    SymmetricEigen::try_new(b.clone(), f64::EPSILON, EIG_MAX_ITER)
        .map(|e| e.eigenvalues.iter().copied().collect())
}

fn is_hermitian_exact(b: &ComplexMatrix) -> bool {
    let scale = max_abs(b).max(f64::MIN_POSITIVE);
    let n = b.nrows();
    for c in 0..n {
        for r in 0..=c {
            if (b[(r, c)] - b[(c, r)].conj()).norm() > 1e-14 * scale {
                return false;
            }
        }
    }
    true
}

fn block_norm(b: &ComplexMatrix) -> f64 {
    let (nr, nc) = b.shape();
    if nr == 1 || nc == 1 {
        return b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    if nr == nc && is_hermitian_exact(b) {
        if let Some(ev) = hermitian_eigenvalues_dense(b) {
            return ev.iter().fold(0.0, |m, l| m.max(l.abs()));
        }
    }
    // Gram of the smaller side.
    let gram = if nr <= nc {
        b * b.adjoint()
    } else {
        b.adjoint() * b
    };
    if let Some(ev) = hermitian_eigenvalues_dense(&gram) {
        return ev.iter().fold(0.0_f64, |m, &l| m.max(l)).max(0.0).sqrt();
    }
    if let Some(svd) = SVD::try_new(b.clone(), false, false, f64::EPSILON, EIG_MAX_ITER) {
        return svd.singular_values.max();
    }
    power_norm(b, 500)
}

/// Power iteration on `A*A`; last-resort estimate when dense decompositions fail.
fn power_norm(a: &ComplexMatrix, iters: usize) -> f64 {
    let n = a.ncols();
    let mut v = ComplexVector::from_fn(n, |i, _| C64::new(1.0 + (i as f64).sin() * 0.25, 0.0));
    let mut est = 0.0;
    for _ in 0..iters {
        let nv = v.norm();
        if nv == 0.0 {
            return 0.0;
        }
        v /= C64::new(nv, 0.0);
        let w = a * &v;
        est = w.norm();
        v = a.adjoint() * w;
    }
    est
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    bipartite_components(a)
        .iter()
        .map(|(rows, cols)| block_norm(&submatrix(a, rows, cols)))
        .fold(0.0, f64::max)
}

/// `‖A − A*‖`.
pub fn hermitian_residual(a: &ComplexMatrix) -> f64 {
    if a.nrows() != a.ncols() {
        return f64::INFINITY;
    }
    operator_norm(&(a - a.adjoint()))
}

fn check_hermitian(a: &ComplexMatrix, tol: f64) -> Result<()> {
    let residual = hermitian_residual(a);
    if residual > tol * max_abs(a).max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Eigendecomposition grouped by connected component of the sparsity pattern.
///
/// Components come in order of their smallest index; within a component the
/// pairs are sorted by descending eigenvalue.
pub fn hermitian_eigenpairs_by_component(
    a: &ComplexMatrix,
    tol: f64,
) -> Result<Vec<Vec<EigenPair>>> {
    check_hermitian(a, tol)?;
    let n = a.nrows();
    let mut out = Vec::new();
    for comp in symmetric_components(a) {
        let b = submatrix(a, &comp, &comp);
        if comp.len() == 1 {
            out.push(vec![EigenPair {
                value: b[(0, 0)].re,
                vector: basis_vector(n, comp[0]),
            }]);
            continue;
        }
        let b = (&b + b.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::try_new(b, f64::EPSILON, EIG_MAX_ITER)
            .ok_or_else(|| Error::Invalid("Hermitian eigensolver did not converge".into()))?;
        let mut pairs: Vec<EigenPair> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &value)| {
                let mut vector = ComplexVector::zeros(n);
                for (i, &idx) in comp.iter().enumerate() {
                    vector[idx] = eig.eigenvectors[(i, k)];
                }
                EigenPair { value, vector }
            })
            .collect();
        pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
        out.push(pairs);
    }
    Ok(out)
}

/// Full eigendecomposition of a Hermitian matrix, sorted by descending eigenvalue.
pub fn hermitian_eigenpairs(a: &ComplexMatrix, tol: f64) -> Result<Vec<EigenPair>> {
    let mut pairs: Vec<EigenPair> = hermitian_eigenpairs_by_component(a, tol)?
        .into_iter()
        .flatten()
        .collect();
    pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
    Ok(pairs)
}

pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<SpectralReport> {
    check_hermitian(a, tol)?;
    let mut eigenvalues = Vec::with_capacity(a.nrows());
    for comp in symmetric_components(a) {
        let b = submatrix(a, &comp, &comp);
        let b = (&b + b.adjoint()) * C64::new(0.5, 0.0);
        let ev = hermitian_eigenvalues_dense(&b)
            .ok_or_else(|| Error::Invalid("Hermitian eigensolver did not converge".into()))?;
        eigenvalues.extend(ev);
    }
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    let operator_norm = eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let rank = eigenvalues
        .iter()
        .filter(|l| l.abs() > tol * operator_norm)
        .count();
    Ok(SpectralReport {
        eigenvalues,
        rank,
        operator_norm,
    })
}

/// All singular values, descending.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let mut out = Vec::new();
    for (rows, cols) in bipartite_components(a) {
        let b = submatrix(a, &rows, &cols);
        match SVD::try_new(b.clone(), false, false, f64::EPSILON, EIG_MAX_ITER) {
            Some(svd) => out.extend(svd.singular_values.iter().copied()),
            None => out.push(block_norm(&b)),
        }
    }
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Number of singular values strictly above `tol` times the largest one.
pub fn rank(a: &ComplexMatrix, tol: f64) -> usize {
    let sv = singular_values(a);
    let Some(&top) = sv.first() else {
        return 0;
    };
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// `max(0, −λ_min)` of a Hermitian matrix.
pub fn psd_residual(a: &ComplexMatrix) -> Result<f64> {
    let report = hermitian_eig(a, DEFAULT_TOL)?;
    Ok((-report.min_eigenvalue()).max(0.0))
}

/// `‖U*U − I‖`.
pub fn unitary_residual(u: &ComplexMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    operator_norm(&(u.adjoint() * u - identity(u.ncols())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn flip(d: usize) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                s[(j * d + i, i * d + j)] = c64(1.0, 0.0);
            }
        }
        s
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, c, |_, _| {
            c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    #[test]
    fn kron_identity_cases() {
        assert_eq!(kron(&identity(2), &identity(2)), identity(4));
        let a = ComplexMatrix::from_fn(3, 2, |i, j| c64(i as f64, j as f64 + 1.0));
        assert_eq!(kron(&a, &identity(1)), a);
    }

    #[test]
    fn kron_matches_index_loop() {
        let s = flip(2);
        let k = kron(&s, &s);
        assert_eq!(k.shape(), (16, 16));
        for i in 0..4 {
            for j in 0..4 {
                for p in 0..4 {
                    for q in 0..4 {
                        assert_eq!(k[(i * 4 + p, j * 4 + q)], s[(i, j)] * s[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_adjoint_and_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 2, 3);
        let b = random_matrix(&mut rng, 3, 2);
        let c = random_matrix(&mut rng, 2, 2);
        assert_eq!(adjoint(&kron(&a, &b)), kron(&adjoint(&a), &adjoint(&b)));
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        assert!(max_abs(&(left - right)) < 1e-15);
    }

    #[test]
    fn norms_of_simple_operators() {
        assert_eq!(operator_norm(&ComplexMatrix::zeros(3, 3)), 0.0);
        assert!((operator_norm(&identity(5)) - 1.0).abs() < 1e-14);
        let m = identity(4) + flip(2);
        assert!((operator_norm(&m) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn norm_agrees_with_eigenvalues_for_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 5, 9] {
            let a = random_matrix(&mut rng, n, n);
            let h = &a + a.adjoint();
            let report = hermitian_eig(&h, DEFAULT_TOL).unwrap();
            let top = report.eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
            assert!((operator_norm(&h) - top).abs() < 1e-10);
            let svd = SVD::new(h.clone(), false, false).singular_values.max();
            assert!((operator_norm(&h) - svd).abs() < 1e-10);
        }
    }

    #[test]
    fn norm_of_rectangular_matches_svd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 7, 4);
        let svd = SVD::new(a.clone(), false, false).singular_values.max();
        assert!((operator_norm(&a) - svd).abs() < 1e-12);
    }

    #[test]
    fn spectral_basics() {
        let d = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![c64(1.0, 0.0), c64(3.0, 0.0)]));
        let r = hermitian_eig(&d, DEFAULT_TOL).unwrap();
        assert_eq!(r.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(r.rank, 2);
        assert_eq!(rank(&ComplexMatrix::zeros(4, 4), 1e-9), 0);
        assert_eq!(psd_residual(&(-identity(3))).unwrap(), 1.0);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut a = identity(2);
        a[(0, 1)] = c64(1.0, 0.0);
        assert!(matches!(hermitian_eig(&a, DEFAULT_TOL), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigenpairs_reconstruct_block_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 3, 3);
        let mut h = ComplexMatrix::zeros(6, 6);
        let blk = &a + a.adjoint();
        for (i, &r) in [0, 2, 5].iter().enumerate() {
            for (j, &c) in [0, 2, 5].iter().enumerate() {
                h[(r, c)] = blk[(i, j)];
            }
        }
        h[(1, 1)] = c64(4.0, 0.0);
        let pairs = hermitian_eigenpairs(&h, DEFAULT_TOL).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(6, 6);
        for p in &pairs {
            rebuilt += &p.vector * p.vector.adjoint() * C64::new(p.value, 0.0);
        }
        assert!(max_abs(&(rebuilt - h)) < 1e-12);
        assert!(pairs.windows(2).all(|w| w[0].value >= w[1].value));
    }

    #[test]
    fn rank_counts_relative_singular_values() {
        let v = ComplexVector::from_vec(vec![c64(1.0, 0.0), c64(2.0, 1.0), c64(0.0, 0.5)]);
        let rank_one = &v * v.adjoint();
        assert_eq!(rank(&rank_one, 1e-9), 1);
        assert_eq!(rank(&identity(4), 1e-9), 4);
    }
}
