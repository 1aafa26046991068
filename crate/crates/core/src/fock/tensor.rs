//! `R^(n)`, `P^(n)` and local leg operators on `H^{⊗n}`.
//!
//! Tensor basis is lexicographic with leg 1 most significant.

use crate::catalog::YangBaxterOp;
use crate::error::{Error, Result};
use crate::linalg::{
    c64, hermitian_residual, identity, kron, operator_norm, psd_residual, submatrix,
    symmetric_components, ComplexMatrix, C64,
};

/// Nonzero entries `(row, col, value)` of a two-leg operator.
#[derive(Debug, Clone)]
pub struct LocalOp {
    pub d: usize,
    pub entries: Vec<(usize, usize, C64)>,
}

impl LocalOp {
    pub fn new(t: &YangBaxterOp) -> Self {
        Self::from_matrix(t.d(), &t.matrix)
    }

    pub fn from_matrix(d: usize, m: &ComplexMatrix) -> Self {
        let mut entries = Vec::new();
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let v = m[(r, c)];
                if v != c64(0.0, 0.0) {
                    entries.push((r, c, v));
                }
            }
        }
        Self { d, entries }
    }

    /// `T_k x` for every column of `x`, where `T_k` acts on legs `k, k+1` (1-based) of `n` legs.
    pub fn apply(&self, n: usize, k: usize, x: &ComplexMatrix) -> ComplexMatrix {
        assert!(k >= 1 && k < n, "leg {k} out of range for {n} legs");
        let d = self.d;
        let stride = d.pow((n - k - 1) as u32);
        let head = d.pow((k - 1) as u32);
        let block = d * d * stride;
        let mut y = ComplexMatrix::zeros(x.nrows(), x.ncols());
        for col in 0..x.ncols() {
            let xs = x.column(col);
            let mut ys = y.column_mut(col);
            for h in 0..head {
                let base = h * block;
                for &(r, c, v) in &self.entries {
                    let (ro, co) = (base + r * stride, base + c * stride);
                    for l in 0..stride {
                        ys[ro + l] += v * xs[co + l];
                    }
                }
            }
        }
        y
    }
}

/// `n̲! = Π_{k=1..n} (1 + q + … + q^{k−1})`.
pub fn hecke_factorial(q: f64, n: usize) -> f64 {
    let mut out = 1.0;
    let mut qint = 0.0;
    let mut qpow = 1.0;
    for _ in 0..n {
        qint += qpow;
        qpow *= q;
        out *= qint;
    }
    out
}

/// `R^(n) = I + T₁ + T₁T₂ + … + T₁⋯T_{n−1}`.
pub fn build_r(t: &YangBaxterOp, n: usize) -> ComplexMatrix {
    assert!(n >= 1);
    let local = LocalOp::new(t);
    let dim = t.d().pow(n as u32);
    let mut m = identity(dim);
    for k in (1..n).rev() {
        m = local.apply(n, k, &m);
        for i in 0..dim {
            m[(i, i)] += c64(1.0, 0.0);
        }
    }
    m
}

/// `R^(n)` as the explicit sum of products.
pub fn build_r_explicit(t: &YangBaxterOp, n: usize) -> ComplexMatrix {
    let d = t.d();
    let dim = d.pow(n as u32);
    let legs: Vec<ComplexMatrix> = (1..n)
        .map(|k| {
            let left = identity(d.pow((k - 1) as u32));
            let right = identity(d.pow((n - k - 1) as u32));
            kron(&kron(&left, &t.matrix), &right)
        })
        .collect();
    let mut sum = identity(dim);
    let mut prod = identity(dim);
    for leg in &legs {
        prod = &prod * leg;
        sum += &prod;
    }
    sum
}

/// `P^(1) = I`, `P^(n+1) = R^(n+1)*(I ⊗ P^(n))`.
pub fn build_p(t: &YangBaxterOp, n: usize) -> ComplexMatrix {
    build_p_sequence(t, n).pop().expect("n ≥ 1")
}

/// `[P^(1), …, P^(n)]`.
pub fn build_p_sequence(t: &YangBaxterOp, n: usize) -> Vec<ComplexMatrix> {
    assert!(n >= 1);
    let d = t.d();
    let local = LocalOp::new(t);
    let mut out = vec![identity(d)];
    for m in 1..n {
        let mut z = kron(&identity(d), out.last().expect("nonempty"));
        let mut sum = z.clone();
        for k in 1..=m {
            z = local.apply(m + 1, k, &z);
            sum += &z;
        }
        out.push(sum);
    }
    out
}

/// `‖P^(n+1) − (I⊗P^(n))R^(n+1)‖`, or `None` above `max_dim`.
pub fn p_recursion_residual(t: &YangBaxterOp, n: usize, max_dim: usize) -> Option<f64> {
    let d = t.d();
    if d.pow((n + 1) as u32) > max_dim {
        return None;
    }
    let ps = build_p_sequence(t, n + 1);
    let other = kron(&identity(d), &ps[n - 1]) * build_r(t, n + 1);
    Some(operator_norm(&(&ps[n] - other)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsquareReport {
    pub n: usize,
    pub factorial: f64,
    pub norm: f64,
    /// `‖P² − n̲!·P‖`.
    pub idempotency: f64,
    pub selfadjoint: f64,
    pub positivity: f64,
}

/// Residuals of `P^(n)` against "`n̲!` times a projection".
pub fn check_psquare(t: &YangBaxterOp, n: usize) -> Result<PsquareReport> {
    if n == 0 {
        return Err(Error::Invalid("particle number must be at least 1".into()));
    }
    let p = build_p(t, n);
    psquare_report(&p, t.hecke_q, n)
}

pub fn psquare_report(p: &ComplexMatrix, q: f64, n: usize) -> Result<PsquareReport> {
    let factorial = hecke_factorial(q, n);
    let mut idempotency: f64 = 0.0;
    for comp in symmetric_components(p) {
        let b = submatrix(p, &comp, &comp);
        let r = &b * &b - &b * c64(factorial, 0.0);
        idempotency = idempotency.max(operator_norm(&r));
    }
    Ok(PsquareReport {
        n,
        factorial,
        norm: operator_norm(p),
        idempotency,
        selfadjoint: hermitian_residual(p),
        positivity: psd_residual(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_standard, Kind, ModeWindow};
    use crate::linalg::{max_abs, rank, KERNEL_TOL};

    fn op(kind: Kind, d: i64) -> YangBaxterOp {
        build_standard(kind, ModeWindow::new(0, d - 1).unwrap())
    }

    #[test]
    fn factorials() {
        for n in 0..8 {
            assert_eq!(hecke_factorial(0.0, n), 1.0);
        }
        assert_eq!(hecke_factorial(1.0, 4), 24.0);
        assert_eq!(hecke_factorial(1.0, 5), 120.0);
        for q in [-1.0, 0.3, 2.0] {
            assert_eq!(hecke_factorial(q, 1), 1.0);
        }
        assert_eq!(hecke_factorial(-1.0, 2), 0.0);
        // [3]_q! at q = 2: 1 · 3 · 7.
        assert_eq!(hecke_factorial(2.0, 3), 21.0);
    }

    #[test]
    fn local_apply_matches_kron() {
        for kind in Kind::ALL {
            let t = op(kind, 3);
            let n = 3;
            let x = ComplexMatrix::from_fn(27, 4, |i, j| c64((i * 7 + j) as f64 % 5.0, j as f64));
            let local = LocalOp::new(&t);
            let t1 = kron(&t.matrix, &identity(3));
            let t2 = kron(&identity(3), &t.matrix);
            assert!(max_abs(&(local.apply(n, 1, &x) - &t1 * &x)) < 1e-12);
            assert!(max_abs(&(local.apply(n, 2, &x) - &t2 * &x)) < 1e-12);
        }
    }

    #[test]
    fn horner_r_matches_explicit_sum() {
        for kind in Kind::ALL {
            for n in 1..=4 {
                let t = op(kind, 2);
                assert!(max_abs(&(build_r(&t, n) - build_r_explicit(&t, n))) < 1e-12);
            }
        }
    }

    #[test]
    fn r_examples() {
        for n in 1..=4 {
            assert_eq!(build_r(&op(Kind::Free, 3), n), identity(3usize.pow(n as u32)));
        }
        let r2 = build_r(&op(Kind::Monotone, 3), 2);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i < j { 1.0 } else { 0.0 };
                assert_eq!(r2[(i * 3 + j, i * 3 + j)], c64(expect, 0.0));
            }
        }
        assert_eq!(hermitian_residual(&r2), 0.0);
        for n in 1..=5 {
            let r = build_r(&op(Kind::Boolean, 2), n);
            let expect = if n % 2 == 1 { 1.0 } else { 0.0 };
            assert_eq!(r, identity(2usize.pow(n as u32)) * c64(expect, 0.0));
        }
    }

    #[test]
    fn p_examples() {
        assert_eq!(max_abs(&build_p(&op(Kind::Boolean, 3), 2)), 0.0);
        let p = build_p(&op(Kind::Monotone, 2), 2);
        assert_eq!(rank(&p, KERNEL_TOL), 1);
        assert_eq!(p[(1, 1)], c64(1.0, 0.0));
        let f = build_p(&op(Kind::Fermi, 3), 3);
        assert!((operator_norm(&f) - 6.0).abs() < 1e-9);
    }

    #[test]
    fn both_recursions_agree() {
        for kind in Kind::ALL {
            for n in 1..=3 {
                let r = p_recursion_residual(&op(kind, 3), n, 1024).unwrap();
                assert!(r < 1e-10, "{kind} n={n}: {r}");
            }
        }
        assert!(p_recursion_residual(&op(Kind::Free, 6), 3, 1024).is_none());
    }

    #[test]
    fn psquare_examples() {
        let m = check_psquare(&op(Kind::Monotone, 3), 3).unwrap();
        assert_eq!((m.idempotency, m.selfadjoint, m.positivity), (0.0, 0.0, 0.0));
        let b = check_psquare(&op(Kind::Bose, 2), 2).unwrap();
        assert!(b.idempotency < 1e-12);
        assert_eq!(b.factorial, 2.0);
        let f = check_psquare(&op(Kind::Free, 2), 3).unwrap();
        assert_eq!(f.idempotency, 0.0);
        assert_eq!(f.norm, 1.0);
    }
}
