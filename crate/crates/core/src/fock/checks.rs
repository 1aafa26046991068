//! Residual checks of the Fock-space identities and bounds.

use serde::Serialize;

use crate::catalog::commutant_residual;
use crate::error::{Error, Result};
use crate::fock::gram::DeformedFock;
use crate::fock::model::{ExplicitBasis, FockModel};
use crate::fock::operator::FockOperator;
use crate::fock::tensor::build_r;
use crate::linalg::{
    identity, kron, operator_norm, ComplexMatrix, ComplexVector, C64, DEFAULT_TOL,
};

/// A computed quantity against the bound it must respect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub bound: f64,
}

impl BoundCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.bound + tol
    }
}

/// `‖a†(f)|_{level n}‖` against `‖R^(n+1)‖^{1/2}‖f‖`.
pub fn creator_norm_check(fock: &DeformedFock, f: &ComplexVector, n: usize) -> Result<BoundCheck> {
    if n >= fock.n_max {
        return Err(Error::Invalid(format!(
            "level {n} has no creator block below N_max = {}",
            fock.n_max
        )));
    }
    let block = fock.creator_block(f, n)?;
    Ok(BoundCheck {
        lhs: operator_norm(&block),
        bound: fock.r_norm(n + 1).sqrt() * f.norm(),
    })
}

/// Window-complete `Σ_{k,l} t_{jl}^{ik} a†_k a_l`.
pub fn wick_sum<M: FockModel + ?Sized>(
    fock: &M,
    t: &crate::catalog::YangBaxterOp,
    i: i64,
    j: i64,
) -> Result<FockOperator> {
    let w = t.window;
    let mut sum = FockOperator::zero(fock.level_dims());
    for k in w.modes() {
        for l in w.modes() {
            let c = t.coefficient(j, l, i, k)?;
            if c != C64::new(0.0, 0.0) {
                let term = &fock.creator(k)? * &fock.annihilator(l)?;
                sum = &sum + &term.scale(c);
            }
        }
    }
    Ok(sum)
}

/// `‖a_i a†_j − Σ t_{jl}^{ik} a†_k a_l − δ_{ij} I‖` on the exactly represented levels.
pub fn wick_residual<M: FockModel + ?Sized>(
    fock: &M,
    t: &crate::catalog::YangBaxterOp,
    i: i64,
    j: i64,
) -> Result<f64> {
    let lhs = &fock.annihilator(i)? * &fock.creator(j)?;
    let mut r = &lhs - &wick_sum(fock, t, i, j)?;
    if i == j {
        r = &r - &fock.identity();
    }
    Ok(r.restrict_levels(fock.exact_top()).norm())
}

/// `‖Σ t_{jl}^{ik} a†_k a_l ξ‖` against `‖T‖‖R^(n)‖‖ξ‖` for `ξ` at level `n`.
pub fn wick_sum_bound_check(
    fock: &DeformedFock,
    i: i64,
    j: i64,
    n: usize,
    xi: &ComplexVector,
) -> Result<BoundCheck> {
    if n == 0 || n > fock.n_max {
        return Err(Error::Invalid(format!("level {n} outside 1..={}", fock.n_max)));
    }
    let norm = xi.norm();
    if norm == 0.0 {
        return Err(Error::Invalid("vector must be nonzero".into()));
    }
    let v = fock.embed(n, xi)?;
    let lhs = wick_sum(fock, &fock.t, i, j)?.apply(&v).norm();
    Ok(BoundCheck {
        lhs,
        bound: fock.t.norm() * fock.r_norm(n) * norm,
    })
}

/// `‖a(f)C_n − C_{n−1} l(f) R^(n)‖` where `l(f)` is the free left annihilator.
pub fn free_annihilator_factorization_check(
    fock: &DeformedFock,
    f: &ComplexVector,
    n: usize,
) -> Result<f64> {
    if n == 0 || n > fock.n_max {
        return Err(Error::Invalid(format!("level {n} outside 1..={}", fock.n_max)));
    }
    let a = fock.creator_block(f, n - 1)?.adjoint();
    let d = fock.t.d();
    let dprev = d.pow((n - 1) as u32);
    let r = build_r(&fock.t, n);
    let mut lr = ComplexMatrix::zeros(dprev, r.ncols());
    for (i, fi) in f.iter().enumerate() {
        if *fi != C64::new(0.0, 0.0) {
            lr += r.rows(i * dprev, dprev) * fi.conj();
        }
    }
    let lhs = a * &fock.level(n).factor;
    let rhs = &fock.level(n - 1).factor * lr;
    Ok(operator_norm(&(lhs - rhs)))
}

/// `U^{⊗n}`.
pub fn tensor_power(u: &ComplexMatrix, n: usize) -> ComplexMatrix {
    (0..n).fold(identity(1), |acc, _| kron(&acc, u))
}

/// Second quantization `⊕ W_n` with `W_n C_n = C_n U^{⊗n}`, plus the intertwining residual.
pub fn second_quantization(fock: &DeformedFock, u: &ComplexMatrix) -> (FockOperator, f64) {
    let mut op = FockOperator::zero(fock.level_dims());
    let mut residual: f64 = 0.0;
    for lvl in &fock.levels {
        if lvl.rank == 0 {
            continue;
        }
        let un = tensor_power(u, lvl.n);
        let cu = &lvl.factor * un;
        let mut w = &cu * lvl.factor.adjoint();
        for (c, &lam) in lvl.eigenvalues.iter().enumerate() {
            w.column_mut(c).scale_mut(1.0 / lam);
        }
        residual = residual.max(operator_norm(&(&w * &lvl.factor - cu)));
        op.set_block(lvl.n, lvl.n, w);
    }
    (op, residual)
}

/// Largest of `‖F(U)a(e_i)F(U)* − a(Ue_i)‖`, `‖F(U)Ω − Ω‖` and the intertwining residual.
pub fn bogoliubov_covariance_check(fock: &DeformedFock, u: &ComplexMatrix) -> Result<f64> {
    let c = commutant_residual(&fock.t, u)?;
    if c > DEFAULT_TOL {
        return Err(Error::NotInCommutant { residual: c });
    }
    let (fu, mut worst) = second_quantization(fock, u);
    let fu_star = fu.adjoint();
    let omega = fock.vacuum();
    worst = worst.max((fu.apply(&omega) - &omega).norm());
    for i in 0..fock.t.d() {
        let ue: ComplexVector = u.column(i).into_owned();
        let lhs = &(&fu * &fock.annihilator(fock.t.window.mode(i))?) * &fu_star;
        let rhs = fock.annihilator_for(&ue)?;
        worst = worst.max((&lhs - &rhs).norm());
    }
    Ok(worst)
}

/// Residuals of the canonical embedding of an explicit-basis model into the Gram model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntertwiningReport {
    /// `‖J*J − I‖`.
    pub isometry: f64,
    /// Largest `‖J a†_i − a†_i J‖` over modes, on levels below the top.
    pub creators: f64,
}

/// Compares an explicit model with the Gram model through `J e_w = [e_{w_1}⊗…⊗e_{w_n}]`.
pub fn intertwining<M: ExplicitBasis>(explicit: &M, generic: &DeformedFock) -> Result<IntertwiningReport> {
    let top = explicit.n_max().min(generic.n_max);
    let gdims = generic.level_dims();
    let edims = explicit.level_dims();
    let js: Vec<ComplexMatrix> = (0..=top)
        .map(|n| -> Result<ComplexMatrix> {
            let words = explicit.basis_words(n);
            let mut j = ComplexMatrix::zeros(gdims[n], words.len());
            for (s, w) in words.iter().enumerate() {
                let mut u = 0;
                for &m in w {
                    u = u * generic.t.d() + generic.t.window.index(m)?;
                }
                j.set_column(s, &generic.level(n).factor.column(u));
            }
            Ok(j)
        })
        .collect::<Result<_>>()?;
    let mut isometry: f64 = 0.0;
    for (n, j) in js.iter().enumerate() {
        if edims[n] > 0 {
            isometry = isometry.max(operator_norm(&(j.adjoint() * j - identity(edims[n]))));
        }
    }
    let mut creators: f64 = 0.0;
    for mode in explicit.window().modes() {
        let e = explicit.creator(mode)?;
        let g = generic.creator(mode)?;
        for n in 0..top {
            let zero_e = ComplexMatrix::zeros(edims[n + 1], edims[n]);
            let zero_g = ComplexMatrix::zeros(gdims[n + 1], gdims[n]);
            let eb = e.block(n + 1, n).unwrap_or(&zero_e);
            let gb = g.block(n + 1, n).unwrap_or(&zero_g);
            let r = &js[n + 1] * eb - gb * &js[n];
            if !r.is_empty() {
                creators = creators.max(operator_norm(&r));
            }
        }
    }
    Ok(IntertwiningReport { isometry, creators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_standard, transposition, Kind, ModeWindow};
    use crate::fock::boolean_fock::specialized_boolean_fock;
    use crate::fock::gram::build_fock;
    use crate::fock::monotone::specialized_monotone_fock;
    use crate::linalg::basis_vector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fock(kind: Kind, d: i64, n: usize) -> DeformedFock {
        build_fock(&build_standard(kind, ModeWindow::new(0, d - 1).unwrap()), n).unwrap()
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
        ComplexVector::from_fn(n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn creator_norms() {
        let f = fock(Kind::Monotone, 3, 3);
        for n in 0..3 {
            let c = creator_norm_check(&f, &basis_vector(3, 1), n).unwrap();
            assert!(c.lhs <= 1.0 + 1e-12 && c.holds(1e-10));
        }
        let c = creator_norm_check(&fock(Kind::Free, 2, 2), &basis_vector(2, 0), 1).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-12 && c.bound == 1.0);
        let c = creator_norm_check(&fock(Kind::Fermi, 3, 2), &basis_vector(3, 0), 1).unwrap();
        assert!(c.holds(1e-10));
    }

    #[test]
    fn wick_identities() {
        for kind in Kind::ALL {
            let f = fock(kind, 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    let r = wick_residual(&f, &f.t, i, j).unwrap();
                    assert!(r <= 1e-10, "{kind} i={i} j={j}: {r}");
                }
            }
        }
    }

    #[test]
    fn wick_sum_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let free = fock(Kind::Free, 2, 2);
        let xi = random_vec(&mut rng, free.level_dims()[2]);
        assert_eq!(wick_sum_bound_check(&free, 0, 1, 2, &xi).unwrap().lhs, 0.0);
        for kind in [Kind::Monotone, Kind::Bose] {
            let f = fock(kind, 2, 2);
            let xi = random_vec(&mut rng, f.level_dims()[2]);
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                assert!(wick_sum_bound_check(&f, i, j, 2, &xi).unwrap().holds(1e-10));
            }
        }
    }

    #[test]
    fn free_annihilator_factorization() {
        let cases = [(Kind::Free, 2), (Kind::Monotone, 2), (Kind::Boolean, 1), (Kind::Bose, 2)];
        for (kind, n) in cases {
            let f = fock(kind, 3, 2);
            for i in 0..3 {
                let r = free_annihilator_factorization_check(&f, &basis_vector(3, i), n).unwrap();
                assert!(r <= 1e-10, "{kind}: {r}");
            }
        }
    }

    #[test]
    fn bogoliubov_covariance() {
        let win = ModeWindow::new(0, 2).unwrap();
        let g = transposition(win, 0, 2).unwrap();
        for kind in [Kind::Boolean, Kind::Fermi, Kind::Bose, Kind::Free] {
            let f = fock(kind, 3, 3);
            assert!(bogoliubov_covariance_check(&f, &g).unwrap() <= 1e-10, "{kind}");
        }
        let m = fock(Kind::Monotone, 3, 2);
        assert!(bogoliubov_covariance_check(&m, &identity(3)).unwrap() <= 1e-12);
        assert!(matches!(
            bogoliubov_covariance_check(&m, &g),
            Err(Error::NotInCommutant { .. })
        ));
    }

    #[test]
    fn explicit_models_match_gram_models() {
        let win = ModeWindow::new(0, 3).unwrap();
        let m = specialized_monotone_fock(win, None).unwrap();
        let g = build_fock(&build_standard(Kind::Monotone, win), 4).unwrap();
        let r = intertwining(&m, &g).unwrap();
        assert!(r.isometry <= 1e-10 && r.creators <= 1e-10);
        let b = specialized_boolean_fock(win);
        let g = build_fock(&build_standard(Kind::Boolean, win), 2).unwrap();
        let r = intertwining(&b, &g).unwrap();
        assert!(r.isometry <= 1e-10 && r.creators <= 1e-10);
    }
}
