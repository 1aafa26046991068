//! Operators `A + bI` on `ℓ²({#} ∪ window)`, the conditional expectation onto `ℂP_# ⊕ ℂP_#^⊥`
//! and the associated mixing averages.
//!
//! Index 0 of the compact part is `e_#`; index `1 + i` is the `i`-th mode of the window.

use std::ops::{Add, Mul, Sub};

use itertools::Itertools;
use serde::Serialize;

use crate::catalog::ModeWindow;
use crate::ergodic::{MixingCurve, MixingEntry};
use crate::error::{Error, Result};
use crate::linalg::{c64, identity, operator_norm, ComplexMatrix, ComplexVector, C64};

pub const PERMUTATION_CAP: usize = 6;

/// A basis vector of the Boolean Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Vacuum,
    Mode(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BooleanOp {
    pub window: ModeWindow,
    pub compact: ComplexMatrix,
    pub scalar: C64,
}

impl BooleanOp {
    pub fn new(window: ModeWindow, compact: ComplexMatrix, scalar: C64) -> Result<Self> {
        let n = window.dim() + 1;
        if compact.nrows() != n || compact.ncols() != n {
            return Err(Error::Invalid(format!(
                "compact part is {}x{}, expected {n}x{n}",
                compact.nrows(),
                compact.ncols()
            )));
        }
        Ok(Self { window, compact, scalar })
    }

    pub fn zero(window: ModeWindow) -> Self {
        let n = window.dim() + 1;
        Self { window, compact: ComplexMatrix::zeros(n, n), scalar: c64(0.0, 0.0) }
    }

    pub fn identity(window: ModeWindow) -> Self {
        Self { scalar: c64(1.0, 0.0), ..Self::zero(window) }
    }

    /// `P_#`.
    pub fn vacuum_projection(window: ModeWindow) -> Self {
        let mut x = Self::zero(window);
        x.compact[(0, 0)] = c64(1.0, 0.0);
        x
    }

    /// `|target⟩⟨source|`.
    pub fn rank_one(window: ModeWindow, target: Site, source: Site) -> Result<Self> {
        let mut x = Self::zero(window);
        let (r, c) = (site_index(window, target)?, site_index(window, source)?);
        x.compact[(r, c)] = c64(1.0, 0.0);
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.window.dim() + 1
    }

    /// `A + bI` as one matrix.
    pub fn to_dense(&self) -> ComplexMatrix {
        &self.compact + identity(self.dim()) * self.scalar
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { window: self.window, compact: &self.compact * z, scalar: self.scalar * z }
    }

    pub fn adjoint(&self) -> Self {
        Self { window: self.window, compact: self.compact.adjoint(), scalar: self.scalar.conj() }
    }

    pub fn norm(&self) -> f64 {
        operator_norm(&self.to_dense())
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        &self.compact * v + v * self.scalar
    }

    /// Sum of `|A_ij|` over entries other than `(#,#)`.
    pub fn rank_one_weight(&self) -> f64 {
        let total: f64 = self.compact.iter().map(|z| z.norm()).sum();
        total - self.compact[(0, 0)].norm()
    }

    /// Conjugation by `P_# ⊕ V` where `V e_i = e_{map(i)}` on local mode indices.
    fn conjugate(&self, map: impl Fn(usize) -> Result<usize>) -> Result<Self> {
        let n = self.dim();
        let site = |k: usize| -> Result<usize> {
            if k == 0 {
                Ok(0)
            } else {
                Ok(map(k - 1)? + 1)
            }
        };
        let mut out = ComplexMatrix::zeros(n, n);
        for c in 0..n {
            for r in 0..n {
                let z = self.compact[(r, c)];
                if z != c64(0.0, 0.0) {
                    out[(site(r)?, site(c)?)] = z;
                }
            }
        }
        Ok(Self { window: self.window, compact: out, scalar: self.scalar })
    }
}

fn site_index(window: ModeWindow, s: Site) -> Result<usize> {
    match s {
        Site::Vacuum => Ok(0),
        Site::Mode(m) => Ok(window.index(m)? + 1),
    }
}

fn same_window(a: &BooleanOp, b: &BooleanOp) {
    assert_eq!(a.window, b.window, "operators live on different windows");
}

impl Add for &BooleanOp {
    type Output = BooleanOp;
    fn add(self, rhs: &BooleanOp) -> BooleanOp {
        same_window(self, rhs);
        BooleanOp { window: self.window, compact: &self.compact + &rhs.compact, scalar: self.scalar + rhs.scalar }
    }
}

impl Sub for &BooleanOp {
    type Output = BooleanOp;
    fn sub(self, rhs: &BooleanOp) -> BooleanOp {
        same_window(self, rhs);
        BooleanOp { window: self.window, compact: &self.compact - &rhs.compact, scalar: self.scalar - rhs.scalar }
    }
}

/// `(A + bI)(C + dI) = (AC + dA + bC) + bdI`.
impl Mul for &BooleanOp {
    type Output = BooleanOp;
    fn mul(self, rhs: &BooleanOp) -> BooleanOp {
        same_window(self, rhs);
        let compact = &self.compact * &rhs.compact + &self.compact * rhs.scalar + &rhs.compact * self.scalar;
        BooleanOp { window: self.window, compact, scalar: self.scalar * rhs.scalar }
    }
}

/// `a†(f)(α ⊕ g) = 0 ⊕ αf`.
pub fn boolean_create(window: ModeWindow, f: &ComplexVector) -> Result<BooleanOp> {
    if f.len() != window.dim() {
        return Err(Error::Invalid(format!(
            "vector has {} entries, window has {}",
            f.len(),
            window.dim()
        )));
    }
    let mut x = BooleanOp::zero(window);
    for (i, &fi) in f.iter().enumerate() {
        x.compact[(i + 1, 0)] = fi;
    }
    Ok(x)
}

/// `a(f)(α ⊕ g) = ⟨g, f⟩ ⊕ 0`.
pub fn boolean_annihilate(window: ModeWindow, f: &ComplexVector) -> Result<BooleanOp> {
    Ok(boolean_create(window, f)?.adjoint())
}

fn unit(window: ModeWindow, i: usize) -> ComplexVector {
    crate::linalg::basis_vector(window.dim(), i)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoolrelReport {
    /// `max ‖a(e_i)a(e_j)‖`.
    pub annihilators: f64,
    /// `max ‖a†(e_i)a†(e_j)‖`.
    pub creators: f64,
    /// `max ‖a(e_i)a†(e_j) − δ_ij P_#‖`.
    pub mixed: f64,
    /// `‖P_# − (I − Σ_k a†(e_k)a(e_k))‖`.
    pub vacuum_projection: f64,
}

impl BoolrelReport {
    pub fn max(&self) -> f64 {
        self.annihilators.max(self.creators).max(self.mixed).max(self.vacuum_projection)
    }
}

/// Residuals of the Boolean relations on all pairs of basis modes.
pub fn verify_boolrel(window: ModeWindow) -> Result<BoolrelReport> {
    let d = window.dim();
    let cr: Vec<BooleanOp> = (0..d).map(|i| boolean_create(window, &unit(window, i))).try_collect()?;
    let an: Vec<BooleanOp> = cr.iter().map(BooleanOp::adjoint).collect();
    let p = BooleanOp::vacuum_projection(window);
    let zero = BooleanOp::zero(window);
    let mut report = BoolrelReport { annihilators: 0.0, creators: 0.0, mixed: 0.0, vacuum_projection: 0.0 };
    for i in 0..d {
        for j in 0..d {
            report.annihilators = report.annihilators.max((&an[i] * &an[j]).norm());
            report.creators = report.creators.max((&cr[i] * &cr[j]).norm());
            let expect = if i == j { &p } else { &zero };
            report.mixed = report.mixed.max((&(&an[i] * &cr[j]) - expect).norm());
        }
    }
    let mut rhs = BooleanOp::identity(window);
    for k in 0..d {
        rhs = &rhs - &(&cr[k] * &an[k]);
    }
    report.vacuum_projection = (&p - &rhs).norm();
    Ok(report)
}

/// `U X U*` with `U = P_# ⊕ V`, `V e_i = e_{i+k}`.
pub fn shift_op(x: &BooleanOp, k: i64) -> Result<BooleanOp> {
    let w = x.window;
    x.conjugate(|i| {
        let m = w.mode(i) + k;
        w.index(m)
    })
}

/// `U_g X U_g*` with `U_g = P_# ⊕ V_g`; `g` maps local mode indices.
pub fn permutation_op(x: &BooleanOp, g: &[usize]) -> Result<BooleanOp> {
    let d = x.window.dim();
    if g.len() != d || !g.iter().all(|&i| i < d) || g.iter().unique().count() != d {
        return Err(Error::Invalid(format!("{g:?} is not a permutation of {d} modes")));
    }
    x.conjugate(|i| Ok(g[i]))
}

/// `E(A + bI) = ⟨Ae_#, e_#⟩P_# + bI`.
pub fn conditional_expectation(x: &BooleanOp) -> BooleanOp {
    let mut out = BooleanOp::zero(x.window);
    out.compact[(0, 0)] = x.compact[(0, 0)];
    out.scalar = x.scalar;
    out
}

/// `‖X − αP_# − βP_#^⊥‖` with `α = X_##` and `β` the mean diagonal entry of the mode block.
///
/// Zero exactly when `X ∈ ℂP_# ⊕ ℂP_#^⊥`.
pub fn fixed_point_membership(x: &BooleanOp) -> f64 {
    let m = x.to_dense();
    let n = m.nrows();
    let alpha = m[(0, 0)];
    let beta = if n > 1 {
        (1..n).map(|i| m[(i, i)]).sum::<C64>() / (n - 1) as f64
    } else {
        c64(0.0, 0.0)
    };
    let mut d = m;
    d[(0, 0)] -= alpha;
    for i in 1..n {
        d[(i, i)] -= beta;
    }
    operator_norm(&d)
}

/// `‖(1/n)Σ_{k≤n} α^{l_k}(X) − E(X)‖` against `C_X/√n`.
pub fn e_mixing_curve(x: &BooleanOp, subseq: &[i64], n_list: &[usize]) -> Result<MixingCurve> {
    let mut ns: Vec<usize> = n_list.iter().copied().filter(|&n| n > 0).collect();
    ns.sort_unstable();
    ns.dedup();
    let Some(&top) = ns.last() else {
        return Ok(MixingCurve::default());
    };
    if subseq.len() < top {
        return Err(Error::Invalid(format!(
            "subsequence has {} terms, {top} are needed",
            subseq.len()
        )));
    }
    let e = conditional_expectation(x);
    let cx = x.rank_one_weight();
    let mut sum = BooleanOp::zero(x.window);
    let mut entries = Vec::with_capacity(ns.len());
    let mut next = ns.iter().peekable();
    for (k, &l) in subseq.iter().take(top).enumerate() {
        sum = &sum + &shift_op(x, l)?;
        if next.peek() == Some(&&(k + 1)) {
            let n = k + 1;
            let diff = &sum.scale(c64(1.0 / n as f64, 0.0)) - &e;
            entries.push(MixingEntry {
                n,
                distance: diff.norm(),
                bound: Some(cx / (n as f64).sqrt()),
            });
            next.next();
        }
    }
    Ok(MixingCurve { entries })
}

/// `(1/|J|!) Σ_{g ∈ P_J} β_g(X)`.
pub fn permutation_average(x: &BooleanOp, j: &[i64]) -> Result<BooleanOp> {
    if j.len() > PERMUTATION_CAP {
        return Err(Error::CapExceeded { what: "permutation average", cap: PERMUTATION_CAP, got: j.len() });
    }
    let idx: Vec<usize> = j.iter().map(|&m| x.window.index(m)).try_collect()?;
    if idx.iter().unique().count() != idx.len() {
        return Err(Error::Invalid(format!("{j:?} repeats a mode")));
    }
    let d = x.window.dim();
    let mut sum = BooleanOp::zero(x.window);
    let mut count = 0usize;
    for image in idx.iter().copied().permutations(idx.len()) {
        let mut g: Vec<usize> = (0..d).collect();
        for (&src, &dst) in idx.iter().zip(&image) {
            g[src] = dst;
        }
        sum = &sum + &permutation_op(x, &g)?;
        count += 1;
    }
    Ok(sum.scale(c64(1.0 / count as f64, 0.0)))
}

/// `γω_#(X) + (1−γ)ω_∞(X)`.
pub fn boolean_invariant_state(gamma: f64, x: &BooleanOp) -> Result<C64> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma.to_string()));
    }
    let vacuum = x.compact[(0, 0)] + x.scalar;
    Ok(vacuum * gamma + x.scalar * (1.0 - gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::boolean_fock::specialized_boolean_fock;
    use crate::fock::model::FockModel;

    fn win(lo: i64, hi: i64) -> ModeWindow {
        ModeWindow::new(lo, hi).unwrap()
    }

    fn r1(w: ModeWindow, t: Site, s: Site) -> BooleanOp {
        BooleanOp::rank_one(w, t, s).unwrap()
    }

    fn e(w: ModeWindow, s: Site) -> ComplexVector {
        crate::linalg::basis_vector(w.dim() + 1, site_index(w, s).unwrap())
    }

    #[test]
    fn creation_and_annihilation() {
        let w = win(0, 2);
        let c0 = boolean_create(w, &unit(w, 0)).unwrap();
        let a0 = boolean_annihilate(w, &unit(w, 0)).unwrap();
        assert_eq!(c0.apply(&e(w, Site::Vacuum)), e(w, Site::Mode(0)));
        assert_eq!(a0.apply(&e(w, Site::Mode(0))), e(w, Site::Vacuum));
        assert_eq!(a0.apply(&e(w, Site::Vacuum)).norm(), 0.0);
    }

    #[test]
    fn boolrel() {
        let r = verify_boolrel(win(-1, 3)).unwrap();
        assert!(r.max() <= 1e-12, "{r:?}");
    }

    #[test]
    fn matches_fock_model() {
        let w = win(-2, 2);
        let f = specialized_boolean_fock(w);
        for m in w.modes() {
            let i = w.index(m).unwrap();
            let c = boolean_create(w, &unit(w, i)).unwrap();
            assert_eq!(c.to_dense(), f.creator(m).unwrap().to_dense());
            let a = boolean_annihilate(w, &unit(w, i)).unwrap();
            assert_eq!(a.to_dense(), f.annihilator(m).unwrap().to_dense());
        }
    }

    #[test]
    fn actions() {
        let w = win(0, 4);
        let x = r1(w, Site::Mode(0), Site::Vacuum);
        assert_eq!(shift_op(&x, 2).unwrap(), r1(w, Site::Mode(2), Site::Vacuum));
        let p = BooleanOp::vacuum_projection(w);
        assert_eq!(shift_op(&p, 3).unwrap(), p);
        assert!(matches!(shift_op(&x, 5), Err(Error::WindowOverflow { .. })));
        let y = r1(w, Site::Mode(0), Site::Mode(1));
        assert_eq!(permutation_op(&y, &[0, 1, 2, 3, 4]).unwrap(), y);
        assert_eq!(permutation_op(&y, &[1, 0, 2, 3, 4]).unwrap(), r1(w, Site::Mode(1), Site::Mode(0)));
        assert!(permutation_op(&y, &[0, 0, 2, 3, 4]).is_err());
    }

    #[test]
    fn expectation_examples() {
        let w = win(0, 2);
        let p = BooleanOp::vacuum_projection(w);
        let x = &p + &BooleanOp::identity(w).scale(c64(2.0, 0.0));
        assert_eq!(conditional_expectation(&x), x);
        assert_eq!(conditional_expectation(&r1(w, Site::Mode(0), Site::Vacuum)), BooleanOp::zero(w));
        assert_eq!(conditional_expectation(&BooleanOp::identity(w)), BooleanOp::identity(w));
    }

    #[test]
    fn fixed_points() {
        let w = win(0, 3);
        let p = BooleanOp::vacuum_projection(w);
        assert_eq!(fixed_point_membership(&p), 0.0);
        let id = BooleanOp::identity(w);
        let x = &p.scale(c64(3.0, 0.0)) + &(&id - &p).scale(c64(5.0, 0.0));
        assert!(fixed_point_membership(&x) < 1e-14);
        let y = r1(w, Site::Mode(0), Site::Mode(1));
        assert!(fixed_point_membership(&y) > 0.5);
        assert_ne!(permutation_op(&y, &[0, 2, 1, 3]).unwrap(), y);
    }

    #[test]
    fn rank_one_mixing() {
        let w = win(0, 64);
        let x = r1(w, Site::Mode(0), Site::Vacuum);
        let l: Vec<i64> = (1..=64).collect();
        let curve = e_mixing_curve(&x, &l, &[1, 2, 9, 64]).unwrap();
        for en in &curve.entries {
            assert!((en.distance - 1.0 / (en.n as f64).sqrt()).abs() < 1e-12);
        }
        assert!(curve.within_bounds(1e-12));
        let p = BooleanOp::vacuum_projection(w);
        assert_eq!(e_mixing_curve(&p, &l, &[1, 7]).unwrap().max_distance(), 0.0);
        let y = r1(w, Site::Mode(0), Site::Mode(1));
        let c = e_mixing_curve(&y, &l[..60], &[1, 10, 60]).unwrap();
        assert!(c.within_bounds(1e-12));
        assert!(e_mixing_curve(&y, &l, &[64]).is_err());
    }

    #[test]
    fn permutation_averages() {
        let w = win(0, 4);
        let p = BooleanOp::vacuum_projection(w);
        assert_eq!(permutation_average(&p, &[0, 1, 2]).unwrap(), p);
        let x = r1(w, Site::Mode(0), Site::Vacuum);
        let avg = permutation_average(&x, &[0, 1, 2, 3]).unwrap();
        assert!((avg.norm() - 0.5).abs() < 1e-12);
        let d = r1(w, Site::Mode(0), Site::Mode(0));
        let avg = permutation_average(&d, &[0, 1]).unwrap();
        let expect = (&d + &r1(w, Site::Mode(1), Site::Mode(1))).scale(c64(0.5, 0.0));
        assert!((&avg - &expect).norm() < 1e-15);
        let big = BooleanOp::zero(win(0, 7));
        assert!(matches!(
            permutation_average(&big, &[0, 1, 2, 3, 4, 5, 6]),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn invariant_states() {
        let w = win(0, 3);
        let p = BooleanOp::vacuum_projection(w);
        assert!((boolean_invariant_state(0.3, &p).unwrap() - c64(0.3, 0.0)).norm() < 1e-15);
        for g in [0.0, 0.4, 1.0] {
            assert_eq!(boolean_invariant_state(g, &BooleanOp::identity(w)).unwrap(), c64(1.0, 0.0));
            let x = r1(w, Site::Mode(0), Site::Vacuum);
            assert_eq!(boolean_invariant_state(g, &x).unwrap(), c64(0.0, 0.0));
        }
        assert!(boolean_invariant_state(1.2, &p).is_err());
    }

    #[test]
    fn products_expand_scalars() {
        let w = win(0, 1);
        let x = &r1(w, Site::Mode(0), Site::Vacuum) + &BooleanOp::identity(w).scale(c64(2.0, 0.0));
        let y = &r1(w, Site::Vacuum, Site::Mode(1)) + &BooleanOp::identity(w).scale(c64(0.0, 1.0));
        assert_eq!((&x * &y).to_dense(), x.to_dense() * y.to_dense());
    }
}
