//! Yang-Baxter-Hecke operators on a finite mode window.
//!
//! Basis of `H⊗H` is lexicographic: `e_i⊗e_j` sits at `(i−lo)·d + (j−lo)`.
//! The coefficient `t_{ij}^{kl}` is the matrix entry in row `(k,l)`, column `(i,j)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c64, hermitian_residual, identity, kron, operator_norm, psd_residual, unitary_residual,
    ComplexMatrix, DEFAULT_TOL,
};

/// Contiguous block of modes `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl ModeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn contains(&self, mode: i64) -> bool {
        self.lo <= mode && mode <= self.hi
    }

    /// Local index of `mode`, or an overflow error naming the smallest window covering both.
    pub fn index(&self, mode: i64) -> Result<usize> {
        if self.contains(mode) {
            Ok((mode - self.lo) as usize)
        } else {
            Err(Error::WindowOverflow {
                mode,
                window: *self,
                required: self.hull(mode),
            })
        }
    }

    pub fn mode(&self, index: usize) -> i64 {
        self.lo + index as i64
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn hull(&self, mode: i64) -> ModeWindow {
        ModeWindow {
            lo: self.lo.min(mode),
            hi: self.hi.max(mode),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.lo == -self.hi
    }
}

impl fmt::Display for ModeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for ModeWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("window `{s}` must look like LO..HI"));
        let (lo, hi) = s.trim().split_once("..").ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        ModeWindow::new(lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Free,
    Bose,
    Fermi,
    Boolean,
    Monotone,
    Antimonotone,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Free,
        Kind::Bose,
        Kind::Fermi,
        Kind::Boolean,
        Kind::Monotone,
        Kind::Antimonotone,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Free => "free",
            Kind::Bose => "bose",
            Kind::Fermi => "fermi",
            Kind::Boolean => "boolean",
            Kind::Monotone => "monotone",
            Kind::Antimonotone => "antimonotone",
        }
    }

    /// Hecke parameter. Boolean uses `q = −1`, which makes `n̲!` vanish exactly where `P^(n)` does.
    pub fn hecke_q(&self) -> f64 {
        match self {
            Kind::Free | Kind::Monotone | Kind::Antimonotone => 0.0,
            Kind::Bose | Kind::Fermi => 1.0,
            Kind::Boolean => -1.0,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YangBaxterOp {
    pub window: ModeWindow,
    pub matrix: ComplexMatrix,
    pub hecke_q: f64,
    pub kind: Kind,
}

impl YangBaxterOp {
    pub fn d(&self) -> usize {
        self.window.dim()
    }

    /// `t_{ij}^{kl}`, addressed by mode labels.
    pub fn coefficient(&self, i: i64, j: i64, k: i64, l: i64) -> Result<num_complex::Complex64> {
        let d = self.d();
        let w = &self.window;
        let col = w.index(i)? * d + w.index(j)?;
        let row = w.index(k)? * d + w.index(l)?;
        Ok(self.matrix[(row, col)])
    }

    pub fn norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }

    pub fn selfadjoint_residual(&self) -> f64 {
        hermitian_residual(&self.matrix)
    }
}

/// Flip `σ(e_i⊗e_j) = e_j⊗e_i` on `ℂ^d⊗ℂ^d`.
pub fn flip(d: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s[(j * d + i, i * d + j)] = c64(1.0, 0.0);
        }
    }
    s
}

pub fn build_standard(kind: Kind, window: ModeWindow) -> YangBaxterOp {
    let d = window.dim();
    let dd = d * d;
    let matrix = match kind {
        Kind::Free => ComplexMatrix::zeros(dd, dd),
        Kind::Bose => flip(d),
        Kind::Fermi => -flip(d),
        Kind::Boolean => -identity(dd),
        Kind::Monotone | Kind::Antimonotone => {
            let mut m = ComplexMatrix::zeros(dd, dd);
            for i in 0..d {
                for j in 0..d {
                    let hit = if kind == Kind::Monotone { i >= j } else { i <= j };
                    if hit {
                        m[(i * d + j, i * d + j)] = c64(-1.0, 0.0);
                    }
                }
            }
            m
        }
    };
    YangBaxterOp {
        window,
        matrix,
        hecke_q: kind.hecke_q(),
        kind,
    }
}

pub fn build_by_name(kind: &str, window: ModeWindow) -> Result<YangBaxterOp> {
    Ok(build_standard(kind.parse()?, window))
}

/// `‖T₁T₂T₁ − T₂T₁T₂‖` on `H⊗³`.
pub fn verify_braid(t: &YangBaxterOp) -> f64 {
    let id = identity(t.d());
    let t1 = kron(&t.matrix, &id);
    let t2 = kron(&id, &t.matrix);
    operator_norm(&(&t1 * &t2 * &t1 - &t2 * &t1 * &t2))
}

/// `‖T² − (q−1)T − qI‖`.
pub fn verify_hecke(t: &YangBaxterOp, q: f64) -> f64 {
    let m = &t.matrix;
    let n = m.nrows();
    let r = m * m - m * c64(q - 1.0, 0.0) - identity(n) * c64(q, 0.0);
    operator_norm(&r)
}

/// `max(0, −1 − λ_min(T))`.
pub fn verify_bounded_below(t: &YangBaxterOp) -> Result<f64> {
    psd_residual(&(&t.matrix + identity(t.matrix.nrows())))
}

/// Permutation unitary `e_m ↦ e_{perm(m)}` on the window; `perm` is given on local indices.
pub fn permutation_unitary(perm: &[usize]) -> Result<ComplexMatrix> {
    let d = perm.len();
    let mut seen = vec![false; d];
    let mut u = ComplexMatrix::zeros(d, d);
    for (src, &dst) in perm.iter().enumerate() {
        if dst >= d || seen[dst] {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
        }
        seen[dst] = true;
        u[(dst, src)] = c64(1.0, 0.0);
    }
    Ok(u)
}

/// Transposition of two modes of the window.
pub fn transposition(window: ModeWindow, a: i64, b: i64) -> Result<ComplexMatrix> {
    let (ia, ib) = (window.index(a)?, window.index(b)?);
    let mut perm: Vec<usize> = (0..window.dim()).collect();
    perm.swap(ia, ib);
    permutation_unitary(&perm)
}

/// `‖T(U⊗U) − (U⊗U)T‖`.
pub fn commutant_residual(t: &YangBaxterOp, u: &ComplexMatrix) -> Result<f64> {
    if u.nrows() != t.d() || u.ncols() != t.d() {
        return Err(Error::Invalid(format!(
            "unitary is {}x{}, window has {} modes",
            u.nrows(),
            u.ncols(),
            t.d()
        )));
    }
    let residual = unitary_residual(u);
    if residual > DEFAULT_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let uu = kron(u, u);
    Ok(operator_norm(&(&t.matrix * &uu - &uu * &t.matrix)))
}

/// Largest `|t_{i+1,j+1}^{k+1,l+1} − t_{ij}^{kl}|` over index tuples whose successors stay in the window.
pub fn translation_covariance_residual(t: &YangBaxterOp) -> Result<f64> {
    let d = t.d();
    if d < 2 {
        return Err(Error::Invalid(
            "translation covariance needs at least two modes".into(),
        ));
    }
    let mut worst: f64 = 0.0;
    for i in 0..d - 1 {
        for j in 0..d - 1 {
            for k in 0..d - 1 {
                for l in 0..d - 1 {
                    let a = t.matrix[(k * d + l, i * d + j)];
                    let b = t.matrix[((k + 1) * d + l + 1, (i + 1) * d + j + 1)];
                    worst = worst.max((a - b).norm());
                }
            }
        }
    }
    Ok(worst)
}

/// `(R⊗R)T(R⊗R)` with `R e_j = e_{−j}`.
pub fn reflection_conjugate(t: &YangBaxterOp) -> Result<YangBaxterOp> {
    if !t.window.is_symmetric() {
        return Err(Error::AsymmetricWindow { window: t.window });
    }
    let d = t.d();
    let perm: Vec<usize> = (0..d).map(|a| d - 1 - a).collect();
    let r = permutation_unitary(&perm)?;
    let rr = kron(&r, &r);
    let kind = match t.kind {
        Kind::Monotone => Kind::Antimonotone,
        Kind::Antimonotone => Kind::Monotone,
        other => other,
    };
    Ok(YangBaxterOp {
        window: t.window,
        matrix: &rr * &t.matrix * &rr,
        hecke_q: t.hecke_q,
        kind,
    })
}
