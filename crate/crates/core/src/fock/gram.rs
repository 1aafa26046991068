//! Deformed Fock space built from the Gram forms `⟨ξ, P^(n) η⟩`.

use crate::catalog::{Kind, ModeWindow, YangBaxterOp};
use crate::error::{Error, Result};
use crate::fock::model::FockModel;
use crate::fock::operator::FockOperator;
use crate::fock::tensor::{build_p_sequence, build_r};
use crate::linalg::{
    basis_vector, hermitian_eigenpairs_by_component, identity, operator_norm, ComplexMatrix,
    ComplexVector, C64, KERNEL_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOptions {
    /// Upper bound on `d^N_max`.
    pub size_cap: usize,
    /// Relative eigenvalue threshold for the kernel of `G_n`.
    pub kernel_tol: f64,
    /// Relative residual tolerated when solving for creator blocks.
    pub solve_tol: f64,
}

impl Default for FockOptions {
    fn default() -> Self {
        Self {
            size_cap: 4096,
            kernel_tol: KERNEL_TOL,
            solve_tol: 1e-8,
        }
    }
}

/// One particle level: `G_n = C_n* C_n` with `C_n = Λ^{1/2} V*`.
#[derive(Debug, Clone)]
pub struct LevelGram {
    pub n: usize,
    pub gram: ComplexMatrix,
    pub rank: usize,
    /// `r_n × d^n`.
    pub factor: ComplexMatrix,
    /// Kept eigenvalues, in row order of `factor`.
    pub eigenvalues: Vec<f64>,
}

impl LevelGram {
    pub fn from_gram(n: usize, gram: ComplexMatrix, kernel_tol: f64) -> Result<Self> {
        let comps = hermitian_eigenpairs_by_component(&gram, 1e-8)?;
        let top = comps
            .iter()
            .flatten()
            .fold(0.0_f64, |m, p| m.max(p.value));
        let dim = gram.nrows();
        let mut rows: Vec<ComplexVector> = Vec::new();
        let mut eigenvalues = Vec::new();
        if top > 0.0 {
            for pair in comps.iter().flatten() {
                if pair.value > kernel_tol * top {
                    rows.push(pair.vector.conjugate() * C64::new(pair.value.sqrt(), 0.0));
                    eigenvalues.push(pair.value);
                }
            }
        }
        let factor = ComplexMatrix::from_fn(rows.len(), dim, |r, c| rows[r][c]);
        Ok(Self {
            n,
            rank: rows.len(),
            gram,
            factor,
            eigenvalues,
        })
    }

    /// `d^n`.
    pub fn tensor_dim(&self) -> usize {
        self.gram.nrows()
    }
}

/// True when level `n` of the given kind is `{0}` for `d` modes.
pub fn level_is_empty(kind: Kind, d: usize, n: usize) -> bool {
    match kind {
        Kind::Monotone | Kind::Antimonotone | Kind::Fermi => n > d,
        Kind::Boolean => n >= 2,
        Kind::Free | Kind::Bose => false,
    }
}

#[derive(Debug, Clone)]
pub struct DeformedFock {
    pub t: YangBaxterOp,
    pub n_max: usize,
    pub levels: Vec<LevelGram>,
    /// `‖R^(n)‖` at index `n`; index 0 holds 1.
    pub r_norms: Vec<f64>,
    pub options: FockOptions,
    dims: Vec<usize>,
    creators: Vec<FockOperator>,
}

pub fn build_fock(t: &YangBaxterOp, n_max: usize) -> Result<DeformedFock> {
    build_fock_with(t, n_max, FockOptions::default())
}

pub fn build_fock_with(t: &YangBaxterOp, n_max: usize, options: FockOptions) -> Result<DeformedFock> {
    let d = t.d();
    let top_dim = d
        .checked_pow(n_max as u32)
        .filter(|&x| x <= options.size_cap)
        .ok_or(Error::SizeCap {
            dim: d.saturating_pow(n_max as u32),
            cap: options.size_cap,
        })?;
    debug_assert!(top_dim >= 1);
    let mut levels = vec![LevelGram::from_gram(0, identity(1), options.kernel_tol)?];
    let mut r_norms = vec![1.0];
    if n_max >= 1 {
        for (k, p) in build_p_sequence(t, n_max).into_iter().enumerate() {
            levels.push(LevelGram::from_gram(k + 1, p, options.kernel_tol)?);
            r_norms.push(operator_norm(&build_r(t, k + 1)));
        }
    }
    let dims = levels.iter().map(|l| l.rank).collect();
    let mut fock = DeformedFock {
        t: t.clone(),
        n_max,
        levels,
        r_norms,
        options,
        dims,
        creators: Vec::new(),
    };
    fock.creators = (0..d)
        .map(|i| fock.creator_for(&basis_vector(d, i)))
        .collect::<Result<_>>()?;
    Ok(fock)
}

impl DeformedFock {
    pub fn kind(&self) -> Kind {
        self.t.kind
    }

    pub fn level(&self, n: usize) -> &LevelGram {
        &self.levels[n]
    }

    pub fn r_norm(&self, n: usize) -> f64 {
        self.r_norms[n]
    }

    /// Block `A_n` of `a†(f)` from level `n` to `n+1`, solving `A_n C_n = C_{n+1} E_f`.
    pub fn creator_block(&self, f: &ComplexVector, n: usize) -> Result<ComplexMatrix> {
        let d = self.t.d();
        if f.len() != d {
            return Err(Error::Invalid(format!("vector has {} entries, window has {d}", f.len())));
        }
        let (lo, hi) = (&self.levels[n], &self.levels[n + 1]);
        let dn = lo.tensor_dim();
        let mut b = ComplexMatrix::zeros(hi.rank, dn);
        for (i, &fi) in f.iter().enumerate() {
            if fi != C64::new(0.0, 0.0) {
                b += hi.factor.columns(i * dn, dn) * fi;
            }
        }
        let mut a = &b * lo.factor.adjoint();
        for (c, &lam) in lo.eigenvalues.iter().enumerate() {
            a.column_mut(c).scale_mut(1.0 / lam);
        }
        let residual = (&a * &lo.factor - &b).norm();
        if residual > self.options.solve_tol * b.norm().max(1.0) {
            return Err(Error::KernelViolation { residual });
        }
        Ok(a)
    }

    /// `a†(f)`; the top level is mapped to 0.
    pub fn creator_for(&self, f: &ComplexVector) -> Result<FockOperator> {
        let mut op = FockOperator::zero(&self.dims);
        for n in 0..self.n_max {
            op.set_block(n + 1, n, self.creator_block(f, n)?);
        }
        Ok(op)
    }

    pub fn annihilator_for(&self, f: &ComplexVector) -> Result<FockOperator> {
        Ok(self.creator_for(f)?.adjoint())
    }

    /// Coordinates `C_n x` of a tensor `x ∈ H^{⊗n}`.
    pub fn coordinates(&self, n: usize, x: &ComplexVector) -> ComplexVector {
        &self.levels[n].factor * x
    }
}

impl FockModel for DeformedFock {
    fn window(&self) -> ModeWindow {
        self.t.window
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn level_dims(&self) -> &[usize] {
        &self.dims
    }

    fn creator(&self, mode: i64) -> Result<FockOperator> {
        Ok(self.creators[self.t.window.index(mode)?].clone())
    }

    fn exact_top(&self) -> usize {
        let next_empty = level_is_empty(self.kind(), self.t.d(), self.n_max + 1)
            || self.dims[self.n_max] == 0;
        if next_empty {
            self.n_max
        } else {
            self.n_max.saturating_sub(1)
        }
    }

    fn m_t_estimate(&self) -> f64 {
        self.r_norms[1..].iter().copied().fold(1.0, f64::max)
    }

    fn tensor_vector(&self, modes: &[i64]) -> Result<ComplexVector> {
        let n = modes.len();
        if n > self.n_max {
            return Err(Error::Invalid(format!(
                "word of length {n} exceeds N_max = {}",
                self.n_max
            )));
        }
        let d = self.t.d();
        let mut u = 0;
        for &m in modes {
            u = u * d + self.t.window.index(m)?;
        }
        let col: ComplexVector = self.levels[n].factor.column(u).into_owned();
        self.embed(n, &col)
    }
}
