//! Common interface of the truncated Fock models.

use crate::catalog::ModeWindow;
use crate::error::{Error, Result};
use crate::fock::operator::{level_offsets, FockOperator};
use crate::linalg::{ComplexVector, C64};
use crate::word::{LetterKind, ObservableWord};

pub trait FockModel {
    fn window(&self) -> ModeWindow;

    /// Highest particle level kept.
    fn n_max(&self) -> usize;

    fn level_dims(&self) -> &[usize];

    /// Creation operator of the basis vector `e_mode`.
    fn creator(&self, mode: i64) -> Result<FockOperator>;

    /// Highest level on which truncated products of letters agree with the untruncated ones.
    fn exact_top(&self) -> usize;

    /// `max_{n ≤ N_max} ‖R^(n)‖`.
    fn m_t_estimate(&self) -> f64;

    /// Coordinates of the class of `e_{i_1}⊗…⊗e_{i_n}`.
    fn tensor_vector(&self, modes: &[i64]) -> Result<ComplexVector>;

    fn annihilator(&self, mode: i64) -> Result<FockOperator> {
        Ok(self.creator(mode)?.adjoint())
    }

    /// `a†(f) = Σ_m f_m a†(e_m)`.
    fn creator_vec(&self, f: &ComplexVector) -> Result<FockOperator> {
        let w = self.window();
        if f.len() != w.dim() {
            return Err(Error::Invalid(format!(
                "vector has {} entries, window has {}",
                f.len(),
                w.dim()
            )));
        }
        let mut op = FockOperator::zero(self.level_dims());
        for (i, &fi) in f.iter().enumerate() {
            if fi != C64::new(0.0, 0.0) {
                op = &op + &self.creator(w.mode(i))?.scale(fi);
            }
        }
        Ok(op)
    }

    fn total_dim(&self) -> usize {
        self.level_dims().iter().sum()
    }

    fn vacuum(&self) -> ComplexVector {
        let mut v = ComplexVector::zeros(self.total_dim());
        v[0] = C64::new(1.0, 0.0);
        v
    }

    fn identity(&self) -> FockOperator {
        FockOperator::identity(self.level_dims())
    }

    /// Matrix of a word; modes must lie in the window.
    fn word_operator(&self, word: &ObservableWord) -> Result<FockOperator> {
        let mut op = self.identity();
        for letter in &word.letters {
            let l = match letter.kind {
                LetterKind::Creator => self.creator(letter.mode)?,
                LetterKind::Annihilator => self.annihilator(letter.mode)?,
            };
            op = &op * &l;
        }
        Ok(op)
    }

    /// Embeds a level-`n` coordinate vector into the full space.
    fn embed(&self, n: usize, v: &ComplexVector) -> Result<ComplexVector> {
        let dims = self.level_dims();
        if n >= dims.len() || v.len() != dims[n] {
            return Err(Error::Invalid(format!(
                "vector of length {} does not fit level {n}",
                v.len()
            )));
        }
        let off = level_offsets(dims);
        let mut out = ComplexVector::zeros(self.total_dim());
        out.rows_mut(off[n], dims[n]).copy_from(v);
        Ok(out)
    }
}

/// Models whose basis vectors are classes of explicit tensor words.
pub trait ExplicitBasis: FockModel {
    /// Mode word of each basis vector at level `n`.
    fn basis_words(&self, n: usize) -> Vec<Vec<i64>>;
}
