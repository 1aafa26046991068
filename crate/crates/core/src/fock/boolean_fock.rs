//! Boolean Fock space `ℂ ⊕ H`.

use crate::catalog::ModeWindow;
use crate::error::{Error, Result};
use crate::fock::model::{ExplicitBasis, FockModel};
use crate::fock::operator::FockOperator;
use crate::linalg::{c64, ComplexMatrix, ComplexVector};

#[derive(Debug, Clone)]
pub struct BooleanFock {
    window: ModeWindow,
    dims: Vec<usize>,
}

pub fn specialized_boolean_fock(window: ModeWindow) -> BooleanFock {
    BooleanFock {
        window,
        dims: vec![1, window.dim()],
    }
}

impl FockModel for BooleanFock {
    fn window(&self) -> ModeWindow {
        self.window
    }

    fn n_max(&self) -> usize {
        1
    }

    fn level_dims(&self) -> &[usize] {
        &self.dims
    }

    /// `a†(e_i)(α ⊕ g) = 0 ⊕ α e_i`.
    fn creator(&self, mode: i64) -> Result<FockOperator> {
        let i = self.window.index(mode)?;
        let mut block = ComplexMatrix::zeros(self.dims[1], 1);
        block[(i, 0)] = c64(1.0, 0.0);
        let mut op = FockOperator::zero(&self.dims);
        op.set_block(1, 0, block);
        Ok(op)
    }

    fn exact_top(&self) -> usize {
        1
    }

    fn m_t_estimate(&self) -> f64 {
        1.0
    }

    fn tensor_vector(&self, modes: &[i64]) -> Result<ComplexVector> {
        for &m in modes {
            self.window.index(m)?;
        }
        match modes {
            [] => Ok(self.vacuum()),
            [m] => {
                let mut v = ComplexVector::zeros(self.total_dim());
                v[1 + self.window.index(*m)?] = c64(1.0, 0.0);
                Ok(v)
            }
            _ => Ok(ComplexVector::zeros(self.total_dim())),
        }
    }
}

impl ExplicitBasis for BooleanFock {
    fn basis_words(&self, n: usize) -> Vec<Vec<i64>> {
        match n {
            0 => vec![vec![]],
            1 => self.window.modes().map(|m| vec![m]).collect(),
            _ => vec![],
        }
    }
}

impl BooleanFock {
    /// `α ⊕ g` as a flat vector.
    pub fn vector(&self, alpha: num_complex::Complex64, g: &ComplexVector) -> Result<ComplexVector> {
        if g.len() != self.window.dim() {
            return Err(Error::Invalid("one-particle vector has wrong length".into()));
        }
        let mut v = ComplexVector::zeros(self.total_dim());
        v[0] = alpha;
        v.rows_mut(1, g.len()).copy_from(g);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn creation_and_annihilation() {
        let f = specialized_boolean_fock(ModeWindow::new(0, 2).unwrap());
        let g = ComplexVector::from_vec(vec![c64(1.0, 0.0), c64(0.0, 2.0), c64(3.0, 0.0)]);
        let x = f.vector(c64(2.0, 0.0), &g).unwrap();
        let mut expect = ComplexVector::zeros(3);
        expect[1] = c64(2.0, 0.0);
        assert_eq!(f.creator(1).unwrap().apply(&x), f.vector(c64(0.0, 0.0), &expect).unwrap());
        let back = f.annihilator(1).unwrap().apply(&x);
        assert_eq!(back, f.vector(c64(0.0, 2.0), &ComplexVector::zeros(3)).unwrap());
        assert_eq!(f.annihilator(0).unwrap().apply(&f.vacuum()).norm(), 0.0);
    }
}
