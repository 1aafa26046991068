//! Monotone Fock space with the basis of strictly increasing mode sequences.

use std::collections::HashMap;

use itertools::Itertools;

use crate::catalog::ModeWindow;
use crate::error::{Error, Result};
use crate::fock::model::{ExplicitBasis, FockModel};
use crate::fock::operator::FockOperator;
use crate::linalg::{c64, ComplexMatrix, ComplexVector};

#[derive(Debug, Clone)]
pub struct MonotoneFock {
    window: ModeWindow,
    n_max: usize,
    /// Increasing sequences per level, lexicographic.
    levels: Vec<Vec<Vec<i64>>>,
    index: Vec<HashMap<Vec<i64>, usize>>,
    dims: Vec<usize>,
    creators: Vec<FockOperator>,
}

/// Total dimension allowed for the explicit basis.
pub const MONOTONE_SIZE_CAP: usize = 4096;

pub fn specialized_monotone_fock(window: ModeWindow, n_max: Option<usize>) -> Result<MonotoneFock> {
    let d = window.dim();
    let n_max = n_max.unwrap_or(d);
    let levels: Vec<Vec<Vec<i64>>> = (0..=n_max)
        .map(|n| window.modes().combinations(n).collect())
        .collect();
    let total: usize = levels.iter().map(Vec::len).sum();
    if total > MONOTONE_SIZE_CAP {
        return Err(Error::SizeCap {
            dim: total,
            cap: MONOTONE_SIZE_CAP,
        });
    }
    let index = levels
        .iter()
        .map(|lvl| lvl.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut fock = MonotoneFock {
        window,
        n_max,
        levels,
        index,
        dims,
        creators: Vec::new(),
    };
    fock.creators = window.modes().map(|m| fock.build_creator(m)).collect();
    Ok(fock)
}

impl MonotoneFock {
    fn build_creator(&self, mode: i64) -> FockOperator {
        let mut op = FockOperator::zero(&self.dims);
        for n in 0..self.n_max {
            let mut block = ComplexMatrix::zeros(self.dims[n + 1], self.dims[n]);
            for (src, seq) in self.levels[n].iter().enumerate() {
                if seq.first().is_none_or(|&first| mode < first) {
                    let mut target = Vec::with_capacity(n + 1);
                    target.push(mode);
                    target.extend_from_slice(seq);
                    block[(self.index[n + 1][&target], src)] = c64(1.0, 0.0);
                }
            }
            op.set_block(n + 1, n, block);
        }
        op
    }

    /// Basis vector `e_(i_1,…,i_n)` for a strictly increasing sequence.
    pub fn basis_vector(&self, seq: &[i64]) -> Result<ComplexVector> {
        let n = seq.len();
        let idx = self
            .index
            .get(n)
            .and_then(|m| m.get(seq))
            .ok_or_else(|| Error::Invalid(format!("{seq:?} is not a basis sequence")))?;
        let mut lvl = ComplexVector::zeros(self.dims[n]);
        lvl[*idx] = c64(1.0, 0.0);
        self.embed(n, &lvl)
    }
}

impl FockModel for MonotoneFock {
    fn window(&self) -> ModeWindow {
        self.window
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn level_dims(&self) -> &[usize] {
        &self.dims
    }

    fn creator(&self, mode: i64) -> Result<FockOperator> {
        Ok(self.creators[self.window.index(mode)?].clone())
    }

    fn exact_top(&self) -> usize {
        if self.n_max >= self.window.dim() {
            self.n_max
        } else {
            self.n_max.saturating_sub(1)
        }
    }

    /// `R^(n)` is an orthogonal projection for the monotone operator.
    fn m_t_estimate(&self) -> f64 {
        1.0
    }

    fn tensor_vector(&self, modes: &[i64]) -> Result<ComplexVector> {
        if modes.len() > self.n_max {
            return Err(Error::Invalid(format!(
                "word of length {} exceeds N_max = {}",
                modes.len(),
                self.n_max
            )));
        }
        for &m in modes {
            self.window.index(m)?;
        }
        if modes.windows(2).all(|w| w[0] < w[1]) {
            self.basis_vector(modes)
        } else {
            Ok(ComplexVector::zeros(self.total_dim()))
        }
    }
}

impl ExplicitBasis for MonotoneFock {
    fn basis_words(&self, n: usize) -> Vec<Vec<i64>> {
        self.levels[n].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(lo: i64, hi: i64) -> MonotoneFock {
        specialized_monotone_fock(ModeWindow::new(lo, hi).unwrap(), None).unwrap()
    }

    #[test]
    fn creation_prepends_smaller_modes_only() {
        let f = model(0, 3);
        let e13 = f.basis_vector(&[1, 3]).unwrap();
        let e013 = f.basis_vector(&[0, 1, 3]).unwrap();
        assert_eq!(f.creator(0).unwrap().apply(&e13), e013);
        assert_eq!(f.creator(1).unwrap().apply(&e13).norm(), 0.0);
        assert_eq!(f.creator(2).unwrap().apply(&e13).norm(), 0.0);
        assert_eq!(f.annihilator(1).unwrap().apply(&e13), f.basis_vector(&[3]).unwrap());
        assert_eq!(f.annihilator(3).unwrap().apply(&e13).norm(), 0.0);
    }

    #[test]
    fn number_sum_is_complement_of_vacuum() {
        let f = model(0, 4);
        let mut sum = FockOperator::zero(f.level_dims());
        for k in f.window().modes() {
            sum = &sum + &(&f.creator(k).unwrap() * &f.annihilator(k).unwrap());
        }
        let expect = &f.identity() - &FockOperator::vacuum_projection(f.level_dims());
        assert_eq!((&sum - &expect).max_abs(), 0.0);
    }

    #[test]
    fn dims_are_binomial() {
        assert_eq!(model(0, 3).level_dims(), &[1, 4, 6, 4, 1]);
        let f = specialized_monotone_fock(ModeWindow::new(0, 30).unwrap(), Some(2)).unwrap();
        assert_eq!(f.level_dims(), &[1, 31, 465]);
        assert_eq!(f.exact_top(), 1);
    }
}
