//! Block operators on a truncated graded space.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use crate::linalg::{c64, identity, max_abs, operator_norm, ComplexMatrix, ComplexVector, C64};

/// Start offset of every level in the flattened space, plus the total dimension at the end.
pub fn level_offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &d in dims {
        acc += d;
        out.push(acc);
    }
    out
}

/// Blocks keyed by `(target level, source level)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dims: Vec<usize>,
    blocks: BTreeMap<(usize, usize), ComplexMatrix>,
}

impl FockOperator {
    pub fn zero(dims: &[usize]) -> Self {
        Self {
            dims: dims.to_vec(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let mut op = Self::zero(dims);
        for (n, &d) in dims.iter().enumerate() {
            op.set_block(n, n, identity(d));
        }
        op
    }

    /// Projection `E^n` onto level `n`.
    pub fn level_projection(dims: &[usize], n: usize) -> Self {
        let mut op = Self::zero(dims);
        if n < dims.len() {
            op.set_block(n, n, identity(dims[n]));
        }
        op
    }

    pub fn vacuum_projection(dims: &[usize]) -> Self {
        Self::level_projection(dims, 0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &ComplexMatrix)> {
        self.blocks.iter()
    }

    pub fn block(&self, target: usize, source: usize) -> Option<&ComplexMatrix> {
        self.blocks.get(&(target, source))
    }

    /// Stores a block, dropping empty ones.
    pub fn set_block(&mut self, target: usize, source: usize, m: ComplexMatrix) {
        assert_eq!(m.shape(), (self.dims[target], self.dims[source]));
        if m.is_empty() {
            self.blocks.remove(&(target, source));
        } else {
            self.blocks.insert((target, source), m);
        }
    }

    pub fn add_to_block(&mut self, target: usize, source: usize, m: &ComplexMatrix) {
        match self.blocks.get_mut(&(target, source)) {
            Some(b) => *b += m,
            None => self.set_block(target, source, m.clone()),
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            dims: self.dims.clone(),
            blocks: self.blocks.iter().map(|(k, b)| (*k, b * z)).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|(&(t, s), b)| ((s, t), b.adjoint()))
                .collect(),
        }
    }

    /// Compression to levels `0..=top`.
    pub fn restrict_levels(&self, top: usize) -> Self {
        Self {
            dims: self.dims.clone(),
            blocks: self
                .blocks
                .iter()
                .filter(|(&(t, s), _)| t <= top && s <= top)
                .map(|(k, b)| (*k, b.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let off = level_offsets(&self.dims);
        let total = *off.last().expect("offsets nonempty");
        let mut m = ComplexMatrix::zeros(total, total);
        for (&(t, s), b) in &self.blocks {
            m.view_mut((off[t], off[s]), b.shape()).copy_from(b);
        }
        m
    }

    pub fn norm(&self) -> f64 {
        operator_norm(&self.to_dense())
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().map(max_abs).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        let off = level_offsets(&self.dims);
        assert_eq!(v.len(), *off.last().expect("offsets nonempty"));
        let mut out = ComplexVector::zeros(v.len());
        for (&(t, s), b) in &self.blocks {
            let src = v.rows(off[s], self.dims[s]);
            let mut dst = out.rows_mut(off[t], self.dims[t]);
            dst += b * src;
        }
        out
    }

    /// `⟨Xv, v⟩` for a vector `v`.
    pub fn expectation(&self, v: &ComplexVector) -> C64 {
        v.dotc(&self.apply(v))
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        assert_eq!(self.dims, other.dims, "operators live on different spaces");
        let mut out = self.clone();
        for (&(t, s), b) in &other.blocks {
            out.add_to_block(t, s, &(b * c64(sign, 0.0)));
        }
        out
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.dims, rhs.dims, "operators live on different spaces");
        let mut out = FockOperator::zero(&self.dims);
        for (&(t, m), a) in &self.blocks {
            for (&(m2, s), b) in rhs.blocks.range((m, 0)..=(m, usize::MAX)) {
                debug_assert_eq!(m, m2);
                out.add_to_block(t, s, &(a * b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift_op(dims: &[usize]) -> FockOperator {
        let mut op = FockOperator::zero(dims);
        op.set_block(1, 0, ComplexMatrix::from_element(dims[1], dims[0], c64(1.0, 0.0)));
        op
    }

    #[test]
    fn dense_matches_blockwise_product() {
        let dims = [1, 2, 1];
        let a = shift_op(&dims);
        let mut b = FockOperator::identity(&dims);
        b.set_block(2, 1, ComplexMatrix::from_row_slice(1, 2, &[c64(0.0, 1.0), c64(2.0, 0.0)]));
        let prod = &b * &a;
        assert_eq!(prod.to_dense(), b.to_dense() * a.to_dense());
        let sum = &a + &b;
        assert_eq!(sum.to_dense(), a.to_dense() + b.to_dense());
        assert_eq!(prod.adjoint().to_dense(), prod.to_dense().adjoint());
    }

    #[test]
    fn projections_and_restriction() {
        let dims = [1, 3, 3];
        let p = FockOperator::vacuum_projection(&dims);
        assert_eq!(p.norm(), 1.0);
        let id = FockOperator::identity(&dims);
        let r = id.restrict_levels(1);
        assert_eq!(r.to_dense().trace(), c64(4.0, 0.0));
        let v = ComplexVector::from_element(7, c64(1.0, 0.0));
        assert_eq!(p.expectation(&v), c64(1.0, 0.0));
    }

    #[test]
    fn offsets() {
        assert_eq!(level_offsets(&[1, 3, 0, 2]), vec![0, 1, 4, 4, 6]);
    }
}
