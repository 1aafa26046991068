//! Shift action on observables, Cesàro averages and the associated norm bounds.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::ModeWindow;
use crate::error::{Error, Result};
use crate::fock::checks::BoundCheck;
use crate::fock::model::FockModel;
use crate::fock::operator::FockOperator;
use crate::linalg::{identity, operator_norm, ComplexMatrix, ComplexVector, C64};
use crate::symbolic::normal_form::{reduce, NormalForm};
use crate::word::{LetterKind, ObservableWord};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixingEntry {
    pub n: usize,
    pub distance: f64,
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct MixingCurve {
    pub entries: Vec<MixingEntry>,
}

impl MixingCurve {
    pub fn with_bound(mut self, bound: impl Fn(usize) -> f64) -> Self {
        for e in &mut self.entries {
            e.bound = Some(bound(e.n));
        }
        self
    }

    /// Every entry with a bound respects it.
    pub fn within_bounds(&self, tol: f64) -> bool {
        self.entries
            .iter()
            .all(|e| e.bound.is_none_or(|b| e.distance <= b + tol))
    }

    pub fn max_distance(&self) -> f64 {
        self.entries.iter().map(|e| e.distance).fold(0.0, f64::max)
    }

    /// Rows `n,distance,bound` under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,distance,bound\n");
        for e in &self.entries {
            let bound = e.bound.map(|b| format!("{b:.12}")).unwrap_or_default();
            let _ = writeln!(out, "{},{:.12},{}", e.n, e.distance, bound);
        }
        out
    }
}

/// Smallest window containing `window` and every mode of `word`.
fn required_window(window: ModeWindow, word: &ObservableWord) -> ModeWindow {
    word.letters.iter().fold(window, |w, l| w.hull(l.mode))
}

/// `α^k(W)`, checked against the window.
pub fn shift_word(word: &ObservableWord, k: i64, window: ModeWindow) -> Result<ObservableWord> {
    let shifted = word.shifted(k);
    if let Some(l) = shifted.letters.iter().find(|l| !window.contains(l.mode)) {
        return Err(Error::WindowOverflow {
            mode: l.mode,
            window,
            required: required_window(window, &shifted),
        });
    }
    Ok(shifted)
}

/// Fails fast when `α^{k}(W)` leaves the window for some `k < n`.
fn check_shifts(word: &ObservableWord, n: usize, window: ModeWindow) -> Result<()> {
    if n > 0 {
        shift_word(word, n as i64 - 1, window)?;
        shift_word(word, 0, window)?;
    }
    Ok(())
}

/// Running sums `Σ_{k<n} α^k(W)` at the requested `n`, in ascending order.
fn cesaro_sums<M: FockModel + ?Sized>(
    fock: &M,
    word: &ObservableWord,
    n_list: &[usize],
) -> Result<Vec<(usize, FockOperator)>> {
    let mut ns: Vec<usize> = n_list.iter().copied().filter(|&n| n > 0).collect();
    ns.sort_unstable();
    ns.dedup();
    let Some(&top) = ns.last() else {
        return Ok(vec![]);
    };
    check_shifts(word, top, fock.window())?;
    let mut sum = FockOperator::zero(fock.level_dims());
    let mut out = Vec::with_capacity(ns.len());
    let mut next = ns.iter().peekable();
    for k in 0..top {
        let w = shift_word(word, k as i64, fock.window())?;
        sum = &sum + &fock.word_operator(&w)?;
        if next.peek() == Some(&&(k + 1)) {
            out.push((k + 1, sum.clone()));
            next.next();
        }
    }
    Ok(out)
}

/// `‖(1/n)Σ_{k<n} α^k(W) − target‖` on the exactly represented levels.
pub fn cesaro_distance<M: FockModel + ?Sized>(
    fock: &M,
    word: &ObservableWord,
    target: &FockOperator,
    n_list: &[usize],
) -> Result<MixingCurve> {
    let top = fock.exact_top();
    let entries = cesaro_sums(fock, word, n_list)?
        .into_iter()
        .map(|(n, sum)| {
            let diff = &sum.scale(C64::new(1.0 / n as f64, 0.0)) - target;
            MixingEntry {
                n,
                distance: diff.restrict_levels(top).norm(),
                bound: None,
            }
        })
        .collect();
    Ok(MixingCurve { entries })
}

/// `‖((1/n)Σ_{k<n} α^k(W) − target) ξ‖`.
pub fn vector_cesaro_residual<M: FockModel + ?Sized>(
    fock: &M,
    word: &ObservableWord,
    target: &FockOperator,
    xi: &ComplexVector,
    n: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Invalid("Cesàro index must be positive".into()));
    }
    let (_, sum) = cesaro_sums(fock, word, &[n])?
        .pop()
        .expect("one requested index");
    let v = sum.apply(xi) * C64::new(1.0 / n as f64, 0.0) - target.apply(xi);
    Ok(v.norm())
}

/// `⟨WΩ, Ω⟩` on the model.
pub fn vacuum_value<M: FockModel + ?Sized>(fock: &M, word: &ObservableWord) -> Result<C64> {
    Ok(fock.word_operator(word)?.expectation(&fock.vacuum()))
}

/// Cesàro curve towards `ω(W)·I`, with the bound `√(n M_T^r)/n` when `W` begins with a creator
/// or ends with an annihilator.
pub fn unique_mixing_curve<M: FockModel + ?Sized>(
    fock: &M,
    word: &ObservableWord,
    n_list: &[usize],
) -> Result<MixingCurve> {
    let omega = vacuum_value(fock, word)?;
    let target = fock.identity().scale(omega);
    let curve = cesaro_distance(fock, word, &target, n_list)?;
    if starts_with_creator_or_ends_with_annihilator(word) {
        let m = fock.m_t_estimate();
        let r = word.len() as i32;
        Ok(curve.with_bound(|n| (n as f64 * m.powi(r)).sqrt() / n as f64))
    } else {
        Ok(curve)
    }
}

fn starts_with_creator_or_ends_with_annihilator(word: &ObservableWord) -> bool {
    word.letters.first().is_some_and(|l| l.is_creator())
        || word.letters.last().is_some_and(|l| l.kind == LetterKind::Annihilator)
}

/// `‖Σ_h α^{k_h}(W)‖` against `√(n M_T^r)`.
pub fn sum_bound_check<M: FockModel + ?Sized>(
    fock: &M,
    word: &ObservableWord,
    shifts: &[i64],
) -> Result<BoundCheck> {
    if !starts_with_creator_or_ends_with_annihilator(word) {
        return Err(Error::Invalid(format!(
            "{word} must begin with a creator or end with an annihilator"
        )));
    }
    let mut sorted = shifts.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.is_empty() {
        return Err(Error::Invalid("shifts must be distinct and nonempty".into()));
    }
    let mut sum = FockOperator::zero(fock.level_dims());
    for &k in &sorted {
        sum = &sum + &fock.word_operator(&shift_word(word, k, fock.window())?)?;
    }
    let m = fock.m_t_estimate();
    Ok(BoundCheck {
        lhs: sum.norm(),
        bound: (sorted.len() as f64 * m.powi(word.len() as i32)).sqrt(),
    })
}

/// `‖Σ_i a†(f_i)ξ_i‖` against `√(n M_T) max‖ξ_i‖` for orthonormal `f_i` and `ξ_i` at level `k`.
pub fn orthonormal_sum_check<M: FockModel + ?Sized>(
    fock: &M,
    fs: &[ComplexVector],
    xis: &[ComplexVector],
    k: usize,
    tol: f64,
) -> Result<BoundCheck> {
    if fs.len() != xis.len() || fs.is_empty() {
        return Err(Error::Invalid("need one vector ξ_i per f_i".into()));
    }
    if k >= fock.n_max() {
        return Err(Error::Invalid(format!(
            "level {k} has no room to create below N_max = {}",
            fock.n_max()
        )));
    }
    let d = fock.window().dim();
    let gram = ComplexMatrix::from_fn(fs.len(), fs.len(), |i, j| fs[i].dotc(&fs[j]));
    let residual = operator_norm(&(gram - identity(fs.len())));
    if residual > tol || fs.iter().any(|f| f.len() != d) {
        return Err(Error::NotOrthonormal { residual });
    }
    let mut total = ComplexVector::zeros(fock.total_dim());
    let mut largest: f64 = 0.0;
    for (f, xi) in fs.iter().zip(xis) {
        largest = largest.max(xi.norm());
        total += fock.creator_vec(f)?.apply(&fock.embed(k, xi)?);
    }
    Ok(BoundCheck {
        lhs: total.norm(),
        bound: (fs.len() as f64 * fock.m_t_estimate()).sqrt() * largest,
    })
}

/// Least `k ≥ 1` with `α^k(W)·W = 0` in the monotone algebra, searched up to `width + 2`.
pub fn nilpotence_witness(word: &ObservableWord) -> Result<u64> {
    if word.is_identity() {
        return Err(Error::Invalid("the empty word has no nilpotence witness".into()));
    }
    let cap = word.width() as u64 + 2;
    let x = reduce(word);
    for k in 1..=cap {
        if x.shift(k as i64).multiply(&x) == NormalForm::Zero {
            return Ok(k);
        }
    }
    Err(Error::NoNilpotenceWitness {
        word: word.to_string(),
        cap,
    })
}

/// Highest level visited while applying `W` to level `n`.
fn peak_level(word: &ObservableWord, n: usize) -> Option<usize> {
    let mut level = n as i64;
    let mut peak = level;
    for l in word.letters.iter().rev() {
        level += if l.is_creator() { 1 } else { -1 };
        if level < 0 {
            return None;
        }
        peak = peak.max(level);
    }
    Some(peak as usize)
}

/// Cesàro curve of `E^m α^k(W) E^n` towards `δ_{mn} ω(W) E^m`, bounded by `√(N M_T^r)/N`.
pub fn compressed_mixing<M: FockModel + ?Sized>(
    fock: &M,
    m: usize,
    word: &ObservableWord,
    n: usize,
    n_list: &[usize],
) -> Result<MixingCurve> {
    let dims = fock.level_dims().to_vec();
    if m > fock.exact_top() || n > fock.exact_top() {
        return Err(Error::Invalid(format!(
            "levels {m}, {n} must not exceed {}",
            fock.exact_top()
        )));
    }
    if let Some(peak) = peak_level(word, n) {
        if peak > fock.n_max() {
            return Err(Error::Invalid(format!(
                "{word} reaches level {peak} from level {n}; N_max is {}",
                fock.n_max()
            )));
        }
    }
    let em = FockOperator::level_projection(&dims, m);
    let en = FockOperator::level_projection(&dims, n);
    let target = if m == n && word.degree() == 0 {
        em.scale(vacuum_value(fock, word)?)
    } else {
        FockOperator::zero(&dims)
    };
    let mt = fock.m_t_estimate();
    let r = word.len() as i32;
    let entries = cesaro_sums(fock, word, n_list)?
        .into_iter()
        .map(|(count, sum)| {
            let mean = sum.scale(C64::new(1.0 / count as f64, 0.0));
            let compressed = &(&em * &mean) * &en;
            MixingEntry {
                n: count,
                distance: (&compressed - &target).norm(),
                bound: Some((count as f64 * mt.powi(r)).sqrt() / count as f64),
            }
        })
        .collect();
    Ok(MixingCurve { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_standard, Kind};
    use crate::fock::boolean_fock::specialized_boolean_fock;
    use crate::fock::gram::build_fock;
    use crate::fock::monotone::specialized_monotone_fock;
    use crate::linalg::basis_vector;

    fn w(s: &str) -> ObservableWord {
        s.parse().unwrap()
    }

    fn win(lo: i64, hi: i64) -> ModeWindow {
        ModeWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_word(&w("a(0)c(0)"), 3, win(0, 5)).unwrap(), w("a(3)c(3)"));
        assert_eq!(shift_word(&ObservableWord::identity(), 2, win(0, 1)).unwrap(), ObservableWord::identity());
        assert_eq!(shift_word(&w("c(1)a(2)"), -1, win(0, 5)).unwrap(), w("c(0)a(1)"));
        match shift_word(&w("c(1)a(2)"), 5, win(0, 5)) {
            Err(Error::WindowOverflow { required, .. }) => assert_eq!(required, win(0, 7)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn monotone_is_not_norm_ergodic() {
        let f = specialized_monotone_fock(win(0, 30), Some(2)).unwrap();
        let p = FockOperator::vacuum_projection(f.level_dims());
        let ns: Vec<usize> = (1..=29).collect();
        let curve = cesaro_distance(&f, &w("a(0)c(0)"), &p, &ns).unwrap();
        assert!(curve.entries.iter().all(|e| (e.distance - 1.0).abs() < 1e-12));
        let e3 = f.basis_vector(&[3]).unwrap();
        let r = vector_cesaro_residual(&f, &w("a(0)c(0)"), &p, &e3, 12).unwrap();
        assert!((r - 0.25).abs() < 1e-12);
        let e1 = f.basis_vector(&[1]).unwrap();
        let r = vector_cesaro_residual(&f, &w("a(0)c(0)"), &p, &e1, 10).unwrap();
        assert!((r - 0.1).abs() < 1e-12);
        let r = vector_cesaro_residual(&f, &w("a(0)c(0)"), &p, &f.vacuum(), 7).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn boolean_rank_one_decays() {
        let f = specialized_boolean_fock(win(0, 63));
        let zero = FockOperator::zero(f.level_dims());
        let curve = cesaro_distance(&f, &w("c(0)"), &zero, &[1, 4, 16, 64]).unwrap();
        for e in &curve.entries {
            assert!((e.distance - 1.0 / (e.n as f64).sqrt()).abs() < 1e-12);
        }
        let id = f.identity();
        let c = cesaro_distance(&f, &ObservableWord::identity(), &id, &[1, 5]).unwrap();
        assert_eq!(c.max_distance(), 0.0);
    }

    #[test]
    fn csv_layout() {
        let c = MixingCurve {
            entries: vec![
                MixingEntry { n: 1, distance: 1.0, bound: None },
                MixingEntry { n: 2, distance: 0.5, bound: Some(0.75) },
            ],
        };
        assert_eq!(
            c.to_csv(),
            "n,distance,bound\n1,1.000000000000,\n2,0.500000000000,0.750000000000\n"
        );
    }

    #[test]
    fn sum_bounds() {
        let m = specialized_monotone_fock(win(0, 12), Some(3)).unwrap();
        let c = sum_bound_check(&m, &w("c(0)a(1)"), &[0, 5, 10]).unwrap();
        assert!(c.holds(1e-10) && (c.bound - 3f64.sqrt()).abs() < 1e-12);
        let single = sum_bound_check(&m, &w("c(0)a(1)"), &[2]).unwrap();
        assert!((single.lhs - 1.0).abs() < 1e-12);
        let b = specialized_boolean_fock(win(0, 5));
        let c = sum_bound_check(&b, &w("c(0)a(1)"), &[0, 1, 2, 3]).unwrap();
        assert!(c.holds(1e-10) && c.bound == 2.0);
        assert!(sum_bound_check(&m, &w("a(0)c(1)"), &[0]).is_err());
        assert!(sum_bound_check(&m, &w("c(0)"), &[1, 1]).is_err());
    }

    #[test]
    fn orthonormal_sum() {
        let m = specialized_monotone_fock(win(0, 5), Some(3)).unwrap();
        let fs: Vec<_> = (0..3).map(|i| basis_vector(6, i)).collect();
        let xis: Vec<_> = (0..3)
            .map(|i| ComplexVector::from_fn(6, |j, _| C64::new((i + j) as f64 * 0.1, 1.0)))
            .collect();
        assert!(orthonormal_sum_check(&m, &fs, &xis, 1, 1e-10).unwrap().holds(1e-10));
        let b = specialized_boolean_fock(win(0, 3));
        let fs: Vec<_> = (0..2).map(|i| basis_vector(4, i)).collect();
        let xis = vec![
            ComplexVector::from_element(1, C64::new(3.0, 0.0)),
            ComplexVector::from_element(1, C64::new(0.0, 4.0)),
        ];
        let c = orthonormal_sum_check(&b, &fs, &xis, 0, 1e-10).unwrap();
        assert!((c.lhs - 5.0).abs() < 1e-12 && (c.bound - 2f64.sqrt() * 4.0).abs() < 1e-12);
        let bad = vec![basis_vector(4, 0), basis_vector(4, 0)];
        assert!(matches!(
            orthonormal_sum_check(&b, &bad, &xis, 0, 1e-10),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn nilpotence() {
        assert_eq!(nilpotence_witness(&w("c(0)")).unwrap(), 1);
        assert_eq!(nilpotence_witness(&w("c(0)a(1)")).unwrap(), 1);
        assert_eq!(nilpotence_witness(&w("a(2)a(0)")).unwrap(), 1);
        assert_eq!(nilpotence_witness(&w("c(2)c(1)")).unwrap(), 1);
        // A single annihilator and a bare pivot have no witness: a_1a_0 and a_1a†_1a_0a†_0 are nonzero.
        assert!(matches!(nilpotence_witness(&w("a(0)")), Err(Error::NoNilpotenceWitness { .. })));
        assert!(matches!(nilpotence_witness(&w("a(0)c(0)")), Err(Error::NoNilpotenceWitness { .. })));
    }

    #[test]
    fn compressed_bose_mixing() {
        let f = build_fock(&build_standard(Kind::Bose, win(0, 15)), 2).unwrap();
        let curve = compressed_mixing(&f, 1, &w("c(0)a(1)"), 1, &[1, 2, 4, 8, 15]).unwrap();
        assert!(curve.within_bounds(1e-10));
        assert!(curve.entries.last().unwrap().distance < curve.entries[0].distance);
        let zero = compressed_mixing(&f, 0, &w("c(0)a(1)"), 1, &[1, 3]).unwrap();
        assert_eq!(zero.max_distance(), 0.0);
        let id = compressed_mixing(&f, 1, &ObservableWord::identity(), 1, &[1, 3]).unwrap();
        assert!(id.max_distance() < 1e-12);
    }
}
