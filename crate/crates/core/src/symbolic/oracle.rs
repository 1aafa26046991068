//! Numeric evaluation of symbolic monotone expressions on the explicit Fock model.

use serde::Serialize;

use crate::catalog::ModeWindow;
use crate::error::{Error, Result};
use crate::fock::model::FockModel;
use crate::fock::monotone::{specialized_monotone_fock, MonotoneFock};
use crate::fock::operator::FockOperator;
use crate::linalg::C64;
use crate::symbolic::coefficient::{Coefficient, Exact};
use crate::symbolic::normal_form::NormalForm;
use crate::symbolic::polynomial::{infinity_state, MonotonePolynomial};
use crate::word::ObservableWord;

/// Matrix of `Σ c_f f` on the given model.
pub fn numeric_matrix<C: Coefficient>(
    p: &MonotonePolynomial<C>,
    model: &MonotoneFock,
) -> Result<FockOperator> {
    let mut out = FockOperator::zero(model.level_dims());
    for (form, c) in p.terms() {
        let op = model.word_operator(&form.to_word())?;
        out = &out + &op.scale(c.to_c64());
    }
    Ok(out)
}

pub fn numeric_matrix_on<C: Coefficient>(
    p: &MonotonePolynomial<C>,
    window: ModeWindow,
    n_max: usize,
) -> Result<FockOperator> {
    numeric_matrix(p, &specialized_monotone_fock(window, Some(n_max))?)
}

pub fn word_matrix(word: &ObservableWord, model: &MonotoneFock) -> Result<FockOperator> {
    model.word_operator(word)
}

/// Window one mode beyond the support on each side. `N_max` is the full window when it has at
/// most ten modes, else one above the longest form.
pub fn oracle_window<C: Coefficient>(
    ps: &[&MonotonePolynomial<C>],
) -> (ModeWindow, usize) {
    let supports: Vec<(i64, i64)> = ps.iter().filter_map(|p| p.support()).collect();
    let lo = supports.iter().map(|s| s.0).min().unwrap_or(0);
    let hi = supports.iter().map(|s| s.1).max().unwrap_or(0);
    let len = ps.iter().map(|p| p.max_len()).max().unwrap_or(0);
    let window = ModeWindow { lo: lo - 1, hi: hi + 1 };
    let n_max = if window.dim() <= 10 {
        window.dim()
    } else {
        len + 1
    };
    (window, n_max)
}

/// Largest entry of the difference on the oracle window.
pub fn numeric_difference<C: Coefficient>(
    x: &MonotonePolynomial<C>,
    y: &MonotonePolynomial<C>,
) -> Result<f64> {
    let (window, n_max) = oracle_window(&[x, y]);
    let m = specialized_monotone_fock(window, Some(n_max))?;
    Ok((&numeric_matrix(x, &m)? - &numeric_matrix(y, &m)?).max_abs())
}

/// Structural equality, falling back to the numeric oracle.
pub fn polynomials_equal<C: Coefficient>(
    x: &MonotonePolynomial<C>,
    y: &MonotonePolynomial<C>,
    tol: f64,
) -> Result<bool> {
    if x.structural_equal(y) {
        return Ok(true);
    }
    Ok(numeric_difference(x, y)? <= tol)
}

fn deep_model<C: Coefficient>(p: &MonotonePolynomial<C>, window: ModeWindow) -> Result<MonotoneFock> {
    if let Some((min, _)) = p.support() {
        if window.lo >= min {
            return Err(Error::Invalid(format!(
                "window {window} must start strictly below mode {min}"
            )));
        }
    }
    if let Some((_, max)) = p.support() {
        window.index(max)?;
    }
    let n_max = (p.max_len() + 1).min(window.dim());
    specialized_monotone_fock(window, Some(n_max))
}

/// `⟨X e_(lo), e_(lo)⟩`.
pub fn infinity_witness<C: Coefficient>(p: &MonotonePolynomial<C>, window: ModeWindow) -> Result<C64> {
    let m = deep_model(p, window)?;
    let e = m.basis_vector(&[window.lo])?;
    Ok(numeric_matrix(p, &m)?.expectation(&e))
}

/// `⟨X Ω, Ω⟩` on a model large enough to be exact.
pub fn vacuum_expectation<C: Coefficient>(p: &MonotonePolynomial<C>) -> Result<C64> {
    let (window, n_max) = oracle_window(&[p]);
    let m = specialized_monotone_fock(window, Some(n_max))?;
    Ok(numeric_matrix(p, &m)?.expectation(&m.vacuum()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormLowerBound {
    pub norm_estimate: f64,
    pub alpha_abs: f64,
}

impl NormLowerBound {
    pub fn holds(&self, tol: f64) -> bool {
        self.norm_estimate >= self.alpha_abs - tol
    }
}

/// Truncated norm of `X + αI` against `|α|`.
pub fn norm_lower_bound_check<C: Coefficient>(
    p: &MonotonePolynomial<C>,
    window: ModeWindow,
) -> Result<NormLowerBound> {
    let m = deep_model(p, window)?;
    Ok(NormLowerBound {
        norm_estimate: numeric_matrix(p, &m)?.norm(),
        alpha_abs: infinity_state(p).to_c64().norm(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SGeneratorReport {
    pub i: i64,
    /// Normal-form expansion of `s_i s_{i+1}²` before number pairs are rewritten.
    pub expansion: String,
    pub rewritten: String,
    /// Rewritten expansion is structurally `a†_i`.
    pub structural: bool,
    /// Largest entry of `s_i s_{i+1}² − a†_i` on the oracle window.
    pub oracle_residual: f64,
    /// Largest entry of `a†_{i+1}a_{i+1} − (a_i a†_i − a_{i+1}a†_{i+1})`.
    pub number_relation_residual: f64,
    /// `s_{i+1}² s_i = a_i`, structurally after rewriting.
    pub adjoint_structural: bool,
}

impl SGeneratorReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.structural
            && self.adjoint_structural
            && self.oracle_residual <= tol
            && self.number_relation_residual <= tol
    }
}

fn s_gen(i: i64) -> MonotonePolynomial<Exact> {
    let mut p = MonotonePolynomial::zero();
    p.add_term(
        NormalForm::lambda(vec![], vec![i]).expect("valid"),
        Exact::from_decimal("1").expect("valid"),
    );
    p.add_term(
        NormalForm::lambda(vec![i], vec![]).expect("valid"),
        Exact::from_decimal("1").expect("valid"),
    );
    p
}

/// `s_i s_{i+1}² = a†_i` with `s_k = a_k + a†_k`.
pub fn s_generator_identity_check(i: i64) -> Result<SGeneratorReport> {
    let one = || Exact::from_decimal("1").expect("valid");
    let s_next = s_gen(i + 1);
    let expansion = s_gen(i).mul(&s_next).mul(&s_next);
    let rewritten = expansion.eliminate_number_pairs();
    let target = MonotonePolynomial::from_form(NormalForm::lambda(vec![i], vec![])?, one());
    let adjoint_expansion = s_next.mul(&s_next).mul(&s_gen(i)).eliminate_number_pairs();
    let adjoint_target = MonotonePolynomial::from_form(NormalForm::lambda(vec![], vec![i])?, one());
    let number = MonotonePolynomial::from_form(NormalForm::lambda(vec![i + 1], vec![i + 1])?, one());
    let relation = MonotonePolynomial::from_form(NormalForm::pi(vec![], i, vec![])?, one())
        .sub(&MonotonePolynomial::from_form(NormalForm::pi(vec![], i + 1, vec![])?, one()));
    Ok(SGeneratorReport {
        i,
        expansion: expansion.to_string(),
        rewritten: rewritten.to_string(),
        structural: rewritten.structural_equal(&target),
        oracle_residual: numeric_difference(&expansion, &target)?,
        number_relation_residual: numeric_difference(&number, &relation)?,
        adjoint_structural: adjoint_expansion.structural_equal(&adjoint_target),
    })
}
