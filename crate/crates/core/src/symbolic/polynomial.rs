//! Finite linear combinations of normal forms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbolic::coefficient::Coefficient;
use crate::symbolic::normal_form::{reduce, NormalForm};
use crate::word::{Letter, ObservableWord};

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonePolynomial<C: Coefficient> {
    terms: BTreeMap<NormalForm, C>,
}

impl<C: Coefficient> Default for MonotonePolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> MonotonePolynomial<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::from_form(NormalForm::identity(), c)
    }

    pub fn from_form(form: NormalForm, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(form, c);
        p
    }

    pub fn from_word(word: &ObservableWord, c: C) -> Self {
        Self::from_form(reduce(word), c)
    }

    /// `Σ c_w · reduce(w)`.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (C, &'a ObservableWord)>) -> Self {
        let mut p = Self::zero();
        for (c, w) in terms {
            p.add_term(reduce(w), c);
        }
        p
    }

    pub fn add_term(&mut self, form: NormalForm, c: C) {
        if form.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(form.clone()).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&form);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalForm, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, form: &NormalForm) -> C {
        self.terms.get(form).cloned().unwrap_or_else(C::zero)
    }

    /// The single form when exactly one term with coefficient 1 is present.
    pub fn as_single_form(&self) -> Option<&NormalForm> {
        match self.terms.iter().next() {
            Some((f, c)) if self.terms.len() == 1 && c.is_one() => Some(f),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-C::one()))
    }

    pub fn scale(&self, z: C) -> Self {
        let mut out = Self::zero();
        for (f, c) in &self.terms {
            out.add_term(f.clone(), c.clone() * z.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (f, c) in &self.terms {
            for (g, d) in &other.terms {
                out.add_term(f.multiply(g), c.clone() * d.clone());
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (f, c) in &self.terms {
            out.add_term(f.adjoint(), c.conj());
        }
        out
    }

    pub fn shift(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (f, c) in &self.terms {
            out.add_term(f.shift(k), c.clone());
        }
        out
    }

    /// `(min, max)` over all indices, `None` for scalars.
    pub fn support(&self) -> Option<(i64, i64)> {
        let modes: Vec<i64> = self.terms.keys().flat_map(NormalForm::modes).collect();
        Some((*modes.iter().min()?, *modes.iter().max()?))
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(NormalForm::len).max().unwrap_or(0)
    }

    pub fn structural_equal(&self, other: &Self) -> bool {
        self == other
    }

    /// Rewrites every boundary `a†_k a_k` as `a_{k−1}a†_{k−1} − a_k a†_k` until none is left.
    pub fn eliminate_number_pairs(&self) -> Self {
        let mut current = self.clone();
        for _ in 0..64 {
            let mut next = Self::zero();
            let mut changed = false;
            for (f, c) in &current.terms {
                match number_pair_split(f) {
                    Some((prefix, k, suffix)) => {
                        changed = true;
                        let with = |m: i64| {
                            let mut w = prefix.clone();
                            w.push(Letter::annihilator(m));
                            w.push(Letter::creator(m));
                            w.extend_from_slice(&suffix);
                            reduce(&ObservableWord::new(w))
                        };
                        next.add_term(with(k - 1), c.clone());
                        next.add_term(with(k), -c.clone());
                    }
                    None => next.add_term(f.clone(), c.clone()),
                }
            }
            current = next;
            if !changed {
                break;
            }
        }
        current
    }
}

/// Splits a λ-form `…a†_k a_k…` at its creator/annihilator boundary.
fn number_pair_split(f: &NormalForm) -> Option<(Vec<Letter>, i64, Vec<Letter>)> {
    match f {
        NormalForm::Lambda {
            creators,
            annihilators,
        } => {
            let (&k, &k2) = (creators.last()?, annihilators.first()?);
            if k != k2 {
                return None;
            }
            let prefix = creators[..creators.len() - 1]
                .iter()
                .map(|&i| Letter::creator(i))
                .collect();
            let suffix = annihilators[1..]
                .iter()
                .map(|&j| Letter::annihilator(j))
                .collect();
            Some((prefix, k, suffix))
        }
        _ => None,
    }
}

/// Vacuum expectation: identity coefficient plus coefficients of bare pivots `a_k a†_k`.
pub fn vacuum_state<C: Coefficient>(p: &MonotonePolynomial<C>) -> C {
    p.terms()
        .filter(|(f, _)| f.is_identity() || f.bare_pivot().is_some())
        .fold(C::zero(), |acc, (_, c)| acc + c.clone())
}

/// State at infinity: the identity coefficient.
pub fn infinity_state<C: Coefficient>(p: &MonotonePolynomial<C>) -> C {
    p.coefficient(&NormalForm::identity())
}

/// `(1−γ)ω_∞ + γω`.
pub fn invariant_state<C: Coefficient>(gamma: &C, p: &MonotonePolynomial<C>) -> Result<C> {
    if !gamma.is_unit_interval() {
        return Err(Error::GammaOutOfRange(gamma.render()));
    }
    Ok((C::one() - gamma.clone()) * infinity_state(p) + gamma.clone() * vacuum_state(p))
}

impl<C: Coefficient> fmt::Display for MonotonePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (form, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative_real() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if form.is_identity() {
                write!(f, "{}", mag.render())?;
            } else if mag.is_one() {
                write!(f, "{form}")?;
            } else {
                write!(f, "{}*{form}", mag.render())?;
            }
        }
        Ok(())
    }
}
