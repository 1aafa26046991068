//! Words in creation and annihilation letters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LetterKind {
    Creator,
    Annihilator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub kind: LetterKind,
    pub mode: i64,
}

impl Letter {
    pub fn creator(mode: i64) -> Self {
        Self {
            kind: LetterKind::Creator,
            mode,
        }
    }

    pub fn annihilator(mode: i64) -> Self {
        Self {
            kind: LetterKind::Annihilator,
            mode,
        }
    }

    pub fn is_creator(&self) -> bool {
        self.kind == LetterKind::Creator
    }

    pub fn adjoint(&self) -> Self {
        let kind = match self.kind {
            LetterKind::Creator => LetterKind::Annihilator,
            LetterKind::Annihilator => LetterKind::Creator,
        };
        Self { kind, mode: self.mode }
    }

    pub fn shifted(&self, k: i64) -> Self {
        Self {
            kind: self.kind,
            mode: self.mode + k,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_creator() { 'c' } else { 'a' };
        write!(f, "{c}({})", self.mode)
    }
}

/// Product of letters, leftmost acting last; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ObservableWord {
    pub letters: Vec<Letter>,
}

impl ObservableWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(min mode, max mode)`, or `None` for the identity.
    pub fn support(&self) -> Option<(i64, i64)> {
        let min = self.letters.iter().map(|l| l.mode).min()?;
        let max = self.letters.iter().map(|l| l.mode).max()?;
        Some((min, max))
    }

    pub fn width(&self) -> i64 {
        self.support().map_or(0, |(lo, hi)| hi - lo)
    }

    pub fn shifted(&self, k: i64) -> Self {
        Self::new(self.letters.iter().map(|l| l.shifted(k)).collect())
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.letters.iter().rev().map(Letter::adjoint).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new(letters)
    }

    pub fn creators(&self) -> usize {
        self.letters.iter().filter(|l| l.is_creator()).count()
    }

    /// Net change of particle number.
    pub fn degree(&self) -> i64 {
        2 * self.creators() as i64 - self.len() as i64
    }
}

impl fmt::Display for ObservableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for ObservableWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::cli::expr::parse_word(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ObservableWord {
        s.parse().unwrap()
    }

    #[test]
    fn shifting() {
        assert_eq!(w("a(0)c(0)").shifted(3), w("a(3)c(3)"));
        assert_eq!(ObservableWord::identity().shifted(4), ObservableWord::identity());
        assert_eq!(w("c(1)a(2)").shifted(-1), w("c(0)a(1)"));
    }

    #[test]
    fn display_and_support() {
        let x = w("c(1) a(2) c(-3)");
        assert_eq!(x.to_string(), "c(1)a(2)c(-3)");
        assert_eq!(x.support(), Some((-3, 2)));
        assert_eq!(x.width(), 5);
        assert_eq!(x.adjoint().to_string(), "a(-3)c(2)a(1)");
        assert_eq!(ObservableWord::identity().to_string(), "1");
        assert_eq!(x.degree(), 1);
    }
}
