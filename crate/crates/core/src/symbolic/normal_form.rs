//! λ-forms and π-forms of monotone words.
//!
//! `Lambda { creators: [i_1<…<i_m], annihilators: [j_1>…>j_n] }` is
//! `a†_{i_1}⋯a†_{i_m} a_{j_1}⋯a_{j_n}`; `Pi` inserts `a_k a†_k` between the two
//! groups with `i_m < k > j_1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, LetterKind, ObservableWord};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NormalForm {
    Zero,
    Lambda {
        creators: Vec<i64>,
        annihilators: Vec<i64>,
    },
    Pi {
        creators: Vec<i64>,
        pivot: i64,
        annihilators: Vec<i64>,
    },
}

fn increasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn decreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

fn push(v: &[i64], x: i64) -> Vec<i64> {
    let mut out = v.to_vec();
    out.push(x);
    out
}

fn pop(v: &[i64]) -> Vec<i64> {
    v[..v.len() - 1].to_vec()
}

fn reversed(v: &[i64]) -> Vec<i64> {
    v.iter().rev().copied().collect()
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::Lambda {
            creators: vec![],
            annihilators: vec![],
        }
    }

    pub fn lambda(creators: Vec<i64>, annihilators: Vec<i64>) -> Result<Self> {
        if !increasing(&creators) || !decreasing(&annihilators) {
            return Err(Error::Invalid(format!(
                "λ-form needs increasing creators and decreasing annihilators, got {creators:?} {annihilators:?}"
            )));
        }
        Ok(NormalForm::Lambda {
            creators,
            annihilators,
        })
    }

    pub fn pi(creators: Vec<i64>, pivot: i64, annihilators: Vec<i64>) -> Result<Self> {
        let ok = increasing(&creators)
            && decreasing(&annihilators)
            && creators.last().is_none_or(|&c| c < pivot)
            && annihilators.first().is_none_or(|&a| a < pivot);
        if !ok {
            return Err(Error::Invalid(format!(
                "π-form constraints violated: {creators:?} {pivot} {annihilators:?}"
            )));
        }
        Ok(NormalForm::Pi {
            creators,
            pivot,
            annihilators,
        })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::Zero)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, NormalForm::Lambda { creators, annihilators } if creators.is_empty() && annihilators.is_empty())
    }

    /// Pure pivot `a_k a†_k`.
    pub fn bare_pivot(&self) -> Option<i64> {
        match self {
            NormalForm::Pi {
                creators,
                pivot,
                annihilators,
            } if creators.is_empty() && annihilators.is_empty() => Some(*pivot),
            _ => None,
        }
    }

    /// Ordering constraints of the variant.
    pub fn is_valid(&self) -> bool {
        match self {
            NormalForm::Zero => true,
            NormalForm::Lambda {
                creators,
                annihilators,
            } => Self::lambda(creators.clone(), annihilators.clone()).is_ok(),
            NormalForm::Pi {
                creators,
                pivot,
                annihilators,
            } => Self::pi(creators.clone(), *pivot, annihilators.clone()).is_ok(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            NormalForm::Zero => 0,
            NormalForm::Lambda {
                creators,
                annihilators,
            } => creators.len() + annihilators.len(),
            NormalForm::Pi {
                creators,
                annihilators,
                ..
            } => creators.len() + 2 + annihilators.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_word(&self) -> ObservableWord {
        let mut letters = Vec::new();
        match self {
            NormalForm::Zero => {}
            NormalForm::Lambda {
                creators,
                annihilators,
            } => {
                letters.extend(creators.iter().map(|&i| Letter::creator(i)));
                letters.extend(annihilators.iter().map(|&j| Letter::annihilator(j)));
            }
            NormalForm::Pi {
                creators,
                pivot,
                annihilators,
            } => {
                letters.extend(creators.iter().map(|&i| Letter::creator(i)));
                letters.push(Letter::annihilator(*pivot));
                letters.push(Letter::creator(*pivot));
                letters.extend(annihilators.iter().map(|&j| Letter::annihilator(j)));
            }
        }
        ObservableWord::new(letters)
    }

    /// All indices occurring in the form.
    pub fn modes(&self) -> Vec<i64> {
        self.to_word().letters.iter().map(|l| l.mode).collect()
    }

    pub fn adjoint(&self) -> Self {
        match self {
            NormalForm::Zero => NormalForm::Zero,
            NormalForm::Lambda {
                creators,
                annihilators,
            } => NormalForm::Lambda {
                creators: reversed(annihilators),
                annihilators: reversed(creators),
            },
            NormalForm::Pi {
                creators,
                pivot,
                annihilators,
            } => NormalForm::Pi {
                creators: reversed(annihilators),
                pivot: *pivot,
                annihilators: reversed(creators),
            },
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        let s = |v: &[i64]| v.iter().map(|x| x + k).collect::<Vec<_>>();
        match self {
            NormalForm::Zero => NormalForm::Zero,
            NormalForm::Lambda {
                creators,
                annihilators,
            } => NormalForm::Lambda {
                creators: s(creators),
                annihilators: s(annihilators),
            },
            NormalForm::Pi {
                creators,
                pivot,
                annihilators,
            } => NormalForm::Pi {
                creators: s(creators),
                pivot: pivot + k,
                annihilators: s(annihilators),
            },
        }
    }

    /// `X · letter`.
    pub fn append(&self, letter: Letter) -> Self {
        use NormalForm::*;
        let i = letter.mode;
        let create = letter.kind == LetterKind::Creator;
        match self {
            Zero => Zero,
            Lambda {
                creators,
                annihilators,
            } => match (annihilators.last(), create) {
                (Some(&j), false) => {
                    if i >= j {
                        Zero
                    } else {
                        Lambda {
                            creators: creators.clone(),
                            annihilators: push(annihilators, i),
                        }
                    }
                }
                (Some(&j), true) => {
                    if i != j {
                        Zero
                    } else if annihilators.len() >= 2 {
                        Lambda {
                            creators: creators.clone(),
                            annihilators: pop(annihilators),
                        }
                    } else if creators.last().is_none_or(|&c| c < j) {
                        Pi {
                            creators: creators.clone(),
                            pivot: j,
                            annihilators: vec![],
                        }
                    } else {
                        Lambda {
                            creators: creators.clone(),
                            annihilators: vec![],
                        }
                    }
                }
                (None, false) => Lambda {
                    creators: creators.clone(),
                    annihilators: vec![i],
                },
                (None, true) => {
                    if creators.last().is_some_and(|&c| c >= i) {
                        Zero
                    } else {
                        Lambda {
                            creators: push(creators, i),
                            annihilators: vec![],
                        }
                    }
                }
            },
            Pi {
                creators,
                pivot,
                annihilators,
            } => match (annihilators.last(), create) {
                (Some(&j), false) => {
                    if i >= j {
                        Zero
                    } else {
                        Pi {
                            creators: creators.clone(),
                            pivot: *pivot,
                            annihilators: push(annihilators, i),
                        }
                    }
                }
                (Some(&j), true) => {
                    if i != j {
                        Zero
                    } else {
                        Pi {
                            creators: creators.clone(),
                            pivot: *pivot,
                            annihilators: pop(annihilators),
                        }
                    }
                }
                (None, false) => {
                    if *pivot <= i {
                        Lambda {
                            creators: creators.clone(),
                            annihilators: vec![i],
                        }
                    } else {
                        Pi {
                            creators: creators.clone(),
                            pivot: *pivot,
                            annihilators: vec![i],
                        }
                    }
                }
                (None, true) => {
                    if *pivot < i {
                        Lambda {
                            creators: push(creators, i),
                            annihilators: vec![],
                        }
                    } else {
                        Zero
                    }
                }
            },
        }
    }

    /// `letter · X`, via `(X* · letter*)*`.
    pub fn prepend(&self, letter: Letter) -> Self {
        self.adjoint().append(letter.adjoint()).adjoint()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        if other.is_zero() {
            return NormalForm::Zero;
        }
        other
            .to_word()
            .letters
            .iter()
            .fold(self.clone(), |acc, &l| acc.append(l))
    }

    pub fn structural_equal(&self, other: &Self) -> bool {
        self == other
    }
}

/// Normal form of a word, built by appending letters on the right.
pub fn reduce(word: &ObservableWord) -> NormalForm {
    word.letters
        .iter()
        .fold(NormalForm::identity(), |acc, &l| acc.append(l))
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<String> = Vec::new();
        let render = |tag: char, v: &[i64]| v.iter().map(|x| format!("{tag}({x})")).collect::<String>();
        match self {
            NormalForm::Zero => return f.write_str("0"),
            NormalForm::Lambda {
                creators,
                annihilators,
            } => {
                groups.push(render('c', creators));
                groups.push(render('a', annihilators));
            }
            NormalForm::Pi {
                creators,
                pivot,
                annihilators,
            } => {
                groups.push(render('c', creators));
                groups.push(format!("a({pivot})c({pivot})"));
                groups.push(render('a', annihilators));
            }
        }
        groups.retain(|g| !g.is_empty());
        if groups.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&groups.join(" "))
    }
}
