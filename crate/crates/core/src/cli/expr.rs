//! Surface syntax for words and polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff '*' factor+ | factor+ | coeff
//! factor := ('a'|'c') '(' integer ')' | '1'
//! coeff  := decimal | decimal 'i' | '(' ['-'] decimal ',' ['-'] decimal ')'
//! ```
//! Whitespace is ignored. `a(i)` annihilates mode `i`, `c(i)` creates it, `1` is the identity.

use std::fmt;

use crate::error::{Error, Result};
use crate::symbolic::coefficient::{Coefficient, Exact};
use crate::symbolic::polynomial::MonotonePolynomial;
use crate::word::{Letter, ObservableWord};

/// Unreduced linear combination of words.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression<C: Coefficient> {
    pub terms: Vec<(C, ObservableWord)>,
}

impl<C: Coefficient> Expression<C> {
    pub fn to_polynomial(&self) -> MonotonePolynomial<C> {
        MonotonePolynomial::from_terms(self.terms.iter().map(|(c, w)| (c.clone(), w)))
    }

    /// The expression as a bare word, if it is one.
    pub fn as_word(&self) -> Option<&ObservableWord> {
        match self.terms.as_slice() {
            [(c, w)] if c.is_one() => Some(w),
            _ => None,
        }
    }
}

impl<C: Coefficient> fmt::Display for Expression<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (c, w)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_real();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_identity() {
                write!(f, "{}", mag.render())?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{}*{w}", mag.render())?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const EXPECTED_FACTOR: &str = "expected one of `a(`, `c(`, `1` or a coefficient";

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset,
            message: message.into(),
        })
    }

    fn unexpected<T>(&mut self, expected: &str) -> Result<T> {
        let next = self.peek();
        let at = self.pos;
        match next {
            Some(c) => self.err(at, format!("unexpected `{c}`; {expected}")),
            None => self.err(at, format!("unexpected end of input; {expected}")),
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(&format!("expected `{want}`"))
        }
    }

    /// Unsigned decimal; whitespace is not allowed inside.
    fn decimal(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && (bytes[self.pos].is_ascii_digit() || bytes[self.pos] == b'.') {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && bytes[self.pos] == b'-' {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.unexpected("expected an integer mode index");
        }
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err(start, "mode index out of range"),
        }
    }

    fn number<C: Coefficient>(&mut self, text: &str, at: usize) -> Result<C> {
        match C::from_decimal(text) {
            Some(c) => Ok(c),
            None => self.err(at, format!("malformed decimal `{text}`")),
        }
    }

    fn signed_decimal<C: Coefficient>(&mut self) -> Result<C> {
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let at = self.pos;
        let Some(text) = self.decimal() else {
            return self.unexpected("expected a decimal");
        };
        let v = self.number::<C>(text, at)?;
        Ok(if neg { -v } else { v })
    }

    fn letter(&mut self) -> Result<Letter> {
        let tag = self.peek();
        self.pos += 1;
        self.expect('(')?;
        let mode = self.integer()?;
        self.expect(')')?;
        Ok(match tag {
            Some('c') => Letter::creator(mode),
            _ => Letter::annihilator(mode),
        })
    }

    fn factors(&mut self, letters: &mut Vec<Letter>) -> Result<usize> {
        let mut count = 0;
        loop {
            match self.peek() {
                Some('a') | Some('c') => letters.push(self.letter()?),
                Some('1') => {
                    let at = self.pos;
                    match self.decimal() {
                        Some("1") => {}
                        _ => return self.err(at, "a coefficient must be followed by `*`"),
                    }
                }
                _ => return Ok(count),
            }
            count += 1;
        }
    }

    fn term<C: Coefficient>(&mut self) -> Result<(C, ObservableWord)> {
        let mut letters = Vec::new();
        let start = {
            self.skip_ws();
            self.pos
        };
        let coeff: Option<C> = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let re = self.signed_decimal::<C>()?;
                self.expect(',')?;
                let im = self.signed_decimal::<C>()?;
                self.expect(')')?;
                Some(C::from_parts(re, im))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let text = self.decimal().expect("peeked a digit");
                let mut v = self.number::<C>(text, start)?;
                if self.src[self.pos..].starts_with('i') {
                    self.pos += 1;
                    v = v * C::i();
                    Some(v)
                } else if text == "1" && self.peek() != Some('*') {
                    // The identity factor.
                    self.factors(&mut letters)?;
                    return Ok((C::one(), ObservableWord::new(letters)));
                } else {
                    Some(v)
                }
            }
            Some('a') | Some('c') => None,
            _ => return self.unexpected(EXPECTED_FACTOR),
        };
        match coeff {
            None => {
                self.factors(&mut letters)?;
                Ok((C::one(), ObservableWord::new(letters)))
            }
            Some(c) => {
                if self.peek() == Some('*') {
                    self.pos += 1;
                    if self.factors(&mut letters)? == 0 {
                        return self.unexpected("expected a factor after `*`");
                    }
                }
                Ok((c, ObservableWord::new(letters)))
            }
        }
    }

    fn expression<C: Coefficient>(&mut self) -> Result<Expression<C>> {
        let mut terms = Vec::new();
        let mut sign = C::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -C::one();
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, w) = self.term::<C>()?;
            terms.push((sign.clone() * c, w));
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = C::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -C::one();
                }
                None => break,
                Some(_) => return self.unexpected("expected `+`, `-` or end of input"),
            }
        }
        Ok(Expression { terms })
    }
}

pub fn parse_expression<C: Coefficient>(text: &str) -> Result<Expression<C>> {
    Parser { src: text, pos: 0 }.expression()
}

/// Parses and reduces with exact coefficients.
pub fn parse_polynomial(text: &str) -> Result<MonotonePolynomial<Exact>> {
    Ok(parse_expression::<Exact>(text)?.to_polynomial())
}

/// Parses a single word with unit coefficient.
pub fn parse_word(text: &str) -> Result<ObservableWord> {
    let e = parse_expression::<Exact>(text)?;
    e.as_word()
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("`{text}` is not a single word")))
}
