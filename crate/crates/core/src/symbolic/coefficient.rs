//! Scalar types for symbolic polynomials.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact complex rational.
pub type Exact = Complex<BigRational>;

pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn conj(&self) -> Self;

    fn to_c64(&self) -> Complex64;

    /// Parses an unsigned decimal such as `12`, `0.25` or `3.`.
    fn from_decimal(s: &str) -> Option<Self>;

    fn from_parts(re: Self, im: Self) -> Self;

    fn i() -> Self;

    /// True for a real value in `[0, 1]`.
    fn is_unit_interval(&self) -> bool;

    /// Canonical decimal text: `x` for reals, `(re,im)` otherwise.
    fn render(&self) -> String;

    /// Sign of the real part when the value is real, for `a − b` printing.
    fn is_negative_real(&self) -> bool;
}

impl Coefficient for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn from_decimal(s: &str) -> Option<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit() || b == b'.') {
            return None;
        }
        s.parse::<f64>().ok().map(|x| Complex64::new(x, 0.0))
    }

    fn from_parts(re: Self, im: Self) -> Self {
        Complex64::new(re.re - im.im, re.im + im.re)
    }

    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn is_unit_interval(&self) -> bool {
        self.im == 0.0 && (0.0..=1.0).contains(&self.re)
    }

    fn render(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else {
            format!("({},{})", self.re, self.im)
        }
    }

    fn is_negative_real(&self) -> bool {
        self.im == 0.0 && self.re < 0.0
    }
}

fn render_rational(x: &BigRational) -> String {
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let ten = BigInt::from(10);
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}", x.to_f64().unwrap_or(f64::NAN));
    }
    let digits = twos.max(fives);
    let scaled = x * BigRational::from_integer(num_traits::pow(ten.clone(), digits as usize));
    let int = scaled.to_integer();
    let sign = if int.is_negative() { "-" } else { "" };
    let s = int.abs().to_string();
    if digits == 0 {
        return format!("{sign}{s}");
    }
    let width = digits as usize + 1;
    let padded = format!("{s:0>width$}");
    let (head, tail) = padded.split_at(padded.len() - digits as usize);
    format!("{sign}{head}.{tail}")
}

impl Coefficient for Exact {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn from_decimal(s: &str) -> Option<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit() || b == b'.') {
            return None;
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
            return None;
        }
        let digits = format!("{int}{frac}");
        let num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let den = num_traits::pow(BigInt::from(10), frac.len());
        Some(Complex::new(BigRational::new(num, den), BigRational::zero()))
    }

    fn from_parts(re: Self, im: Self) -> Self {
        re + im * Self::i()
    }

    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn is_unit_interval(&self) -> bool {
        self.im.is_zero() && !self.re.is_negative() && self.re <= BigRational::one()
    }

    fn render(&self) -> String {
        if self.im.is_zero() {
            render_rational(&self.re)
        } else {
            format!("({},{})", render_rational(&self.re), render_rational(&self.im))
        }
    }

    fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> Exact {
        Exact::from_decimal(s).unwrap()
    }

    #[test]
    fn exact_decimals_round_trip() {
        for s in ["0", "12", "0.25", "3.5", "0.001", "100.75"] {
            assert_eq!(ex(s).render(), s);
        }
        assert_eq!(ex("2.50").render(), "2.5");
        assert_eq!(ex("7.").render(), "7");
        assert_eq!((-ex("0.5")).render(), "-0.5");
        assert_eq!(Exact::from_parts(ex("1"), -ex("2")).render(), "(1,-2)");
        assert!(Exact::from_decimal("1.2.3").is_none());
        assert!(Exact::from_decimal(".").is_none());
    }

    #[test]
    fn exact_arithmetic_is_exact() {
        let x = ex("0.1") + ex("0.2");
        assert_eq!(x, ex("0.3"));
        assert_eq!((ex("0.5") * ex("7")).render(), "3.5");
        assert!(ex("0.25").is_unit_interval());
        assert!(!ex("1.5").is_unit_interval());
    }

    #[test]
    fn float_rendering() {
        assert_eq!(Complex64::new(3.5, 0.0).render(), "3.5");
        assert_eq!(Complex64::new(1.0, -2.0).render(), "(1,-2)");
    }
}
