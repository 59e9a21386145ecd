//! Exact Gaussian-rational scalars: complex numbers `a + bi` with
//! arbitrary-precision rational real and imaginary parts.
//!
//! This is the ground field of the whole crate. Every coefficient,
//! period, integral and matrix entry is a [`GaussianRational`];
//! there is no floating point anywhere.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A complex number with exact rational real and imaginary parts.
///
/// Rationals are kept in lowest terms with positive denominator by
/// `BigRational`, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    /// `(a + bi)/q`, a convenience for test fixtures.
    pub fn complex(a: i64, b: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(a)),
            im: BigRational::from_integer(BigInt::from(b)),
        }
    }

    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `a² + b²`, the norm form of ℚ(i); zero iff the scalar is zero.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// True when the scalar is a real rational (imaginary part zero).
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        Self {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        Self {
            re: self.re - &rhs.re,
            im: self.im - &rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a+bi)(c+di) = (ac-bd) + (ad+bc)i
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self { re, im }
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self { re, im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational { re, im }
    }
}

/// Exact field division. Panics on a zero divisor; use
/// [`GaussianRational::checked_div`] where the divisor is not known
/// to be nonzero.
impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Add::add)
    }
}

fn fmt_imaginary(im: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if im.abs() == BigRational::one() {
        write!(f, "{}i", if im.is_negative() { "-" } else { "" })
    } else {
        write!(f, "{}i", im)
    }
}

/// Textual form used in every report: `p/q` rationals, `a+bi` with zero
/// parts omitted, e.g. `1/2`, `-3i`, `2+1/3i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return fmt_imaginary(&self.im, f);
        }
        write!(f, "{}", self.re)?;
        if !self.im.is_negative() {
            write!(f, "+")?;
        }
        fmt_imaginary(&self.im, f)
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> ScalarError {
    ScalarError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// One signed term of a scalar: `3`, `-1/2i`, `i`, `+2/7`.
/// Returns the parsed term and the rest of the input.
fn parse_term<'s>(full: &str, s: &'s str) -> Result<(GaussianRational, &'s str), ScalarError> {
    let mut rest = s.trim_start();
    let mut negative = false;
    if let Some(r) = rest.strip_prefix('-') {
        negative = true;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }

    // bare `i`
    if let Some(r) = rest.strip_prefix('i') {
        let v = if negative {
            -GaussianRational::i()
        } else {
            GaussianRational::i()
        };
        return Ok((v, r));
    }

    let digits = |t: &str| t.chars().take_while(|c| c.is_ascii_digit()).count();
    let n = digits(rest);
    if n == 0 {
        return Err(parse_error(full, format!("expected digits at `{rest}`")));
    }
    let numer: BigInt = rest[..n].parse().expect("digit run parses");
    rest = &rest[n..];

    let mut value = BigRational::from_integer(numer);
    if let Some(r) = rest.strip_prefix('/') {
        let d = digits(r);
        if d == 0 {
            return Err(parse_error(full, "expected denominator digits after `/`"));
        }
        let denom: BigInt = r[..d].parse().expect("digit run parses");
        if denom.is_zero() {
            return Err(parse_error(full, "zero denominator"));
        }
        value /= BigRational::from_integer(denom);
        rest = &r[d..];
    }
    if negative {
        value = -value;
    }

    let term = if let Some(r) = rest.strip_prefix('i') {
        rest = r;
        GaussianRational::new(BigRational::zero(), value)
    } else {
        GaussianRational::new(value, BigRational::zero())
    };
    Ok((term, rest))
}

/// Parses a full scalar expression: a signed sum of terms, e.g. `2+1/3i`.
pub(crate) fn parse_scalar_expr<'s>(
    full: &str,
    s: &'s str,
) -> Result<(GaussianRational, &'s str), ScalarError> {
    let (first, mut rest) = parse_term(full, s)?;
    let mut acc = first;
    loop {
        let t = rest.trim_start();
        if t.starts_with('+') || t.starts_with('-') {
            let (term, r) = parse_term(full, t)?;
            acc = acc + term;
            rest = r;
        } else {
            return Ok((acc, rest));
        }
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (value, rest) = parse_scalar_expr(s, s)?;
        if !rest.trim().is_empty() {
            return Err(parse_error(s, format!("trailing input `{}`", rest.trim())));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::complex(a, b)
    }

    #[test]
    fn product_of_conjugates_is_norm() {
        // (1+i)(1-i) = 2
        assert_eq!(gr(1, 1) * gr(1, -1), gr(2, 0));
    }

    #[test]
    fn conjugate_sum_is_real() {
        // (1/2 + 1/3 i) + (1/2 - 1/3 i) = 1
        let x = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        );
        assert_eq!(x.clone() + x.conj(), GaussianRational::one());
    }

    #[test]
    fn division_long_hand() {
        // (2-3i)/(1+i); the quotient must multiply back to the dividend.
        let num = gr(2, -3);
        let den = gr(1, 1);
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q.clone() * den, num);
        let expected = GaussianRational::new(
            BigRational::new((-1).into(), 2.into()),
            BigRational::new((-5).into(), 2.into()),
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            gr(1, 0).checked_div(&GaussianRational::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn display_grammar() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::rational(1, 2).to_string(), "1/2");
        assert_eq!(gr(0, -3).to_string(), "-3i");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let x = GaussianRational::new(
            BigRational::from_integer(2.into()),
            BigRational::new(1.into(), 3.into()),
        );
        assert_eq!(x.to_string(), "2+1/3i");
        assert_eq!(gr(2, -1).to_string(), "2-i");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1/2", "-3i", "i", "-i", "2+1/3i", "2-i", "-5/7-2i"] {
            let v: GaussianRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s, "round trip through `{s}`");
        }
        // parse accepts redundant spellings that rendering normalizes
        let v: GaussianRational = "1i".parse().unwrap();
        assert_eq!(v, GaussianRational::i());
        let v: GaussianRational = " 2 + 3i ".parse().unwrap();
        assert_eq!(v, GaussianRational::complex(2, 3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("2+".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("1 2".parse::<GaussianRational>().is_err());
    }
}
