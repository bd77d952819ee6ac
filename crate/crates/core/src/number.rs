//! Exact rational scalars and their text form.
//!
//! Every exact quantity in the crate is a [`Rational`]. On the wire a rational
//! is a string, either `"p/q"` or a finite decimal such as `"-0.125"` or
//! `"3e-2"`; decimals are converted exactly, never through `f64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Largest decimal exponent accepted by [`parse_rational`].
pub const MAX_EXPONENT: i64 = 4096;
/// Longest numeric literal accepted by [`parse_rational`], in bytes.
pub const MAX_LITERAL_LEN: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty numeric literal")]
    Empty,
    #[error("numeric literal longer than {MAX_LITERAL_LEN} bytes")]
    TooLong,
    #[error("invalid numeric literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("exponent out of range in {0:?}")]
    ExponentRange(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, an integer, or a decimal with optional exponent.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if s.len() > MAX_LITERAL_LEN {
        return Err(ParseRationalError::TooLong);
    }
    if let Some((num, den)) = s.split_once('/') {
        let p = parse_integer(num.trim()).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        let q = parse_integer(den.trim()).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        if q.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.into()));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(s: &str) -> Result<Rational, ParseRationalError> {
    let invalid = || ParseRationalError::Invalid(s.into());
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp_text = &s[i + 1..];
            let exp_digits = exp_text.strip_prefix(['+', '-']).unwrap_or(exp_text);
            if exp_digits.is_empty() || !exp_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            let e: i64 = exp_text
                .parse()
                .map_err(|_| ParseRationalError::ExponentRange(s.into()))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, unsigned) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(invalid());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    let scale = exponent - frac.len() as i64;
    if scale.abs() > MAX_EXPONENT + MAX_LITERAL_LEN as i64 || exponent.abs() > MAX_EXPONENT {
        return Err(ParseRationalError::ExponentRange(s.into()));
    }
    let digits = format!("{whole}{frac}");
    let mut value: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| invalid())?
    };
    if negative {
        value = -value;
    }
    let ten = BigInt::from(10u32);
    let power: BigInt = Pow::pow(&ten, scale.unsigned_abs());
    Ok(if scale >= 0 {
        Rational::from_integer(value * power)
    } else {
        Rational::new(value, power)
    })
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Exact `n`-th root when `q` is the `n`-th power of a rational.
pub fn exact_root(q: &Rational, n: u32) -> Option<Rational> {
    if n == 0 || (q.is_negative() && n.is_multiple_of(2)) {
        return None;
    }
    let root_of = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(n);
        (Pow::pow(&r, n) == *v).then_some(r)
    };
    let p = root_of(q.numer())?;
    let d = root_of(q.denom())?;
    Some(Rational::new(p, d))
}

/// `base^exp` for a non-negative integer exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
