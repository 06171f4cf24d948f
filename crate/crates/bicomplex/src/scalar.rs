//! The coefficient field ℚ(i) and its canonical text syntax.
//!
//! Every computation in this crate is exact: scalars are Gaussian rationals,
//! i.e. complex numbers whose real and imaginary parts are arbitrary-precision
//! rationals. Rationals are kept normalized (positive denominator, coprime with
//! the numerator) by `num-rational`, so equality is structural and
//! serialization round-trips without loss.
//!
//! The text syntax accepted and produced here is used by every file format of
//! the crate: `a/b`, `a`, `a/b i`, `(a/b + c/d i)`, with optional signs, and a
//! denominator of 1 omitted.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use std::fmt::Debug;
use std::ops::Neg;

/// Gaussian rational: the scalar type all concrete computations run over.
pub type Scalar = Complex<BigRational>;

/// Rational number used for structure-equation parameters.
pub type Rational = BigRational;

/// Field bound for the generic linear algebra core.
///
/// Anything satisfying the `num-traits` field-like operations works; the crate
/// instantiates it with [`Scalar`] only, but the algorithms do not care.
pub trait FieldScalar: Num + Clone + Neg<Output = Self> + Debug {}

impl<T> FieldScalar for T where T: Num + Clone + Neg<Output = Self> + Debug {}

/// Scalar from an integer.
pub fn from_int(n: i64) -> Scalar {
    Complex::new(
        BigRational::from_integer(BigInt::from(n)),
        BigRational::zero(),
    )
}

/// Scalar `a/b` (b must be nonzero).
pub fn from_ratio(a: i64, b: i64) -> Scalar {
    Complex::new(rational(a, b), BigRational::zero())
}

/// Scalar `(a/b) + (c/d) i`.
pub fn gaussian(a: i64, b: i64, c: i64, d: i64) -> Scalar {
    Complex::new(rational(a, b), rational(c, d))
}

/// The imaginary unit.
pub fn imaginary_unit() -> Scalar {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Rational `a/b`.
pub fn rational(a: i64, b: i64) -> Rational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Real rational as a scalar.
pub fn from_rational(r: Rational) -> Scalar {
    Complex::new(r, BigRational::zero())
}

fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form of a scalar.
///
/// Zero is `0`, pure reals are `a` or `a/b`, pure imaginaries are `c i` or
/// `c/d i`, and mixed values are parenthesized `(a/b + c/d i)`. The output is
/// unique per value, so byte-level report determinism reduces to value-level
/// determinism.
pub fn format_scalar(s: &Scalar) -> String {
    let re_zero = s.re.is_zero();
    let im_zero = s.im.is_zero();
    if im_zero {
        return format_rational(&s.re);
    }
    if re_zero {
        return format!("{} i", format_rational(&s.im));
    }
    if s.im.is_negative() {
        format!(
            "({} - {} i)",
            format_rational(&s.re),
            format_rational(&(-s.im.clone()))
        )
    } else {
        format!(
            "({} + {} i)",
            format_rational(&s.re),
            format_rational(&s.im)
        )
    }
}

/// Error from scalar or rational text parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal `{input}`: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

fn err(input: &str, reason: impl Into<String>) -> ParseScalarError {
    ParseScalarError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parse a plain rational `a`, `a/b` with optional sign.
pub fn parse_rational(text: &str) -> Result<Rational, ParseScalarError> {
    let t = text.trim();
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (-1, r.trim_start()),
        None => (1, t.strip_prefix('+').unwrap_or(t).trim_start()),
    };
    let (num_s, den_s) = match rest.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (rest, "1"),
    };
    if num_s.is_empty() || !num_s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(text, "expected an integer numerator"));
    }
    if den_s.is_empty() || !den_s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(text, "expected an integer denominator"));
    }
    let num = BigInt::from_str_radix(num_s, 10).map_err(|e| err(text, e.to_string()))?;
    let den = BigInt::from_str_radix(den_s, 10).map_err(|e| err(text, e.to_string()))?;
    if den.is_zero() {
        return Err(err(text, "zero denominator"));
    }
    Ok(BigRational::new(num * BigInt::from(sign), den))
}

/// Parse the scalar text syntax.
///
/// Accepted forms: `a`, `a/b`, `a i`, `a/b i`, bare `i`/`-i`, and the
/// parenthesized combination `(a/b + c/d i)` (either sign). Whitespace between
/// tokens is optional.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(err(text, "empty literal"));
    }
    if let Some(inner) = t.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| err(text, "missing closing parenthesis"))?
            .trim();
        // Split at the last top-level +/- that is not the leading sign.
        let bytes = inner.as_bytes();
        let mut split_at = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if b == b'+' || b == b'-' {
                split_at = Some(idx);
            }
        }
        let idx = split_at.ok_or_else(|| err(text, "expected `re ± im i` inside parentheses"))?;
        let (re_s, im_s) = (inner[..idx].trim(), inner[idx..].trim());
        let re = parse_rational(re_s)?;
        let im_part = parse_imaginary(im_s)
            .ok_or_else(|| err(text, "imaginary part must end with `i`"))??;
        return Ok(Complex::new(re, im_part));
    }
    if let Some(im) = parse_imaginary(t) {
        return Ok(Complex::new(BigRational::zero(), im?));
    }
    Ok(Complex::new(parse_rational(t)?, BigRational::zero()))
}

/// `Some(Ok(c))` when the text is `c i`-shaped, `None` when it does not end in `i`.
fn parse_imaginary(t: &str) -> Option<Result<Rational, ParseScalarError>> {
    let body = t.strip_suffix('i')?;
    // Reject identifiers like `phi`: the char before `i` must not be a letter.
    if body.chars().last().is_some_and(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    let body = body.trim();
    if body.is_empty() || body == "+" {
        return Some(Ok(BigRational::one()));
    }
    if body == "-" {
        return Some(Ok(-BigRational::one()));
    }
    Some(parse_rational(body))
}

/// Canonical rational text (`a` or `a/b`).
pub fn format_rational_text(r: &Rational) -> String {
    format_rational(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trips() {
        let cases = [
            from_int(0),
            from_int(7),
            from_int(-3),
            from_ratio(22, 7),
            from_ratio(-1, 2),
            imaginary_unit(),
            -imaginary_unit(),
            gaussian(0, 1, -5, 3),
            gaussian(1, 2, 3, 4),
            gaussian(-1, 2, -3, 4),
        ];
        for s in &cases {
            let text = format_scalar(s);
            let back = parse_scalar(&text).unwrap();
            assert_eq!(&back, s, "round trip through `{text}`");
        }
    }

    #[test]
    fn parse_accepts_spec_forms() {
        assert_eq!(parse_scalar("3").unwrap(), from_int(3));
        assert_eq!(parse_scalar("-3/4").unwrap(), from_ratio(-3, 4));
        assert_eq!(parse_scalar("1/2 i").unwrap(), gaussian(0, 1, 1, 2));
        assert_eq!(parse_scalar("i").unwrap(), imaginary_unit());
        assert_eq!(parse_scalar("-i").unwrap(), -imaginary_unit());
        assert_eq!(parse_scalar("(1/2 + 3/4 i)").unwrap(), gaussian(1, 2, 3, 4));
        assert_eq!(parse_scalar("(1 - 2 i)").unwrap(), gaussian(1, 1, -2, 1));
        assert_eq!(parse_scalar("(-1/2+2i)").unwrap(), gaussian(-1, 2, 2, 1));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "(1 + 2)", "x", "1..2", "(3", "2 j"] {
            assert!(parse_scalar(bad).is_err(), "should reject `{bad}`");
        }
    }

    #[test]
    fn zero_formats_bare() {
        assert_eq!(format_scalar(&from_int(0)), "0");
        assert_eq!(format_scalar(&gaussian(0, 1, 1, 1)), "1 i");
    }
}
