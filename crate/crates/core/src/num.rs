//! Scalar abstraction and exact parsing/formatting of rational values.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Scalar type the geometry and packing search are generic over.
///
/// Feasibility is decided by exact comparisons, so any implementor must give
/// exact `+`, `-`, `*` and a total order: arbitrary-precision rationals for
/// the solver pipeline, plain integers for the brute-force oracles. There is
/// deliberately no floating-point implementor.
pub trait Num:
    num_traits::Num + Ord + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Num for T where
    T: num_traits::Num + Ord + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// Error from [`parse_scalar`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses an exact rational from a decimal (`3`, `2.5`, `-0.75`) or a
/// fraction (`7/2`, `-3/4`). Decimal expansions convert exactly, never via
/// floating point.
pub fn parse_scalar(token: &str) -> Result<BigRational, ParseScalarError> {
    let token = token.trim();
    if token.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    if body.is_empty() {
        return Err(ParseScalarError::Malformed(token.to_string()));
    }
    let magnitude = if let Some((numer, denom)) = body.split_once('/') {
        let n =
            parse_digits(numer).ok_or_else(|| ParseScalarError::Malformed(token.to_string()))?;
        let d =
            parse_digits(denom).ok_or_else(|| ParseScalarError::Malformed(token.to_string()))?;
        if d.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(token.to_string()));
        }
        BigRational::new(n.into(), d.into())
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        // a.b == (a * 10^k + b) / 10^k with k fractional digits
        let int_digits = if int_part.is_empty() {
            BigUint::zero()
        } else {
            parse_digits(int_part).ok_or_else(|| ParseScalarError::Malformed(token.to_string()))?
        };
        if frac_part.is_empty() {
            return Err(ParseScalarError::Malformed(token.to_string()));
        }
        let frac_digits = parse_digits(frac_part)
            .ok_or_else(|| ParseScalarError::Malformed(token.to_string()))?;
        let scale = BigUint::from(10u32).pow(frac_part.len() as u32);
        BigRational::new(
            BigInt::from(int_digits * &scale + frac_digits),
            BigInt::from(scale),
        )
    } else {
        let n = parse_digits(body).ok_or_else(|| ParseScalarError::Malformed(token.to_string()))?;
        BigRational::from_integer(n.into())
    };
    Ok(if negative { -magnitude } else { magnitude })
}

fn parse_digits(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Formats a rational as `p/q`, or plain `p` when the denominator is one.
/// The value is already in lowest terms, so emission is byte-stable.
pub fn format_scalar(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Returns the integer value of `q` if it is an integer.
pub fn as_integer(value: &BigRational) -> Option<BigInt> {
    if value.denom().is_one() {
        Some(value.numer().clone())
    } else {
        None
    }
}
