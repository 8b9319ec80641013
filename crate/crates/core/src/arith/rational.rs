//! Rational numbers and their literal syntax.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps values in
//! canonical reduced form with a positive denominator. This module adds the
//! exact literal grammar shared by every file format (`p/q`, with `q`
//! omitted when it is one) and a few torus helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

pub type Rational = num_rational::BigRational;

/// Failure to read a numeric literal.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LiteralError {
    #[error("empty literal")]
    Empty,
    #[error("invalid character {ch:?} at offset {offset} in literal {literal:?}")]
    BadChar {
        literal: String,
        ch: char,
        offset: usize,
    },
    #[error("decimal literal {0:?} is not exact; write it as p/q")]
    Decimal(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed literal {0:?}")]
    Malformed(String),
    #[error("literal {0:?} is not a Gaussian integer")]
    NotIntegral(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q`, `-p/q`, `+p/q`. Anything else, decimals included, is
/// rejected.
pub fn parse_rational(s: &str) -> Result<Rational, LiteralError> {
    if s.is_empty() {
        return Err(LiteralError::Empty);
    }
    if s.contains('.') {
        return Err(LiteralError::Decimal(s.to_string()));
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    for (offset, ch) in body.char_indices() {
        if !(ch.is_ascii_digit() || ch == '/') {
            return Err(LiteralError::BadChar {
                literal: s.to_string(),
                ch,
                offset: offset + (s.len() - body.len()),
            });
        }
    }
    let mut parts = body.split('/');
    let num = parts.next().unwrap_or("");
    let den = parts.next();
    if parts.next().is_some() || num.is_empty() || den == Some("") {
        return Err(LiteralError::Malformed(s.to_string()));
    }
    let mut n: BigInt = num
        .parse()
        .map_err(|_| LiteralError::Malformed(s.to_string()))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| LiteralError::Malformed(s.to_string()))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(LiteralError::ZeroDenominator(s.to_string()));
    }
    if neg {
        n = -n;
    }
    Ok(Rational::new(n, d))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// `p/q` printer wrapper; `BigRational`'s own `Display` already matches the
/// literal syntax, this only exists to make intent explicit at call sites.
pub struct Lit<'a>(pub &'a Rational);

impl fmt::Display for Lit<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("+6/3").unwrap(), int(2));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
    }

    #[test]
    fn rejects_inexact_and_malformed() {
        assert!(matches!(parse_rational("0.5"), Err(LiteralError::Decimal(_))));
        assert!(matches!(
            parse_rational("1/0"),
            Err(LiteralError::ZeroDenominator(_))
        ));
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("/2").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert!(parse_rational("1 /2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&rat(7, 2)), rat(1, 2));
        assert_eq!(frac(&int(-4)), int(0));
    }

    #[test]
    fn printing_round_trips() {
        for s in ["0", "1/2", "-7/3", "12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(Lit(&r).to_string(), s);
        }
    }
}
