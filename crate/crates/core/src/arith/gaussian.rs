//! Gaussian integers `Z[i]` and Gaussian rationals `Q(i)`.

use super::rational::{parse_rational, LiteralError, Lit, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// An element `re + im*i` of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// An element `re + im*i` of `Z[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

/// `N(x) = re^2 + im^2`.
pub fn gauss_norm(x: &GaussianInteger) -> BigInt {
    x.norm()
}

impl GaussianInteger {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInteger {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianInteger {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// The four units `1, i, -1, -i`.
    pub fn units() -> [GaussianInteger; 4] {
        [
            Self::new(1, 0),
            Self::new(0, 1),
            Self::new(-1, 0),
            Self::new(0, -1),
        ]
    }

    /// Euclidean division with the quotient rounded to the nearest lattice
    /// point, so that `N(remainder) <= N(divisor) / 2`.
    pub fn div_rem(&self, d: &GaussianInteger) -> (GaussianInteger, GaussianInteger) {
        assert!(!d.is_zero(), "division by zero Gaussian integer");
        let n = d.norm();
        let num = self * &d.conj();
        let q = GaussianInteger {
            re: round_div(&num.re, &n),
            im: round_div(&num.im, &n),
        };
        let r = self - &(&q * d);
        (q, r)
    }

    /// A greatest common divisor; unique only up to units.
    pub fn gcd(&self, other: &GaussianInteger) -> GaussianInteger {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &GaussianInteger) -> Option<GaussianInteger> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn to_rational(&self) -> GaussianRational {
        GaussianRational {
            re: Rational::from_integer(self.re.clone()),
            im: Rational::from_integer(self.im.clone()),
        }
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // floor((2a + n) / 2n)
    let two = BigInt::from(2);
    (&two * a + n).div_floor(&(&two * n))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: Rational::from_integer(re.into()),
            im: Rational::from_integer(im.into()),
        }
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn frac(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: super::rational::rat(re_num, re_den),
            im: super::rational::rat(im_num, im_den),
        }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self * &inv)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.re.denom().is_one() && self.im.denom().is_one()
    }

    pub fn to_integer(&self) -> Option<GaussianInteger> {
        self.is_integral().then(|| GaussianInteger {
            re: self.re.numer().clone(),
            im: self.im.numer().clone(),
        })
    }

    /// Least common multiple of both denominators.
    pub fn denominator(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

macro_rules! forward_binop {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

forward_binop!(GaussianRational, Add, add);
forward_binop!(GaussianRational, Sub, sub);
forward_binop!(GaussianRational, Mul, mul);

impl Add<&GaussianInteger> for &GaussianInteger {
    type Output = GaussianInteger;
    fn add(self, rhs: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussianInteger> for &GaussianInteger {
    type Output = GaussianInteger;
    fn sub(self, rhs: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussianInteger> for &GaussianInteger {
    type Output = GaussianInteger;
    fn mul(self, rhs: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianInteger {
    type Output = GaussianInteger;
    fn neg(self) -> GaussianInteger {
        GaussianInteger {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianInteger {
    type Output = GaussianInteger;
    fn neg(self) -> GaussianInteger {
        -&self
    }
}

forward_binop!(GaussianInteger, Add, add);
forward_binop!(GaussianInteger, Sub, sub);
forward_binop!(GaussianInteger, Mul, mul);

impl From<&GaussianInteger> for GaussianRational {
    fn from(x: &GaussianInteger) -> Self {
        x.to_rational()
    }
}

impl From<GaussianInteger> for GaussianRational {
    fn from(x: GaussianInteger) -> Self {
        x.to_rational()
    }
}

/// Parses `p/q+r/s*i`. Either part may be omitted, `i` alone means `1*i`,
/// and no whitespace is allowed inside the literal.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational, LiteralError> {
    if s.is_empty() {
        return Err(LiteralError::Empty);
    }
    if let Some((offset, ch)) = s.char_indices().find(|(_, c)| c.is_whitespace()) {
        return Err(LiteralError::BadChar {
            literal: s.to_string(),
            ch,
            offset,
        });
    }
    if s.contains('.') {
        return Err(LiteralError::Decimal(s.to_string()));
    }
    // Split into signed terms at every sign that is not the first character.
    let mut terms = Vec::new();
    let mut start = 0;
    for (idx, ch) in s.char_indices() {
        if idx > 0 && (ch == '+' || ch == '-') {
            terms.push(&s[start..idx]);
            start = idx;
        }
    }
    terms.push(&s[start..]);
    if terms.len() > 2 {
        return Err(LiteralError::Malformed(s.to_string()));
    }
    let mut re: Option<Rational> = None;
    let mut im: Option<Rational> = None;
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-1, &term[1..]),
            Some(b'+') => (1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            return Err(LiteralError::Malformed(s.to_string()));
        }
        let (value, imaginary) = if body == "i" {
            (Rational::one(), true)
        } else if let Some(coeff) = body.strip_suffix("*i") {
            if coeff.starts_with(['+', '-']) {
                return Err(LiteralError::Malformed(s.to_string()));
            }
            (parse_rational(coeff)?, true)
        } else {
            if body.starts_with(['+', '-']) {
                return Err(LiteralError::Malformed(s.to_string()));
            }
            (parse_rational(body)?, false)
        };
        let value = if sign < 0 { -value } else { value };
        let slot = if imaginary { &mut im } else { &mut re };
        if slot.is_some() {
            return Err(LiteralError::Malformed(s.to_string()));
        }
        *slot = Some(value);
    }
    Ok(GaussianRational {
        re: re.unwrap_or_else(Rational::zero),
        im: im.unwrap_or_else(Rational::zero),
    })
}

pub fn parse_gaussian_integer(s: &str) -> Result<GaussianInteger, LiteralError> {
    parse_gaussian(s)?
        .to_integer()
        .ok_or_else(|| LiteralError::NotIntegral(s.to_string()))
}

impl FromStr for GaussianRational {
    type Err = LiteralError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gaussian(s)
    }
}

impl FromStr for GaussianInteger {
    type Err = LiteralError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gaussian_integer(s)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", Lit(&self.re));
        }
        if !self.re.is_zero() {
            write!(f, "{}", Lit(&self.re))?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() {
            write!(f, "i")
        } else if (-&self.im).is_one() {
            write!(f, "-i")
        } else {
            write!(f, "{}*i", Lit(&self.im))
        }
    }
}

impl fmt::Display for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_rational().fmt(f)
    }
}
