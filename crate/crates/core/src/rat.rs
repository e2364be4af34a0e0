//! Exact rational arithmetic for thresholds and function values.
//!
//! Every threshold comparison in this crate is exact: values parse from
//! `"p/q"` or decimal strings without rounding, and all arithmetic stays in
//! arbitrary-precision rationals. Floats never enter the comparison path.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An exact rational number.
///
/// Wraps an arbitrary-precision rational and normalizes on construction, so
/// equality and ordering are exact. Serializes as a canonical string
/// (`"-7/10"`, `"0"`) rather than a float.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

/// Failure to parse a string as a rational.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty string is not a rational")]
    Empty,
    #[error("malformed rational {0:?}: expected an integer, decimal, or p/q fraction")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Rat {
    /// Builds `num/den`. Panics if `den == 0`; use [`Rat::parse`] for
    /// untrusted input.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn neg_one() -> Self {
        Rat::from_int(-1)
    }

    /// Parses an integer (`"-2"`), a decimal (`"-0.7"`, `".5"`), or a
    /// fraction (`"-7/10"`). Decimals convert exactly: `"-0.7"` becomes
    /// `-7/10`, never a float approximation.
    pub fn parse(s: &str) -> Result<Self, ParseRatError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRatError::Empty);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num
                .parse()
                .map_err(|_| ParseRatError::Malformed(s.to_string()))?;
            // Sign lives on the numerator only: "1/-2" is rejected.
            if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRatError::Malformed(s.to_string()));
            }
            let den: BigInt = den
                .parse()
                .map_err(|_| ParseRatError::Malformed(s.to_string()))?;
            if den.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rat(BigRational::new(num, den)));
        }
        let (sign, digits) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseRatError::Malformed(s.to_string()));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(ParseRatError::Malformed(s.to_string()));
        }
        let mut num: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| ParseRatError::Malformed(s.to_string()))?
        };
        let mut den = BigInt::one();
        for b in frac_part.bytes() {
            num = num * 10 + (b - b'0');
            den *= 10;
        }
        Ok(Rat(BigRational::new(num * sign, den)))
    }

    /// Midpoint of two values, exact.
    pub fn mid(a: &Rat, b: &Rat) -> Rat {
        Rat((&a.0 + &b.0) / BigRational::from_integer(BigInt::from(2)))
    }

    /// True when the value lies in the closed interval `[-1, 0]`, the range
    /// of every N-function value and closed-cut threshold.
    pub fn in_unit_neg_interval(&self) -> bool {
        *self >= Rat::neg_one() && *self <= Rat::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `Some(m)` when the value is exactly `1/m` for a positive integer
    /// `m` that fits in `u32`; grid steps must have this shape.
    pub fn unit_fraction_denominator(&self) -> Option<u32> {
        if !self.0.numer().is_one() {
            return None;
        }
        u32::try_from(self.0.denom().clone()).ok()
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({})", self)
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rat::parse(s)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rat::parse(&s).map_err(D::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.0.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}
