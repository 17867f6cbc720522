//! Integers extended with `-∞` and `+∞`.
//!
//! The indeterminate forms `+∞ - ∞` are not fixed once and for all: each
//! Hadamard operation resolves them with its own [`InfConvention`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of `Z ∪ {-∞, +∞}`, ordered in the standard sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

/// How `(+∞) + (-∞)` and its subtraction counterparts are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfConvention {
    PosInf,
    NegInf,
}

impl InfConvention {
    pub fn resolve(self) -> ExtInt {
        match self {
            InfConvention::PosInf => ExtInt::PosInf,
            InfConvention::NegInf => ExtInt::NegInf,
        }
    }
}

pub use ExtInt::{Fin, NegInf, PosInf};

impl ExtInt {
    pub const ZERO: ExtInt = Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Fin(v) => Some(v),
            _ => None,
        }
    }

    /// Swaps the infinities and negates finite values.
    pub fn negate(self) -> Result<ExtInt> {
        Ok(match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Fin(v) => Fin(v.checked_neg().ok_or(Error::Overflow("negation"))?),
        })
    }

    pub fn add_conv(self, other: ExtInt, conv: InfConvention) -> Result<ExtInt> {
        add_conv(self, other, conv)
    }

    pub fn sub_conv(self, other: ExtInt, conv: InfConvention) -> Result<ExtInt> {
        sub_conv(self, other, conv)
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        Fin(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("inf"),
            Fin(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExtInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "+inf" => Ok(PosInf),
            "-inf" => Ok(NegInf),
            _ => s
                .parse::<i64>()
                .map(Fin)
                .map_err(|e| Error::Precondition(format!("not an extended integer {s:?}: {e}"))),
        }
    }
}

/// `a + b`, with the indeterminate sums resolved to `conv`.
pub fn add_conv(a: ExtInt, b: ExtInt, conv: InfConvention) -> Result<ExtInt> {
    Ok(match (a, b) {
        (Fin(x), Fin(y)) => Fin(x.checked_add(y).ok_or(Error::Overflow("addition"))?),
        (PosInf, NegInf) | (NegInf, PosInf) => conv.resolve(),
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, _) | (_, NegInf) => NegInf,
    })
}

/// `a - b`, with `∞ - ∞` of equal signs resolved to `conv`.
pub fn sub_conv(a: ExtInt, b: ExtInt, conv: InfConvention) -> Result<ExtInt> {
    Ok(match (a, b) {
        (Fin(x), Fin(y)) => Fin(x.checked_sub(y).ok_or(Error::Overflow("subtraction"))?),
        (PosInf, PosInf) | (NegInf, NegInf) => conv.resolve(),
        (PosInf, _) | (_, NegInf) => PosInf,
        (NegInf, _) | (_, PosInf) => NegInf,
    })
}

pub fn min(a: ExtInt, b: ExtInt) -> ExtInt {
    std::cmp::min(a, b)
}

pub fn max(a: ExtInt, b: ExtInt) -> ExtInt {
    std::cmp::max(a, b)
}

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

/// Least common multiple of two finite integers `>= 1`.
pub fn lcm(a: ExtInt, b: ExtInt) -> Result<i64> {
    match (a, b) {
        (Fin(x), Fin(y)) if x >= 1 && y >= 1 => (x / gcd(x, y))
            .checked_mul(y)
            .ok_or(Error::Overflow("lcm")),
        _ => Err(Error::InvalidLcm(a, b)),
    }
}

/// Checked `a * b` on plain integers.
pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

/// `⌈a / b⌉` for `b > 0`.
pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

/// Compares the rationals `a/b` and `c/d` for positive denominators.
pub fn cmp_ratio(a: i64, b: i64, c: i64, d: i64) -> Ordering {
    (a as i128 * d as i128).cmp(&(c as i128 * b as i128))
}
