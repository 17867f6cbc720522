use std::fmt;

use crate::extnum::{ExtInt, NegInf, PosInf};

/// The counter `coeff δ^exp`: value `coeff` for every `t <= exp`, `+∞` after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: ExtInt,
    pub exp: ExtInt,
}

impl Monomial {
    pub fn new(coeff: impl Into<ExtInt>, exp: impl Into<ExtInt>) -> Self {
        Monomial {
            coeff: coeff.into(),
            exp: exp.into(),
        }
    }

    /// `+∞ δ^t` and `n δ^{-∞}` are both the zero counter.
    pub fn is_epsilon(&self) -> bool {
        self.coeff == PosInf || self.exp == NegInf
    }

    pub fn value_at(&self, t: ExtInt) -> ExtInt {
        if t <= self.exp {
            self.coeff
        } else {
            PosInf
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}d{}", self.coeff, self.exp)
    }
}
