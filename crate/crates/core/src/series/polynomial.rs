use std::fmt;

use super::Monomial;
use crate::error::{Error, Result};
use crate::extnum::{ExtInt, Fin, NegInf, PosInf};

/// A finite sum of monomials with strictly increasing coefficients and
/// exponents. The empty polynomial is the zero counter `s_ε`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    /// Builds a polynomial from terms that already satisfy the ordering
    /// invariants; anything else is rejected.
    pub fn new(terms: Vec<Monomial>) -> Result<Self> {
        for (i, m) in terms.iter().enumerate() {
            if m.exp == NegInf {
                return Err(Error::InvalidPolynomial(format!(
                    "term {m} has exponent -inf"
                )));
            }
            if m.coeff == PosInf {
                return Err(Error::InvalidPolynomial(format!(
                    "term {m} has coefficient inf"
                )));
            }
            if i > 0 {
                let prev = terms[i - 1];
                if prev.coeff >= m.coeff || prev.exp >= m.exp {
                    return Err(Error::InvalidPolynomial(format!(
                        "terms {prev} and {m} are not strictly increasing"
                    )));
                }
            }
        }
        Ok(Polynomial { terms })
    }

    /// The `⊕` of arbitrary monomials, in any order: absorbed terms are
    /// dropped and the rest sorted.
    pub fn from_unsorted_terms(terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = terms.into_iter().filter(|m| !m.is_epsilon()).collect();
        all.sort_by(|a, b| b.exp.cmp(&a.exp).then(a.coeff.cmp(&b.coeff)));
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        let mut best = PosInf;
        for m in all {
            if m.coeff < best {
                best = m.coeff;
                kept.push(m);
            }
        }
        kept.reverse();
        Polynomial { terms: kept }
    }

    pub fn epsilon() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn top() -> Self {
        Polynomial {
            terms: vec![Monomial::new(NegInf, PosInf)],
        }
    }

    pub fn unit() -> Self {
        Polynomial {
            terms: vec![Monomial::new(0, 0)],
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_unsorted_terms([m])
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.terms == [Monomial::new(NegInf, PosInf)]
    }

    pub fn first(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    pub fn last(&self) -> Option<&Monomial> {
        self.terms.last()
    }

    /// Exponent of the last term, `-∞` for `s_ε`.
    pub fn last_exp(&self) -> ExtInt {
        self.terms.last().map_or(NegInf, |m| m.exp)
    }

    /// Exponent of the first term, `+∞` for `s_ε`.
    pub fn first_exp(&self) -> ExtInt {
        self.terms.first().map_or(PosInf, |m| m.exp)
    }

    /// Coefficient at `t`, reading the stored terms only: `t = +∞` gives the
    /// limit value and `t = -∞` the leftmost one.
    pub fn value_at(&self, t: ExtInt) -> ExtInt {
        let idx = self.terms.partition_point(|m| m.exp < t);
        self.terms.get(idx).map_or(PosInf, |m| m.coeff)
    }

    /// Terms up to `horizon`, plus a closing term at `horizon` carrying the
    /// value there. The result agrees with `self` on `(-∞, horizon]` and is
    /// `+∞` afterwards.
    pub fn clip(&self, horizon: i64) -> Polynomial {
        let h = Fin(horizon);
        let idx = self.terms.partition_point(|m| m.exp < h);
        let mut terms: Vec<Monomial> = self.terms[..idx].to_vec();
        if let Some(m) = self.terms.get(idx) {
            terms.push(Monomial::new(m.coeff, h));
        }
        Polynomial { terms }
    }

    /// Replaces the exponent of the last term by `+∞`.
    pub(crate) fn extend_last_to_infinity(mut self) -> Polynomial {
        if let Some(last) = self.terms.last_mut() {
            last.exp = PosInf;
        }
        self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("eps");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
