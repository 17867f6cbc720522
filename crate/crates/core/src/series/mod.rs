//! Counters and their compact representations.
//!
//! A [`Series`] is either a [`Polynomial`] or an ultimately periodic series
//! `p ⊕ q (ν δ^τ)*`. Representations produced by this crate are canonical:
//! the transient `p` is as short as possible for the given period.

mod monomial;
mod ops;
mod polynomial;

pub use monomial::Monomial;
pub use ops::{equals, leq, oplus, wedge};
pub(crate) use ops::combine_polys;
pub use polynomial::Polynomial;

use crate::error::{Error, Result};
use crate::extnum::{self, div_ceil, ExtInt, Fin, NegInf, PosInf};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    transient: Polynomial,
    periodic: Option<Periodic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Periodic {
    pattern: Polynomial,
    nu: i64,
    tau: i64,
}

/// Behaviour of a canonical counter after its last irregularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tail {
    /// `+∞` for every `t > after`.
    Vanishing { after: ExtInt },
    /// Constant `value` for every `t >= from`.
    Constant { value: ExtInt, from: ExtInt },
    /// `s(t + τ) = s(t) + ν` for every `t >= start`.
    Periodic { nu: i64, tau: i64, start: i64 },
}

impl From<Polynomial> for Series {
    fn from(p: Polynomial) -> Self {
        Series {
            transient: p,
            periodic: None,
        }
    }
}

impl From<Monomial> for Series {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m).into()
    }
}

impl Series {
    pub fn epsilon() -> Self {
        Polynomial::epsilon().into()
    }

    pub fn top() -> Self {
        Polynomial::top().into()
    }

    pub fn unit() -> Self {
        Polynomial::unit().into()
    }

    /// `transient ⊕ pattern (ν δ^τ)*`, checked against the representation
    /// invariants but not made canonical.
    pub fn new(transient: Polynomial, pattern: Polynomial, nu: ExtInt, tau: ExtInt) -> Result<Self> {
        let (nu, tau) = check_period(nu, tau)?;
        let (first, last) = match (pattern.first(), pattern.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::InvalidSeries("empty periodic pattern".into())),
        };
        if pattern.terms().iter().any(|m| m.coeff.is_infinite() || m.exp.is_infinite()) {
            return Err(Error::InvalidSeries(format!(
                "pattern {pattern} has infinite entries"
            )));
        }
        let span = extnum::sub(last.exp.finite().unwrap(), first.exp.finite().unwrap())?;
        if span > tau - 1 {
            return Err(Error::InvalidSeries(format!(
                "pattern {pattern} does not fit in a period of length {tau}"
            )));
        }
        if let Some(t) = transient.last() {
            if t.exp >= first.exp || t.coeff >= first.coeff {
                return Err(Error::InvalidSeries(format!(
                    "transient term {t} is not below the pattern start {first}"
                )));
            }
        }
        Ok(Series {
            transient,
            periodic: Some(Periodic { pattern, nu, tau }),
        })
    }

    /// Canonical form of `⊕ transient ⊕ (⊕ pattern)(ν δ^τ)*` for arbitrary
    /// monomials; only the period is validated.
    pub fn assemble(
        transient: impl IntoIterator<Item = Monomial>,
        pattern: impl IntoIterator<Item = Monomial>,
        nu: ExtInt,
        tau: ExtInt,
    ) -> Result<Self> {
        let (nu, tau) = check_period(nu, tau)?;
        let pattern: Vec<Monomial> = pattern.into_iter().filter(|m| !m.is_epsilon()).collect();
        if let Some(m) = pattern.iter().find(|m| m.coeff.is_infinite() || m.exp.is_infinite()) {
            return Err(Error::InvalidSeries(format!(
                "pattern term {m} has infinite entries"
            )));
        }
        canonical_from_raw(Polynomial::from_unsorted_terms(transient), pattern, nu, tau)
    }

    /// The unique representative with the shortest transient for this period.
    pub fn canonicalize(&self) -> Result<Series> {
        match &self.periodic {
            None => Ok(self.clone()),
            Some(per) => canonical_from_raw(
                self.transient.clone(),
                per.pattern.terms().to_vec(),
                per.nu,
                per.tau,
            ),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().is_ok_and(|c| &c == self)
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic.is_some()
    }

    pub fn is_polynomial(&self) -> bool {
        self.periodic.is_none()
    }

    pub fn is_epsilon(&self) -> bool {
        self.periodic.is_none() && self.transient.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.periodic.is_none() && self.transient.is_top()
    }

    pub fn transient(&self) -> &Polynomial {
        &self.transient
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self.periodic {
            None => Some(&self.transient),
            Some(_) => None,
        }
    }

    pub fn pattern(&self) -> Option<&Polynomial> {
        self.periodic.as_ref().map(|p| &p.pattern)
    }

    /// `(ν, τ)` of the periodic part.
    pub fn period(&self) -> Option<(i64, i64)> {
        self.periodic.as_ref().map(|p| (p.nu, p.tau))
    }

    pub fn period_monomial(&self) -> Option<Monomial> {
        self.period().map(|(nu, tau)| Monomial::new(nu, tau))
    }

    /// `T_1`, the exponent where the periodic pattern starts.
    pub fn pattern_start(&self) -> Option<i64> {
        self.pattern()
            .and_then(|q| q.first())
            .and_then(|m| m.exp.finite())
    }

    /// Smallest stored exponent (`+∞` for `s_ε`).
    pub fn first_exp(&self) -> ExtInt {
        match self.transient.first() {
            Some(m) => m.exp,
            None => self.pattern().map_or(PosInf, |q| q.first_exp()),
        }
    }

    /// Coefficient `s(t)` with the end-point conventions: `s(-∞) = -∞`,
    /// `s(+∞) = +∞`, except `s_⊤` which is `-∞` everywhere.
    pub fn eval(&self, t: ExtInt) -> Result<ExtInt> {
        if self.is_top() {
            return Ok(NegInf);
        }
        match t {
            NegInf => Ok(NegInf),
            PosInf => Ok(PosInf),
            Fin(t) => self.value(t),
        }
    }

    /// Coefficient at a finite time.
    pub fn value(&self, t: i64) -> Result<ExtInt> {
        let head = self.transient.value_at(Fin(t));
        match &self.periodic {
            None => Ok(head),
            Some(per) => Ok(extnum::min(head, per.value(t)?)),
        }
    }

    /// A polynomial equal to `self` on `(-∞, horizon]` and `+∞` after it.
    /// Polynomials supported up to `horizon` are returned unchanged.
    pub fn expand(&self, horizon: i64) -> Result<Polynomial> {
        match &self.periodic {
            None => Ok(self.transient.clip(horizon)),
            Some(per) => Ok(generate(&self.transient, per.pattern.terms(), per.nu, per.tau, horizon)?
                .clip(horizon)),
        }
    }

    /// `ν / τ` as a pair, `None` for polynomials.
    pub fn throughput(&self) -> Option<(i64, i64)> {
        self.period()
    }

    pub(crate) fn tail(&self) -> Tail {
        match &self.periodic {
            Some(per) => Tail::Periodic {
                nu: per.nu,
                tau: per.tau,
                start: per.pattern.first().and_then(|m| m.exp.finite()).unwrap(),
            },
            None => {
                let terms = self.transient.terms();
                match terms.last() {
                    None => Tail::Vanishing { after: NegInf },
                    Some(last) if last.exp == PosInf => {
                        let from = if terms.len() >= 2 {
                            // exponents below +∞ are finite
                            Fin(terms[terms.len() - 2].exp.finite().unwrap() + 1)
                        } else {
                            NegInf
                        };
                        Tail::Constant {
                            value: last.coeff,
                            from,
                        }
                    }
                    Some(last) => Tail::Vanishing { after: last.exp },
                }
            }
        }
    }

    /// Smallest `t` with `s(t) >= v` for a canonical periodic series.
    pub(crate) fn first_at_least(&self, v: ExtInt) -> Result<ExtInt> {
        let per = self.periodic.as_ref().expect("periodic series");
        if v <= self.value_below() {
            return Ok(NegInf);
        }
        let v = match v {
            Fin(v) => v,
            _ => return Err(Error::Precondition("threshold must be finite".into())),
        };
        let q = per.pattern.terms();
        let last = q.last().unwrap().coeff.finite().unwrap();
        let copies = div_ceil(extnum::sub(v, last)?, per.nu).max(0);
        let m = self.transient.len();
        let total = m + (copies as usize + 1) * q.len();
        let term = |idx: usize| -> Result<Monomial> { self.unrolled_term(idx) };
        // binary search for the first term whose coefficient reaches v
        let (mut lo, mut hi) = (0usize, total);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if term(mid)?.coeff >= Fin(v) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if lo == 0 {
            return Ok(NegInf);
        }
        let prev = term(lo - 1)?;
        Ok(Fin(extnum::add(prev.exp.finite().unwrap(), 1)?))
    }

    /// The value for `t` below every stored exponent.
    fn value_below(&self) -> ExtInt {
        match self.transient.first() {
            Some(m) => m.coeff,
            None => self.pattern().and_then(|q| q.first()).map_or(PosInf, |m| m.coeff),
        }
    }

    /// The `idx`-th change point of a canonical series.
    fn unrolled_term(&self, idx: usize) -> Result<Monomial> {
        let m = self.transient.len();
        if idx < m {
            return Ok(self.transient.terms()[idx]);
        }
        let per = self.periodic.as_ref().expect("periodic series");
        let q = per.pattern.terms();
        let j = idx - m;
        let k = (j / q.len()) as i64;
        let base = q[j % q.len()];
        let shift = |x: ExtInt, step: i64| -> Result<ExtInt> {
            Ok(Fin(extnum::add(x.finite().unwrap(), extnum::mul(k, step)?)?))
        };
        Ok(Monomial {
            coeff: shift(base.coeff, per.nu)?,
            exp: shift(base.exp, per.tau)?,
        })
    }
}

impl Periodic {
    /// `min_i N_i + k_i(t) ν` where `k_i(t)` is the first copy of the `i`-th
    /// pattern term reaching `t`.
    fn value(&self, t: i64) -> Result<ExtInt> {
        pattern_value(self.pattern.terms(), self.nu, self.tau, t)
    }
}

fn pattern_value(pattern: &[Monomial], nu: i64, tau: i64, t: i64) -> Result<ExtInt> {
    let mut best = PosInf;
    for m in pattern {
        let (n, e) = (m.coeff.finite().unwrap(), m.exp.finite().unwrap());
        let k = div_ceil(extnum::sub(t, e)?, tau).max(0);
        best = extnum::min(best, Fin(extnum::add(n, extnum::mul(k, nu)?)?));
    }
    Ok(best)
}

fn check_period(nu: ExtInt, tau: ExtInt) -> Result<(i64, i64)> {
    match (nu, tau) {
        (Fin(nu), Fin(tau)) if nu >= 0 && tau >= 1 => Ok((nu, tau)),
        _ => Err(Error::InvalidSeries(format!(
            "period {nu}d{tau} needs a finite coefficient >= 0 and a finite exponent >= 1"
        ))),
    }
}

/// All terms of `p ⊕ q (ν δ^τ)*` that matter on `(-∞, horizon]`, normalized:
/// every copy of a pattern term up to the first one reaching `horizon`.
fn generate(p: &Polynomial, pattern: &[Monomial], nu: i64, tau: i64, horizon: i64) -> Result<Polynomial> {
    let mut terms: Vec<Monomial> = p.terms().to_vec();
    for m in pattern {
        let (n, e) = (m.coeff.finite().unwrap(), m.exp.finite().unwrap());
        let mut k = 0i64;
        loop {
            let exp = extnum::add(e, extnum::mul(k, tau)?)?;
            terms.push(Monomial::new(extnum::add(n, extnum::mul(k, nu)?)?, exp));
            if exp >= horizon {
                break;
            }
            k += 1;
        }
    }
    Ok(Polynomial::from_unsorted_terms(terms))
}

/// Canonical form of `p ⊕ q (ν δ^τ)*` for a normalized `p` and finite,
/// otherwise unconstrained, pattern terms.
pub(crate) fn canonical_from_raw(
    p: Polynomial,
    pattern: Vec<Monomial>,
    nu: i64,
    tau: i64,
) -> Result<Series> {
    if pattern.is_empty() {
        return Ok(p.into());
    }
    if nu == 0 {
        let floor = pattern.iter().map(|m| m.coeff).min().unwrap();
        let terms = p.into_terms().into_iter().chain([Monomial::new(floor, PosInf)]);
        return Ok(Polynomial::from_unsorted_terms(terms).into());
    }
    let t_max = pattern.iter().map(|m| m.exp.finite().unwrap()).max().unwrap();

    if p.last_exp() == PosInf {
        // the transient ends on a constant that the growing pattern eventually exceeds
        let terms = p.terms();
        let level = terms.last().unwrap().coeff;
        let level = match level {
            Fin(v) => v,
            _ => return Ok(p.into()),
        };
        let mut settle = if terms.len() >= 2 {
            Fin(terms[terms.len() - 2].exp.finite().unwrap() + 1)
        } else {
            NegInf
        };
        for m in &pattern {
            let (n, e) = (m.coeff.finite().unwrap(), m.exp.finite().unwrap());
            if n < level {
                let copies = div_ceil(extnum::sub(level, n)?, nu);
                let t = extnum::add(extnum::add(e, extnum::mul(copies - 1, tau)?)?, 1)?;
                settle = extnum::max(settle, Fin(t));
            }
        }
        let horizon = match settle {
            Fin(h) => h,
            _ => return Ok(p.into()),
        };
        let expanded = generate(&p, &pattern, nu, tau, horizon)?.clip(horizon);
        return Ok(expanded.extend_last_to_infinity().into());
    }

    let start = match p.last_exp() {
        Fin(e) => std::cmp::max(extnum::sub(t_max, tau - 1)?, extnum::add(e, 1)?),
        _ => extnum::sub(t_max, tau - 1)?,
    };
    let horizon = extnum::add(start, tau - 1)?;
    let expanded = generate(&p, &pattern, nu, tau, horizon)?.clip(horizon);
    let (mut trans, mut pat): (Vec<Monomial>, Vec<Monomial>) =
        expanded.into_terms().into_iter().partition(|m| m.exp < Fin(start));
    debug_assert!(!pat.is_empty());
    let shift = |m: Monomial| -> Result<Monomial> {
        Ok(Monomial::new(
            extnum::add(m.coeff.finite().unwrap(), nu)?,
            extnum::add(m.exp.finite().unwrap(), tau)?,
        ))
    };
    if pat.len() > 1 && shift(pat[0])?.coeff == pat.last().unwrap().coeff {
        pat.pop();
    }
    while let Some(&last) = trans.last() {
        if last.coeff.is_infinite() || shift(last)? != *pat.last().unwrap() {
            break;
        }
        pat.pop();
        pat.insert(0, last);
        trans.pop();
    }
    if let Some((pat, nu, tau)) = shortest_period(&pat, nu, tau)? {
        return canonical_from_raw(Polynomial::new(trans)?, pat, nu, tau);
    }
    Ok(Series {
        transient: Polynomial::new(trans)?,
        periodic: Some(Periodic {
            pattern: Polynomial::new(pat)?,
            nu,
            tau,
        }),
    })
}

/// The pattern rewritten over the smallest period that generates it, if that
/// is shorter than `tau`.
fn shortest_period(pat: &[Monomial], nu: i64, tau: i64) -> Result<Option<(Vec<Monomial>, i64, i64)>> {
    let len = pat.len() as i64;
    for d in (1..tau).filter(|d| tau % d == 0) {
        let k = tau / d;
        if nu % k != 0 || len % k != 0 {
            continue;
        }
        let (step, nu_d) = ((len / k) as usize, nu / k);
        let mut repeats = true;
        for i in step..pat.len() {
            let prev = pat[i - step];
            let want = Monomial::new(
                extnum::add(prev.coeff.finite().unwrap(), nu_d)?,
                extnum::add(prev.exp.finite().unwrap(), d)?,
            );
            if pat[i] != want {
                repeats = false;
                break;
            }
        }
        if repeats {
            return Ok(Some((pat[..step].to_vec(), nu_d, d)));
        }
    }
    Ok(None)
}

/// Splits `poly` at `start` into transient and one period of pattern and
/// attaches `(ν δ^τ)*`. `poly` must be exact on `(-∞, start + τ - 1]`.
pub(crate) fn periodic_from_expansion(poly: &Polynomial, start: i64, nu: i64, tau: i64) -> Result<Series> {
    let horizon = extnum::add(start, tau - 1)?;
    let (trans, pat): (Vec<Monomial>, Vec<Monomial>) = poly
        .clip(horizon)
        .into_terms()
        .into_iter()
        .partition(|m| m.exp < Fin(start));
    if pat.iter().any(|m| m.coeff.is_infinite()) {
        return Err(Error::Precondition(format!(
            "periodic regime from {start} has infinite coefficients"
        )));
    }
    canonical_from_raw(Polynomial::new(trans)?, pat, nu, tau)
}

/// `poly` is exact on `(-∞, horizon]` and constant afterwards.
pub(crate) fn constant_after(poly: &Polynomial, horizon: i64) -> Series {
    let clipped = poly.clip(horizon);
    if clipped.last_exp() == Fin(horizon) {
        clipped.extend_last_to_infinity().into()
    } else {
        clipped.into()
    }
}
