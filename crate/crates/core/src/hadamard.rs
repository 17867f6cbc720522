//! The Hadamard product `⊙` of counters, its residual `⊙♯` and its dual
//! residual `⊙♭`.
//!
//! `(s ⊙ s')(t) = s(t) + s'(t)`. `y ⊙♯ a` is the greatest counter `x` with
//! `a ⊙ x ⪯ y`, `y ⊙♭ a` the least counter `x` with `a ⊙ x ⪰ y` when it
//! exists.

use std::fmt;

use crate::error::{Error, Result};
use crate::extnum::{self, add_conv, div_ceil, lcm, sub_conv, ExtInt, Fin, InfConvention, NegInf, PosInf};
use crate::series::{combine_polys, constant_after, periodic_from_expansion, Monomial, Polynomial, Series};

const ODOT: InfConvention = InfConvention::PosInf;
const SHARP: InfConvention = InfConvention::NegInf;
const FLAT: InfConvention = InfConvention::PosInf;

/// Result of an operation that may be undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpOutcome<T = Series> {
    Ok(T),
    Undefined {
        reason: String,
        witness: Option<ExtInt>,
    },
}

impl<T> OpOutcome<T> {
    pub fn ok(self) -> Option<T> {
        match self {
            OpOutcome::Ok(v) => Some(v),
            OpOutcome::Undefined { .. } => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, OpOutcome::Ok(_))
    }

    fn undefined(reason: impl Into<String>, witness: Option<ExtInt>) -> Self {
        OpOutcome::Undefined {
            reason: reason.into(),
            witness,
        }
    }

    fn map<U>(self, f: impl FnOnce(T) -> U) -> OpOutcome<U> {
        match self {
            OpOutcome::Ok(v) => OpOutcome::Ok(f(v)),
            OpOutcome::Undefined { reason, witness } => OpOutcome::Undefined { reason, witness },
        }
    }
}

impl<T: fmt::Display> fmt::Display for OpOutcome<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpOutcome::Ok(v) => write!(f, "{v}"),
            OpOutcome::Undefined { reason, .. } => write!(f, "undefined: {reason}"),
        }
    }
}

/// Parameters of the difference `s̄ = s - s'` of two ultimately periodic
/// counters: `s̄(t + τ̄) = s̄(t) + ν̄` for every `t >= t̄_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffParams {
    pub tau_bar: i64,
    pub nu_bar: i64,
    pub tp_bar: i64,
    pub t1_bar: i64,
}

// ---------------------------------------------------------------- monomials

pub fn odot_mono(r: Monomial, r2: Monomial) -> Result<Monomial> {
    Ok(Monomial::new(add_conv(r.coeff, r2.coeff, ODOT)?, extnum::min(r.exp, r2.exp)))
}

pub fn sharp_mono(r: Monomial, r2: Monomial) -> Result<Monomial> {
    let exp = if r.exp < r2.exp { r.exp } else { PosInf };
    Ok(Monomial::new(sub_conv(r.coeff, r2.coeff, SHARP)?, exp))
}

pub fn flat_mono(r: Monomial, r2: Monomial) -> Result<OpOutcome<Monomial>> {
    if r.is_epsilon() {
        return Ok(OpOutcome::Ok(Monomial::new(PosInf, PosInf)));
    }
    if r2.is_epsilon() || r.exp > r2.exp {
        return Ok(OpOutcome::undefined(
            format!("exponent {} exceeds {}", r.exp, r2.exp),
            exceeding(r2.exp),
        ));
    }
    if r2.coeff == NegInf {
        return Ok(OpOutcome::undefined(
            format!("divisor coefficient is -inf up to {}", r2.exp),
            Some(extnum::min(r.exp, r2.exp)),
        ));
    }
    Ok(OpOutcome::Ok(Monomial::new(sub_conv(r.coeff, r2.coeff, FLAT)?, r.exp)))
}

/// `t` itself when finite, otherwise an arbitrary instant.
fn some_instant(t: ExtInt) -> ExtInt {
    if t.is_finite() {
        t
    } else {
        Fin(0)
    }
}

fn exceeding(exp: ExtInt) -> Option<ExtInt> {
    match exp {
        Fin(t) => t.checked_add(1).map(Fin),
        NegInf => None,
        PosInf => None,
    }
}

// -------------------------------------------------------------- polynomials

pub fn odot_poly(p: &Polynomial, p2: &Polynomial) -> Result<Polynomial> {
    odot_poly_counted(p, p2).map(|(r, _)| r)
}

/// [`odot_poly`] together with the number of monomial products formed.
pub fn odot_poly_counted(p: &Polynomial, p2: &Polynomial) -> Result<(Polynomial, usize)> {
    let (a, b) = (p.terms(), p2.terms());
    let mut terms = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let product = odot_mono(a[i], b[j])?;
        terms.push(product);
        if product.exp == b[b.len() - 1].exp || product.exp == a[a.len() - 1].exp {
            break;
        }
        // the smaller exponent is spent: pairing it with later terms only adds more
        if a[i].exp <= b[j].exp {
            i += 1;
        } else {
            j += 1;
        }
    }
    let count = terms.len();
    Ok((Polynomial::from_unsorted_terms(terms), count))
}

pub fn sharp_poly_mono(p: &Polynomial, r: Monomial) -> Result<Polynomial> {
    sharp_poly_mono_counted(p, r, &mut 0)
}

fn sharp_poly_mono_counted(p: &Polynomial, r: Monomial, count: &mut usize) -> Result<Polynomial> {
    let mut terms = Vec::new();
    for &m in p.terms() {
        *count += 1;
        terms.push(sharp_mono(m, r)?);
        // every later term is absorbed by this `δ^{+∞}` one
        if m.exp >= r.exp {
            break;
        }
    }
    Ok(Polynomial::from_unsorted_terms(terms))
}

pub fn sharp_poly(p: &Polynomial, p2: &Polynomial) -> Result<Polynomial> {
    sharp_poly_counted(p, p2).map(|(r, _)| r)
}

/// [`sharp_poly`] together with the number of monomial residuals formed.
pub fn sharp_poly_counted(p: &Polynomial, p2: &Polynomial) -> Result<(Polynomial, usize)> {
    let mut count = 0;
    let mut acc = Polynomial::top();
    for &r in p2.terms() {
        let part = sharp_poly_mono_counted(p, r, &mut count)?;
        acc = combine_polys(&acc, &part, extnum::max);
    }
    Ok((acc, count))
}

pub fn flat_mono_poly(r: Monomial, p: &Polynomial) -> Result<OpOutcome<Monomial>> {
    flat_mono_poly_counted(r, p, &mut 0)
}

fn flat_mono_poly_counted(r: Monomial, p: &Polynomial, count: &mut usize) -> Result<OpOutcome<Monomial>> {
    for &m in p.terms() {
        *count += 1;
        if m.exp >= r.exp {
            return flat_mono(r, m);
        }
    }
    Ok(OpOutcome::undefined(
        format!("exponent {} exceeds {}", r.exp, p.last_exp()),
        exceeding(p.last_exp()),
    ))
}

pub fn flat_poly(p: &Polynomial, p2: &Polynomial) -> Result<OpOutcome<Polynomial>> {
    flat_poly_counted(p, p2).map(|o| o.map(|(r, _)| r))
}

/// [`flat_poly`] together with the number of monomial dual residuals formed.
pub fn flat_poly_counted(p: &Polynomial, p2: &Polynomial) -> Result<OpOutcome<(Polynomial, usize)>> {
    if let Some(reason) = flat_domain(p.last_exp(), p.first_exp(), p.is_empty(), p2) {
        return Ok(reason);
    }
    let mut count = 0;
    let mut terms = Vec::with_capacity(p.len());
    for &m in p.terms() {
        match flat_mono_poly_counted(m, p2, &mut count)? {
            OpOutcome::Ok(x) => terms.push(x),
            OpOutcome::Undefined { reason, witness } => return Ok(OpOutcome::Undefined { reason, witness }),
        }
    }
    Ok(OpOutcome::Ok((Polynomial::from_unsorted_terms(terms), count)))
}

/// Reason why `y ⊙♭ a` is undefined, if it is: `y` must be `+∞` wherever
/// `a` is infinite.
fn flat_domain<T>(y_sup: ExtInt, y_first: ExtInt, y_empty: bool, a: &Polynomial) -> Option<OpOutcome<T>> {
    if y_empty {
        return None;
    }
    if a.first().map(|m| m.coeff) == Some(NegInf) {
        let witness = some_instant(extnum::min(a.first_exp(), y_first));
        return Some(OpOutcome::undefined(
            format!("divisor is -inf at t = {witness} where the dividend is finite"),
            Some(witness),
        ));
    }
    if y_sup > a.last_exp() {
        return Some(OpOutcome::undefined(
            format!("exponent {y_sup} exceeds {}", a.last_exp()),
            exceeding(a.last_exp()).or(Some(some_instant(y_first))),
        ));
    }
    None
}

// ------------------------------------------------------------------ series

/// Asymptotic description used to line up two operands: the counter grows by
/// `nu` every `tau` from `start` on. Polynomials ending in a finite constant
/// are read as `(0 δ^1)*` tails.
#[derive(Debug, Clone, Copy)]
struct Regime {
    nu: i64,
    tau: i64,
    start: ExtInt,
}

fn regime(s: &Series) -> Option<Regime> {
    if let Some((nu, tau)) = s.period() {
        return Some(Regime {
            nu,
            tau,
            start: Fin(s.pattern_start().unwrap()),
        });
    }
    let p = s.transient();
    let terms = p.terms();
    match terms.last() {
        Some(last) if last.exp == PosInf && last.coeff.is_finite() => Some(Regime {
            nu: 0,
            tau: 1,
            start: if terms.len() >= 2 {
                Fin(extnum::add(terms[terms.len() - 2].exp.finite()?, 1).ok()?)
            } else {
                NegInf
            },
        }),
        _ => None,
    }
}

fn aligned(r: Regime, r2: Regime, sign: i64) -> Result<(i64, i64, i64)> {
    let tau_bar = lcm(Fin(r.tau), Fin(r2.tau))?;
    let a = extnum::mul(tau_bar / r.tau, r.nu)?;
    let b = extnum::mul(tau_bar / r2.tau, r2.nu)?;
    let nu_bar = if sign > 0 { extnum::add(a, b)? } else { extnum::sub(a, b)? };
    let start = extnum::max(r.start, r2.start);
    // at least one operand is periodic, so the start is finite
    Ok((tau_bar, nu_bar, start.finite().unwrap()))
}

/// `s ⊙ s'`.
pub fn odot(s: &Series, s2: &Series) -> Result<Series> {
    let s = s.canonicalize()?;
    let s2 = s2.canonicalize()?;
    if s.is_epsilon() || s2.is_epsilon() {
        return Ok(Series::epsilon());
    }
    match (s.as_polynomial(), s2.as_polynomial()) {
        (Some(p), Some(p2)) => return Ok(odot_poly(p, p2)?.into()),
        (None, Some(p)) | (Some(p), None) => {
            let periodic = if s.is_periodic() { &s } else { &s2 };
            if p.is_top() {
                return Ok(Series::top());
            }
            if let Fin(end) = p.last_exp() {
                return Ok(odot_poly(&periodic.expand(end)?, p)?.into());
            }
        }
        (None, None) => {}
    }
    let (tau, nu, start) = aligned(regime(&s).unwrap(), regime(&s2).unwrap(), 1)?;
    let horizon = extnum::add(start, tau - 1)?;
    let product = odot_poly(&s.expand(horizon)?, &s2.expand(horizon)?)?;
    periodic_from_expansion(&product, start, nu, tau)
}

/// Difference parameters of two operands, each periodic or a polynomial
/// ending in a finite constant; at least one must be periodic. Fails if both
/// are `-∞` at a common instant.
pub fn diff_params(s: &Series, s2: &Series) -> Result<DiffParams> {
    let s = s.canonicalize()?;
    let s2 = s2.canonicalize()?;
    if let Some(t) = common_neg_inf(&s, &s2) {
        return Err(Error::CommonInfinity { t, value: NegInf });
    }
    diff_params_unchecked(&s, &s2)
}

fn diff_params_unchecked(s: &Series, s2: &Series) -> Result<DiffParams> {
    let (r, r2) = match (regime(s), regime(s2)) {
        (Some(r), Some(r2)) if s.is_periodic() || s2.is_periodic() => (r, r2),
        _ => {
            return Err(Error::Precondition(
                "difference parameters need ultimately periodic operands".into(),
            ))
        }
    };
    let (tau_bar, nu_bar, tp_bar) = aligned(r, r2, -1)?;
    let t1_bar = extnum::min(s.first_exp(), s2.first_exp()).finite().unwrap();
    Ok(DiffParams {
        tau_bar,
        nu_bar,
        tp_bar,
        t1_bar,
    })
}

fn common_neg_inf(s: &Series, s2: &Series) -> Option<i64> {
    let reach = |s: &Series| match s.transient().first() {
        Some(m) if m.coeff == NegInf => Some(m.exp),
        _ => None,
    };
    match (reach(s), reach(s2)) {
        (Some(a), Some(b)) => Some(extnum::min(a, b).finite().unwrap_or(0)),
        _ => None,
    }
}

fn sup(s: &Series) -> ExtInt {
    if s.is_periodic() {
        PosInf
    } else {
        s.transient().last_exp()
    }
}

fn flat_series_domain(y: &Series, a: &Series) -> Option<OpOutcome> {
    if a.transient().first().map(|m| m.coeff) == Some(NegInf) {
        let witness = some_instant(extnum::min(a.first_exp(), y.first_exp()));
        return Some(OpOutcome::undefined(
            format!("divisor is -inf at t = {witness} where the dividend is finite"),
            Some(witness),
        ));
    }
    let (y_sup, a_sup) = (sup(y), sup(a));
    if y_sup > a_sup {
        return Some(OpOutcome::undefined(
            format!("exponent {y_sup} exceeds {a_sup}"),
            exceeding(a_sup).or(Some(some_instant(y.first_exp()))),
        ));
    }
    None
}

/// Extreme value of `s̄ = y - a` over `[lo, hi]`, `None` for an empty range.
fn window_extreme(
    y: &Series,
    a: &Series,
    lo: i64,
    hi: i64,
    conv: InfConvention,
    pick: fn(ExtInt, ExtInt) -> ExtInt,
) -> Result<Option<ExtInt>> {
    if lo > hi {
        return Ok(None);
    }
    let mut points = vec![lo];
    for s in [y, a] {
        for m in s.expand(hi)?.terms() {
            if let Fin(e) = m.exp {
                if e >= lo && e < hi {
                    points.push(e + 1);
                }
            }
        }
    }
    let mut best: Option<ExtInt> = None;
    for t in points {
        let d = sub_conv(y.value(t)?, a.value(t)?, conv)?;
        best = Some(best.map_or(d, |b| pick(b, d)));
    }
    Ok(best)
}

/// Number of periods `κ` after `t̄_p` by which `y ⊙♯ a` is periodic, for
/// `ν̄ > 0`. `None` when the running maximum already reaches `+∞` before
/// `t̄_p`.
fn kappa_raw(y: &Series, a: &Series, d: &DiffParams) -> Result<Option<i64>> {
    if d.nu_bar <= 0 {
        return Err(Error::Precondition(format!(
            "kappa needs a positive difference growth, got {}",
            d.nu_bar
        )));
    }
    let transient = window_extreme(y, a, d.t1_bar, d.tp_bar - 1, SHARP, extnum::max)?.unwrap_or(NegInf);
    let period = window_extreme(y, a, d.tp_bar, d.tp_bar + d.tau_bar - 1, SHARP, extnum::max)?.unwrap();
    match (transient, period) {
        (PosInf, _) => Ok(None),
        (NegInf, _) => Ok(Some(1)),
        (Fin(hi), Fin(p)) => Ok(Some(1 + div_ceil(extnum::sub(hi, p)?, d.nu_bar).max(0))),
        _ => unreachable!("periodic window is finite"),
    }
}

pub fn kappa(y: &Series, a: &Series, d: &DiffParams) -> Result<i64> {
    let y = y.canonicalize()?;
    let a = a.canonicalize()?;
    kappa_raw(&y, &a, d)?.ok_or_else(|| Error::Precondition("difference reaches +inf before the periodic regime".into()))
}

/// `y ⊙♯ a`, always defined.
pub fn sharp(y: &Series, a: &Series) -> Result<Series> {
    let y = y.canonicalize()?;
    let a = a.canonicalize()?;
    if a.is_epsilon() || y.is_top() {
        return Ok(Series::top());
    }
    if y.is_epsilon() {
        return Ok(Series::epsilon());
    }
    if a.is_top() {
        // only the instants where y is -∞ survive
        let head = y.transient().first().filter(|m| m.coeff == NegInf).copied();
        return Ok(Polynomial::from_unsorted_terms(head).into());
    }
    match (y.as_polynomial(), a.as_polynomial()) {
        (Some(p), Some(p2)) => return Ok(sharp_poly(p, p2)?.into()),
        (None, Some(p2)) => {
            if let Fin(end) = p2.last_exp() {
                return Ok(sharp_poly(&y.expand(end)?, p2)?.into());
            }
        }
        (Some(p), None) => {
            if let Fin(end) = p.last_exp() {
                return Ok(sharp_poly(p, &a.expand(extnum::add(end, 1)?)?)?.into());
            }
        }
        (None, None) => {}
    }
    let d = diff_params_unchecked(&y, &a)?;
    let settled = |horizon: i64| -> Result<Series> {
        let x = sharp_poly(&y.expand(horizon)?, &a.expand(horizon)?)?;
        Ok(constant_after(&x, horizon))
    };
    if d.nu_bar <= 0 {
        return settled(extnum::add(d.tp_bar, d.tau_bar - 1)?);
    }
    match kappa_raw(&y, &a, &d)? {
        None => settled(d.tp_bar),
        Some(k) => {
            let start = extnum::add(d.tp_bar, extnum::mul(k, d.tau_bar)?)?;
            let horizon = extnum::add(start, d.tau_bar - 1)?;
            let x = sharp_poly(&y.expand(horizon)?, &a.expand(horizon)?)?;
            periodic_from_expansion(&x, start, d.nu_bar, d.tau_bar)
        }
    }
}

/// `y ⊙♭ a`, undefined unless `y` is `+∞` wherever `a` is infinite.
pub fn flat(y: &Series, a: &Series) -> Result<OpOutcome> {
    let y = y.canonicalize()?;
    let a = a.canonicalize()?;
    if y.is_epsilon() {
        return Ok(OpOutcome::Ok(Series::epsilon()));
    }
    if let Some(undefined) = flat_series_domain(&y, &a) {
        return Ok(undefined);
    }
    if y.is_top() {
        return Ok(OpOutcome::Ok(Series::top()));
    }
    match (y.as_polynomial(), a.as_polynomial()) {
        (Some(p), Some(p2)) => return Ok(flat_poly(p, p2)?.map(Series::from)),
        (Some(p), None) => {
            if let Fin(end) = p.last_exp() {
                return Ok(flat_poly(p, &a.expand(end)?)?.map(Series::from));
            }
        }
        _ => {}
    }
    let d = diff_params_unchecked(&y, &a)?;
    if d.nu_bar < 0 {
        return Ok(OpOutcome::Ok(Series::top()));
    }
    let horizon = extnum::add(d.tp_bar, d.tau_bar - 1)?;
    match flat_poly(&y.expand(horizon)?, &a.expand(horizon)?)? {
        OpOutcome::Ok(x) => Ok(OpOutcome::Ok(periodic_from_expansion(&x, d.tp_bar, d.nu_bar, d.tau_bar)?)),
        undefined => Ok(undefined.map(Series::from)),
    }
}
