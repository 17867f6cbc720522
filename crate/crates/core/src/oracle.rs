//! Brute-force references: every quantity is sampled point by point from
//! [`Series::value`] and combined directly, without any of the closed-form
//! rules.

use crate::error::Result;
use crate::extnum::{self, add_conv, sub_conv, ExtInt, Fin, InfConvention, NegInf, PosInf};
use crate::hadamard::OpOutcome;
use crate::series::Series;

/// Samples of a counter on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffWindow {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<ExtInt>,
}

impl CoeffWindow {
    pub fn at(&self, t: i64) -> ExtInt {
        self.values[(t - self.lo) as usize]
    }

    fn from_fn(lo: i64, hi: i64, mut f: impl FnMut(i64) -> Result<ExtInt>) -> Result<Self> {
        let values = (lo..=hi).map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(CoeffWindow { lo, hi, values })
    }
}

pub fn window_of(s: &Series, lo: i64, hi: i64) -> Result<CoeffWindow> {
    CoeffWindow::from_fn(lo, hi, |t| s.value(t))
}

/// `s(t) + s'(t)` with `+∞ - ∞ = +∞`.
pub fn oracle_odot(s: &Series, s2: &Series, lo: i64, hi: i64) -> Result<CoeffWindow> {
    CoeffWindow::from_fn(lo, hi, |t| add_conv(s.value(t)?, s2.value(t)?, InfConvention::PosInf))
}

fn difference(y: &Series, a: &Series, t: i64, conv: InfConvention) -> Result<ExtInt> {
    sub_conv(y.value(t)?, a.value(t)?, conv)
}

/// Smallest exponent stored by either operand, where both stop being constant.
fn first_change(y: &Series, a: &Series) -> Option<i64> {
    extnum::min(y.first_exp(), a.first_exp()).finite()
}

/// Running maximum of `y(i) - a(i)` (with `+∞ - ∞ = -∞`) over `i <= t`.
pub fn oracle_sharp(y: &Series, a: &Series, lo: i64, hi: i64) -> Result<CoeffWindow> {
    let from = first_change(y, a).map_or(lo, |t1| t1.min(lo));
    let mut running = NegInf;
    let mut values = Vec::with_capacity((hi - lo + 1).max(0) as usize);
    for t in from..=hi {
        running = extnum::max(running, difference(y, a, t, InfConvention::NegInf)?);
        if t >= lo {
            values.push(running);
        }
    }
    Ok(CoeffWindow { lo, hi, values })
}

/// Eventual behaviour of a counter, read off its stored representation.
enum Growth {
    /// `+∞` after `after`.
    Vanishing { after: ExtInt },
    /// Grows by `nu` every `tau` from `start` on (`nu = 0` for constants).
    Regular { nu: i64, tau: i64, start: ExtInt },
}

fn growth(s: &Series) -> Growth {
    if let Some((nu, tau)) = s.period() {
        return Growth::Regular {
            nu,
            tau,
            start: Fin(s.pattern_start().unwrap()),
        };
    }
    let terms = s.transient().terms();
    match terms.last() {
        Some(last) if last.exp == PosInf => Growth::Regular {
            nu: 0,
            tau: 1,
            start: match terms.len() {
                1 => NegInf,
                n => Fin(terms[n - 2].exp.finite().unwrap() + 1),
            },
        },
        Some(last) => Growth::Vanishing { after: last.exp },
        None => Growth::Vanishing { after: NegInf },
    }
}

/// Whether `t` shows that `y ⊙♭ a` is undefined: `a(t)` is infinite while
/// `y(t)` is not `+∞`.
pub fn violates_domain(y: &Series, a: &Series, t: i64) -> Result<bool> {
    Ok(y.value(t)? != PosInf && a.value(t)?.is_infinite())
}

/// Future minimum of `y(i) - a(i)` (with `+∞ - ∞ = +∞`) over `i >= t`, or
/// the violating instant when `y ⊙♭ a` is undefined.
pub fn oracle_flat(y: &Series, a: &Series, lo: i64, hi: i64) -> Result<OpOutcome<CoeffWindow>> {
    let t1 = first_change(y, a).unwrap_or(lo);
    let mut candidates = vec![t1.min(lo), lo, hi];
    for s in [y, a] {
        for m in s.transient().terms() {
            if let Fin(e) = m.exp {
                candidates.extend([e, e + 1]);
            }
        }
    }
    if let Some(t) = a.pattern_start() {
        candidates.push(t);
    }
    for t in candidates {
        if violates_domain(y, a, t)? {
            return Ok(OpOutcome::Undefined {
                reason: format!("a({t}) is infinite and y({t}) is not +inf"),
                witness: Some(Fin(t)),
            });
        }
    }

    let end = match (growth(y), growth(a)) {
        (Growth::Vanishing { after }, _) => match after {
            Fin(e) => hi.max(e),
            _ => hi,
        },
        (_, Growth::Vanishing { .. }) => hi,
        (Growth::Regular { nu, tau, start }, Growth::Regular { nu: nu2, tau: tau2, start: start2 }) => {
            let tau_bar = tau / extnum::gcd(tau, tau2) * tau2;
            let nu_bar = tau_bar / tau * nu - tau_bar / tau2 * nu2;
            if nu_bar < 0 {
                let values = vec![NegInf; (hi - lo + 1) as usize];
                return Ok(OpOutcome::Ok(CoeffWindow { lo, hi, values }));
            }
            let tp = extnum::max(start, start2).finite().unwrap_or(lo);
            hi.max(tp) + tau_bar - 1
        }
    };
    let mut values = vec![PosInf; (hi - lo + 1) as usize];
    let mut running = PosInf;
    for t in (lo..=end).rev() {
        running = extnum::min(running, difference(y, a, t, InfConvention::PosInf)?);
        if t <= hi {
            values[(t - lo) as usize] = running;
        }
    }
    Ok(OpOutcome::Ok(CoeffWindow { lo, hi, values }))
}
