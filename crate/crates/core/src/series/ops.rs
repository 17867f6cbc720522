//! Pointwise `⊕` (min) and `∧` (max) and the order between counters.

use std::cmp::Ordering;

use super::{constant_after, periodic_from_expansion, Monomial, Polynomial, Series, Tail};
use crate::error::Result;
use crate::extnum::{self, cmp_ratio, div_ceil, lcm, ExtInt, Fin, NegInf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pointwise {
    Min,
    Max,
}

impl Pointwise {
    fn apply(self, a: ExtInt, b: ExtInt) -> ExtInt {
        match self {
            Pointwise::Min => extnum::min(a, b),
            Pointwise::Max => extnum::max(a, b),
        }
    }
}

/// Where the combined counter settles.
enum Regime {
    Periodic { start: i64, nu: i64, tau: i64 },
    ConstantFrom(ExtInt),
    Exact(Polynomial),
}

/// Pointwise combination of two polynomials, evaluated at every change point
/// of either operand.
pub(crate) fn combine_polys(p: &Polynomial, q: &Polynomial, f: impl Fn(ExtInt, ExtInt) -> ExtInt) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .chain(q.terms())
        .map(|m| Monomial::new(f(p.value_at(m.exp), q.value_at(m.exp)), m.exp));
    Polynomial::from_unsorted_terms(terms)
}

/// `(s ⊕ s')(t) = min(s(t), s'(t))`.
pub fn oplus(s: &Series, s2: &Series) -> Result<Series> {
    combine(s, s2, Pointwise::Min)
}

/// `(s ∧ s')(t) = max(s(t), s'(t))`.
pub fn wedge(s: &Series, s2: &Series) -> Result<Series> {
    combine(s, s2, Pointwise::Max)
}

fn combine(a: &Series, b: &Series, op: Pointwise) -> Result<Series> {
    let a = a.canonicalize()?;
    let b = b.canonicalize()?;
    let f = |x, y| op.apply(x, y);
    let regime = match (a.tail(), b.tail()) {
        (Tail::Periodic { .. }, Tail::Periodic { .. }) => periodic_pair(&a, &b, op)?,
        (Tail::Periodic { .. }, other) => periodic_with_polynomial(&a, other, b.as_polynomial().unwrap(), op)?,
        (other, Tail::Periodic { .. }) => periodic_with_polynomial(&b, other, a.as_polynomial().unwrap(), op)?,
        _ => Regime::Exact(combine_polys(
            a.as_polynomial().unwrap(),
            b.as_polynomial().unwrap(),
            f,
        )),
    };
    match regime {
        Regime::Exact(p) => Ok(p.into()),
        Regime::ConstantFrom(from) => {
            let h = match from {
                Fin(h) => h,
                _ => 0,
            };
            let p = combine_polys(&a.expand(h)?, &b.expand(h)?, f);
            Ok(constant_after(&p, h))
        }
        Regime::Periodic { start, nu, tau } => {
            let horizon = extnum::add(start, tau - 1)?;
            let p = combine_polys(&a.expand(horizon)?, &b.expand(horizon)?, f);
            periodic_from_expansion(&p, start, nu, tau)
        }
    }
}

fn periodic_with_polynomial(s: &Series, tail: Tail, p: &Polynomial, op: Pointwise) -> Result<Regime> {
    let start = s.pattern_start().unwrap();
    let (nu, tau) = s.period().unwrap();
    let f = |x, y| op.apply(x, y);
    Ok(match (tail, op) {
        (Tail::Vanishing { after }, Pointwise::Min) => Regime::Periodic {
            start: match after {
                Fin(e) => std::cmp::max(start, extnum::add(e, 1)?),
                _ => start,
            },
            nu,
            tau,
        },
        (Tail::Vanishing { after }, Pointwise::Max) => match after {
            Fin(e) => Regime::Exact(combine_polys(&s.expand(e)?, p, f)),
            _ => Regime::Exact(Polynomial::epsilon()),
        },
        (Tail::Constant { value: NegInf, .. }, Pointwise::Min) => Regime::Exact(Polynomial::top()),
        (Tail::Constant { value: NegInf, .. }, Pointwise::Max) => Regime::Periodic { start, nu, tau },
        (Tail::Constant { value, from }, op) => {
            let reached = s.first_at_least(value)?;
            let settle = extnum::max(from, reached);
            match op {
                Pointwise::Min => Regime::ConstantFrom(settle),
                Pointwise::Max => Regime::Periodic {
                    start: match settle {
                        Fin(t) => std::cmp::max(t, start),
                        _ => start,
                    },
                    nu,
                    tau,
                },
            }
        }
        (Tail::Periodic { .. }, _) => unreachable!("polynomial operand"),
    })
}

fn periodic_pair(a: &Series, b: &Series, op: Pointwise) -> Result<Regime> {
    let (nu_a, tau_a) = a.period().unwrap();
    let (nu_b, tau_b) = b.period().unwrap();
    let tau_bar = lcm(Fin(tau_a), Fin(tau_b))?;
    let grow_a = extnum::mul(tau_bar / tau_a, nu_a)?;
    let grow_b = extnum::mul(tau_bar / tau_b, nu_b)?;
    let start = std::cmp::max(a.pattern_start().unwrap(), b.pattern_start().unwrap());
    let (slow, fast) = match cmp_ratio(nu_a, tau_a, nu_b, tau_b) {
        Ordering::Equal => {
            return Ok(Regime::Periodic {
                start,
                nu: grow_a,
                tau: tau_bar,
            })
        }
        Ordering::Less => (a, b),
        Ordering::Greater => (b, a),
    };
    // fast - slow gains `gap` every τ̄ once both are periodic
    let gap = (grow_a - grow_b).abs();
    let lowest = lowest_difference(fast, slow, start, tau_bar)?;
    let copies = std::cmp::max(0, div_ceil(extnum::sub(0, lowest)?, gap));
    let crossover = extnum::add(start, extnum::mul(copies, tau_bar)?)?;
    let winner = match op {
        Pointwise::Min => slow,
        Pointwise::Max => fast,
    };
    let (nu, tau) = winner.period().unwrap();
    Ok(Regime::Periodic {
        start: crossover,
        nu,
        tau,
    })
}

/// `min (hi(t) - lo(t))` over `[start, start + τ̄ - 1]`, both periodic there.
fn lowest_difference(hi: &Series, lo: &Series, start: i64, tau_bar: i64) -> Result<i64> {
    let end = extnum::add(start, tau_bar - 1)?;
    let mut points = vec![start];
    for s in [hi, lo] {
        for m in s.expand(end)?.terms() {
            if let Fin(e) = m.exp {
                if e >= start && e < end {
                    points.push(e + 1);
                }
            }
        }
    }
    let mut best = i64::MAX;
    for t in points {
        let d = match (hi.value(t)?, lo.value(t)?) {
            (Fin(x), Fin(y)) => extnum::sub(x, y)?,
            _ => unreachable!("periodic regime is finite"),
        };
        best = best.min(d);
    }
    Ok(best)
}

/// Equality of the counters denoted by two canonical series.
fn same_counter(a: &Series, b: &Series) -> Result<bool> {
    if a == b {
        return Ok(true);
    }
    match (a.period(), b.period()) {
        (Some((nu_a, tau_a)), Some((nu_b, tau_b))) => {
            if cmp_ratio(nu_a, tau_a, nu_b, tau_b) != Ordering::Equal {
                return Ok(false);
            }
            let tau_bar = lcm(Fin(tau_a), Fin(tau_b))?;
            let start = std::cmp::max(a.pattern_start().unwrap(), b.pattern_start().unwrap());
            let horizon = extnum::add(start, tau_bar - 1)?;
            Ok(a.expand(horizon)? == b.expand(horizon)?)
        }
        _ => Ok(false),
    }
}

/// `s ⪯ s'` in the dioid order, i.e. `s(t) >= s'(t)` for every `t`.
pub fn leq(s: &Series, s2: &Series) -> Result<bool> {
    same_counter(&oplus(s, s2)?, &s2.canonicalize()?)
}

/// Whether `s` and `s'` denote the same counter.
pub fn equals(s: &Series, s2: &Series) -> Result<bool> {
    same_counter(&s.canonicalize()?, &s2.canonicalize()?)
}
