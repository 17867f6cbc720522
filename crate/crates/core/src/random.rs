//! Random counters for tests and demos.

use rand::Rng;

use crate::extnum::{ExtInt, Fin, NegInf, PosInf};
use crate::series::{Monomial, Polynomial, Series};

/// Value ranges of the generated representations.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub coeff: (i64, i64),
    pub exp: (i64, i64),
    pub nu: (i64, i64),
    pub tau: (i64, i64),
    pub max_terms: usize,
    /// Whether a leading `-∞` coefficient may appear.
    pub neg_inf: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            coeff: (-20, 20),
            exp: (-20, 20),
            nu: (0, 8),
            tau: (1, 6),
            max_terms: 4,
            neg_inf: true,
        }
    }
}

impl Shape {
    fn mono(&self, rng: &mut impl Rng) -> Monomial {
        Monomial::new(
            rng.gen_range(self.coeff.0..=self.coeff.1),
            rng.gen_range(self.exp.0..=self.exp.1),
        )
    }

    fn terms(&self, rng: &mut impl Rng, min: usize) -> Vec<Monomial> {
        let n = rng.gen_range(min..=self.max_terms);
        (0..n).map(|_| self.mono(rng)).collect()
    }

    fn leading_neg_inf(&self, rng: &mut impl Rng, terms: &mut Vec<Monomial>) {
        if self.neg_inf && rng.gen_bool(0.1) {
            let exp = rng.gen_range(self.exp.0..=self.exp.1);
            terms.push(Monomial::new(NegInf, exp));
        }
    }

    /// A polynomial, sometimes ending in a constant.
    pub fn polynomial(&self, rng: &mut impl Rng) -> Polynomial {
        let mut terms = self.terms(rng, 0);
        if rng.gen_bool(0.3) {
            let coeff = rng.gen_range(self.coeff.0..=self.coeff.1 + 10);
            terms.push(Monomial::new(coeff, PosInf));
        }
        self.leading_neg_inf(rng, &mut terms);
        Polynomial::from_unsorted_terms(terms)
    }

    /// An ultimately periodic series built from arbitrary raw terms; a zero
    /// growth rate yields a polynomial.
    pub fn periodic(&self, rng: &mut impl Rng) -> Series {
        let mut transient = self.terms(rng, 0);
        transient.truncate(3);
        self.leading_neg_inf(rng, &mut transient);
        let pattern = self.terms(rng, 1);
        let nu = rng.gen_range(self.nu.0..=self.nu.1);
        let tau = rng.gen_range(self.tau.0..=self.tau.1);
        Series::assemble(transient, pattern, Fin(nu), Fin(tau)).expect("small values")
    }

    /// A periodic series with a positive growth rate.
    pub fn strictly_periodic(&self, rng: &mut impl Rng) -> Series {
        loop {
            let s = self.periodic(rng);
            if s.is_periodic() {
                return s;
            }
        }
    }

    /// Mostly periodic series, some polynomials, rarely `s_ε` or `s_⊤`.
    pub fn series(&self, rng: &mut impl Rng) -> Series {
        match rng.gen_range(0..100) {
            0..=1 => Series::epsilon(),
            2 if self.neg_inf => Series::top(),
            2..=29 => self.polynomial(rng).into(),
            _ => self.periodic(rng),
        }
    }
}

/// A valid but non-canonical representation of `s`: the first `copies`
/// pattern instances are moved into the transient, and with `double` the
/// period is written as two periods.
pub fn unrolled(s: &Series, copies: i64, double: bool) -> Series {
    let (Some(q), Some((nu, tau))) = (s.pattern(), s.period()) else {
        return s.clone();
    };
    let shift = |m: &Monomial, k: i64| {
        let add = |v: ExtInt, d: i64| Fin(v.finite().unwrap() + d);
        Monomial {
            coeff: add(m.coeff, k * nu),
            exp: add(m.exp, k * tau),
        }
    };
    let mut transient = s.transient().terms().to_vec();
    for k in 0..copies {
        transient.extend(q.terms().iter().map(|m| shift(m, k)));
    }
    let mut pattern: Vec<Monomial> = q.terms().iter().map(|m| shift(m, copies)).collect();
    let (mut nu, mut tau) = (nu, tau);
    if double {
        pattern.extend(q.terms().iter().map(|m| shift(m, copies + 1)));
        nu *= 2;
        tau *= 2;
    }
    Series::new(
        Polynomial::new(transient).unwrap(),
        Polynomial::new(pattern).unwrap(),
        Fin(nu),
        Fin(tau),
    )
    .unwrap()
}
