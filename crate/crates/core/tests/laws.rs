use counters::extnum::{ExtInt, Fin, NegInf, PosInf};
use counters::hadamard::{self, OpOutcome};
use counters::random::unrolled;
use counters::series::{equals, leq, oplus, wedge, Monomial, Polynomial, Series};
use counters::text::{format_series, parse_series, to_json};
use proptest::prelude::*;

fn mono() -> impl Strategy<Value = Monomial> {
    (-20i64..=20, -20i64..=20).prop_map(|(n, t)| Monomial::new(n, t))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    (
        prop::collection::vec(mono(), 0..5),
        prop::option::weighted(0.3, -20i64..=30),
        prop::option::weighted(0.1, -20i64..=20),
    )
        .prop_map(|(mut terms, tail, head)| {
            if let Some(n) = tail {
                terms.push(Monomial::new(n, PosInf));
            }
            if let Some(t) = head {
                terms.push(Monomial::new(NegInf, t));
            }
            Polynomial::from_unsorted_terms(terms)
        })
}

fn periodic(min_nu: i64) -> impl Strategy<Value = Series> {
    (
        prop::collection::vec(mono(), 0..3),
        prop::collection::vec(mono(), 1..5),
        min_nu..=8,
        1i64..=6,
        prop::option::weighted(0.1, -20i64..=20),
    )
        .prop_map(|(mut transient, pattern, nu, tau, head)| {
            if let Some(t) = head {
                transient.push(Monomial::new(NegInf, t));
            }
            Series::assemble(transient, pattern, Fin(nu), Fin(tau)).unwrap()
        })
}

fn series() -> impl Strategy<Value = Series> {
    prop_oneof![
        1 => Just(Series::epsilon()),
        1 => Just(Series::top()),
        10 => polynomial().prop_map(Series::from),
        25 => periodic(0),
    ]
}

fn finite_series() -> impl Strategy<Value = Series> {
    series().prop_filter("no -inf head", |s| {
        s.transient().terms().first().is_none_or(|m| m.coeff != NegInf)
    })
}

fn same_values(a: &Series, b: &Series, lo: i64, hi: i64) -> bool {
    (lo..=hi).all(|t| a.value(t).unwrap() == b.value(t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn canonical_form_is_idempotent(s in series(), copies in 0i64..3, double: bool) {
        let raw = unrolled(&s, copies, double);
        let c = raw.canonicalize().unwrap();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(&c, &s);
        prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
        prop_assert!(same_values(&raw, &c, -40, 80));
    }

    #[test]
    fn text_round_trips(s in series()) {
        let text = format_series(&s);
        let back = parse_series(&text).unwrap();
        prop_assert!(equals(&back, &s).unwrap());
        prop_assert_eq!(format_series(&back), text);
        let json = to_json(&s);
        prop_assert_eq!(json["transient"].as_array().unwrap().len(), s.transient().len());
        prop_assert_eq!(json.get("period").is_some(), s.is_periodic());
    }

    #[test]
    fn values_are_non_decreasing(s in series()) {
        let mut prev = NegInf;
        for t in -40..80 {
            let v: ExtInt = s.value(t).unwrap();
            prop_assert!(prev <= v, "{} at {}", s, t);
            prev = v;
        }
    }

    #[test]
    fn order_is_pointwise(a in series(), b in series()) {
        let pointwise = (-40..80).all(|t| a.value(t).unwrap() >= b.value(t).unwrap());
        let ordered = leq(&a, &b).unwrap();
        // the sampled window can only miss a violation, never invent one
        prop_assert!(!ordered || pointwise);
        prop_assert_eq!(ordered, equals(&oplus(&a, &b).unwrap(), &b).unwrap());
        prop_assert_eq!(ordered, equals(&wedge(&a, &b).unwrap(), &a).unwrap());
    }

    #[test]
    fn lattice_laws(a in series(), b in series()) {
        prop_assert_eq!(oplus(&a, &b).unwrap(), oplus(&b, &a).unwrap());
        prop_assert_eq!(wedge(&a, &b).unwrap(), wedge(&b, &a).unwrap());
        prop_assert_eq!(oplus(&a, &a).unwrap(), a.clone());
        prop_assert_eq!(oplus(&a, &wedge(&a, &b).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(wedge(&a, &oplus(&a, &b).unwrap()).unwrap(), a.clone());
    }

    #[test]
    fn odot_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        let ab = hadamard::odot(&a, &b).unwrap();
        prop_assert_eq!(&ab, &hadamard::odot(&b, &a).unwrap());
        let left = hadamard::odot(&ab, &c).unwrap();
        let right = hadamard::odot(&a, &hadamard::odot(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let zero = parse_series("0dinf").unwrap();
        prop_assert_eq!(hadamard::odot(&a, &zero).unwrap(), a.clone());
    }

    #[test]
    fn odot_distributes(a in finite_series(), b in series(), c in series()) {
        let over_wedge = hadamard::odot(&a, &wedge(&b, &c).unwrap()).unwrap();
        let split = wedge(&hadamard::odot(&a, &b).unwrap(), &hadamard::odot(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(over_wedge, split);
        let over_oplus = hadamard::odot(&a, &oplus(&b, &c).unwrap()).unwrap();
        let split = oplus(&hadamard::odot(&a, &b).unwrap(), &hadamard::odot(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(over_oplus, split);
    }

    #[test]
    fn throughputs_add(a in periodic(1), b in periodic(1)) {
        let r = hadamard::odot(&a, &b).unwrap();
        let ((n1, d1), (n2, d2)) = (a.throughput().unwrap(), b.throughput().unwrap());
        let (n, d) = r.throughput().unwrap();
        prop_assert_eq!(n * d1 * d2, (n1 * d2 + n2 * d1) * d);
    }

    #[test]
    fn residual_is_greatest(a in series(), y in series(), x in series()) {
        let r = hadamard::sharp(&y, &a).unwrap();
        prop_assert!(leq(&hadamard::odot(&a, &r).unwrap(), &y).unwrap());
        let below = hadamard::odot(&a, &x).unwrap();
        if leq(&below, &y).unwrap() {
            prop_assert!(leq(&x, &r).unwrap());
        }
        // y ⊕ a ⊙ x always lies below y, so x is below its residual
        let y2 = oplus(&y, &below).unwrap();
        prop_assert!(leq(&x, &hadamard::sharp(&y2, &a).unwrap()).unwrap());
    }

    #[test]
    fn dual_residual_is_least(a in finite_series(), y in series(), x in finite_series()) {
        if let OpOutcome::Ok(r) = hadamard::flat(&y, &a).unwrap() {
            prop_assert!(leq(&y, &hadamard::odot(&a, &r).unwrap()).unwrap());
        }
        let above = hadamard::odot(&a, &x).unwrap();
        let y2 = wedge(&y, &above).unwrap();
        match hadamard::flat(&y2, &a).unwrap() {
            OpOutcome::Ok(r) => prop_assert!(leq(&r, &x).unwrap()),
            // a ⊙ x is +inf wherever a is, so y2 always lies in the domain
            OpOutcome::Undefined { reason, .. } => prop_assert!(false, "{}", reason),
        }
    }

    #[test]
    fn polynomial_kernels_skip_work(p in polynomial(), q in polynomial()) {
        let (m, m2) = (p.len(), q.len());
        let (r, count) = hadamard::odot_poly_counted(&p, &q).unwrap();
        prop_assert!(count <= (m + m2).saturating_sub(1));
        let naive = p.terms().iter().flat_map(|&x| q.terms().iter().map(move |&y| (x, y)))
            .map(|(x, y)| Series::from(hadamard::odot_mono(x, y).unwrap()))
            .fold(Series::epsilon(), |acc, s| oplus(&acc, &s).unwrap());
        prop_assert_eq!(Series::from(r), naive);

        let (r, count) = hadamard::sharp_poly_counted(&p, &q).unwrap();
        prop_assert!(count <= m * m2);
        let naive = q.terms().iter().map(|&y| {
            p.terms().iter()
                .map(|&x| Series::from(hadamard::sharp_mono(x, y).unwrap()))
                .fold(Series::epsilon(), |acc, s| oplus(&acc, &s).unwrap())
        }).fold(Series::top(), |acc, s| wedge(&acc, &s).unwrap());
        prop_assert_eq!(Series::from(r), naive);

        if let OpOutcome::Ok((_, count)) = hadamard::flat_poly_counted(&p, &q).unwrap() {
            prop_assert!(count <= m * m2);
        }
    }
}
