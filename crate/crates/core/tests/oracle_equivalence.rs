use counters::extnum::{lcm, ExtInt, Fin};
use counters::hadamard::{self, OpOutcome};
use counters::oracle::{self, CoeffWindow};
use counters::random::Shape;
use counters::series::{self, Series};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PAIRS: usize = 3000;

/// A window covering every stored exponent plus three common periods.
fn window(operands: &[&Series]) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    let mut tau = 1;
    for s in operands {
        let exps = s
            .transient()
            .terms()
            .iter()
            .chain(s.pattern().map_or(&[][..], |q| q.terms()))
            .filter_map(|m| m.exp.finite());
        for e in exps {
            lo = lo.min(e);
            hi = hi.max(e);
        }
        if let Some((_, t)) = s.period() {
            tau = lcm(Fin(tau), Fin(t)).unwrap();
        }
    }
    if lo > hi {
        return (-5, 5);
    }
    (lo - 2, hi + 3 * tau + 2)
}

fn assert_window(what: &str, got: &Series, want: &CoeffWindow, operands: (&Series, &Series)) {
    let have = oracle::window_of(got, want.lo, want.hi).unwrap();
    assert_eq!(
        have.values, want.values,
        "{what}({}, {}) = {got} on [{}, {}]",
        operands.0, operands.1, want.lo, want.hi
    );
}

#[test]
fn odot_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let shape = Shape::default();
    for _ in 0..PAIRS {
        let (a, b) = (shape.series(&mut rng), shape.series(&mut rng));
        let r = hadamard::odot(&a, &b).unwrap();
        assert!(r.is_canonical());
        let (lo, hi) = window(&[&a, &b, &r]);
        assert_window("odot", &r, &oracle::oracle_odot(&a, &b, lo, hi).unwrap(), (&a, &b));
    }
}

#[test]
fn sharp_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let shape = Shape::default();
    for _ in 0..PAIRS {
        let (y, a) = (shape.series(&mut rng), shape.series(&mut rng));
        let r = hadamard::sharp(&y, &a).unwrap();
        assert!(r.is_canonical(), "{r}");
        let (lo, hi) = window(&[&y, &a, &r]);
        assert_window("sharp", &r, &oracle::oracle_sharp(&y, &a, lo, hi).unwrap(), (&y, &a));
    }
}

#[test]
fn flat_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let shape = Shape::default();
    let mut defined = 0;
    for _ in 0..PAIRS {
        let (y, a) = (shape.series(&mut rng), shape.series(&mut rng));
        let (lo, hi) = window(&[&y, &a]);
        let want = oracle::oracle_flat(&y, &a, lo, hi).unwrap();
        match hadamard::flat(&y, &a).unwrap() {
            OpOutcome::Ok(r) => {
                defined += 1;
                assert!(r.is_canonical(), "{r}");
                let (lo, hi) = window(&[&y, &a, &r]);
                let want = oracle::oracle_flat(&y, &a, lo, hi).unwrap();
                let want = want.ok().unwrap_or_else(|| panic!("oracle says undefined for {y} / {a}"));
                assert_window("flat", &r, &want, (&y, &a));
            }
            OpOutcome::Undefined { witness, reason } => {
                assert!(!want.is_defined(), "{y} / {a}: {reason}");
                let t = match witness {
                    Some(Fin(t)) => t,
                    other => panic!("no finite witness {other:?} for {y} / {a}"),
                };
                assert!(oracle::violates_domain(&y, &a, t).unwrap(), "{y} / {a} at {t}");
            }
        }
    }
    assert!(defined > PAIRS / 10, "only {defined} defined pairs");
}

#[test]
fn flat_on_finite_divisors_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let shape = Shape {
        neg_inf: false,
        ..Shape::default()
    };
    for _ in 0..PAIRS {
        let y = shape.series(&mut rng);
        let a = shape.strictly_periodic(&mut rng);
        let r = hadamard::flat(&y, &a).unwrap().ok().unwrap();
        let (lo, hi) = window(&[&y, &a, &r]);
        let want = oracle::oracle_flat(&y, &a, lo, hi).unwrap().ok().unwrap();
        assert_window("flat", &r, &want, (&y, &a));
    }
}

#[test]
fn pointwise_min_max_match_eval() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let shape = Shape::default();
    for _ in 0..PAIRS {
        let (a, b) = (shape.series(&mut rng), shape.series(&mut rng));
        let lo_r = series::oplus(&a, &b).unwrap();
        let hi_r = series::wedge(&a, &b).unwrap();
        assert!(lo_r.is_canonical() && hi_r.is_canonical());
        let (lo, hi) = window(&[&a, &b, &lo_r, &hi_r]);
        for t in lo..=hi {
            let (x, y): (ExtInt, ExtInt) = (a.value(t).unwrap(), b.value(t).unwrap());
            assert_eq!(lo_r.value(t).unwrap(), x.min(y), "{a} oplus {b} = {lo_r} at {t}");
            assert_eq!(hi_r.value(t).unwrap(), x.max(y), "{a} wedge {b} = {hi_r} at {t}");
        }
    }
}

#[test]
fn oplus_of_different_throughputs_follows_the_slower() {
    let fast = "(0d0)(1d1)*".parse::<Series>().unwrap();
    let slow = "(5d3 + 6d4)(1d2)*".parse::<Series>().unwrap();
    let r = series::oplus(&fast, &slow).unwrap();
    assert_eq!(r.period(), Some((1, 2)));
    let (lo, hi) = window(&[&fast, &slow, &r]);
    for t in lo..=hi + 12 {
        let want = fast.value(t).unwrap().min(slow.value(t).unwrap());
        assert_eq!(r.value(t).unwrap(), want, "t = {t}");
    }
}

#[test]
fn wide_shapes_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let shape = Shape {
        coeff: (-60, 60),
        exp: (-40, 40),
        nu: (0, 25),
        tau: (1, 12),
        max_terms: 6,
        neg_inf: true,
    };
    for _ in 0..PAIRS / 3 {
        let (a, b) = (shape.series(&mut rng), shape.series(&mut rng));
        let r = hadamard::odot(&a, &b).unwrap();
        let (lo, hi) = window(&[&a, &b, &r]);
        assert_window("odot", &r, &oracle::oracle_odot(&a, &b, lo, hi).unwrap(), (&a, &b));

        let r = hadamard::sharp(&a, &b).unwrap();
        let (lo, hi) = window(&[&a, &b, &r]);
        assert_window("sharp", &r, &oracle::oracle_sharp(&a, &b, lo, hi).unwrap(), (&a, &b));

        if let OpOutcome::Ok(r) = hadamard::flat(&a, &b).unwrap() {
            let (lo, hi) = window(&[&a, &b, &r]);
            let want = oracle::oracle_flat(&a, &b, lo, hi).unwrap().ok().unwrap();
            assert_window("flat", &r, &want, (&a, &b));
        }
    }
}
