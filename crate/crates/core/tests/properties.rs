//! Property tests across the exact, numeric and symbolic layers.

use proptest::prelude::*;

use hypcheck::catalog::{bundled_catalog, verify_identity, Kind, Outcome};
use hypcheck::gammaexpr::{ge_eval, ge_mul, ge_reflect, num_verdict};
use hypcheck::hyper::{f21_eval_integral, f21_series_rational, pochhammer, DEFAULT_TERM_CAP};
use hypcheck::mpreal::{beta, pow_rational, tanh_sinh, QuadOptions};
use hypcheck::{BigReal, GammaExpr, HypParams, Poly, Precision, RatFunc, Rational, Verdict};

fn rat(num: std::ops::Range<i64>, max_den: i64) -> impl Strategy<Value = Rational> {
    (num, 1..=max_den).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

/// Positive rational that is not an integer.
fn non_integer(max: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (0..max, 2..=max_den, 1..max_den).prop_filter_map("integer", |(k, d, n)| {
        let x = Rational::new(k * d + n % d, d).unwrap();
        (!x.is_integer() && x.is_positive()).then_some(x)
    })
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(-4..5, 3), 1..=max_deg + 1).prop_map(Poly::new)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(2), poly(2)).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn gamma_expr() -> impl Strategy<Value = GammaExpr> {
    let factor = prop_oneof![
        (rat(1..20, 6), rat(-3..4, 4)).prop_map(|(b, e)| GammaExpr::rat_pow(&b, &e).unwrap()),
        rat(-3..4, 2).prop_map(|e| GammaExpr::pi_pow(&e)),
        (non_integer(3, 8), -2i64..3).prop_map(|(x, k)| GammaExpr::gamma(&x, k).unwrap()),
        (3i64..6, prop::sample::select(vec![-1i64, 1]), prop::sample::select(vec![2i64, 3, 5]), -2i64..3).prop_map(
            |(p, q, d, k)| GammaExpr::surd(&Rational::int(p), &Rational::int(q), &Rational::int(d), k).unwrap()
        ),
    ];
    prop::collection::vec(factor, 0..4).prop_map(|fs| fs.iter().fold(GammaExpr::one(), |acc, f| acc.mul(f)))
}

fn agree(x: &BigReal, y: &BigReal, digits: u32) -> bool {
    num_verdict(x, y, digits) == Verdict::EqualWithinBounds
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in rat(-50..50, 12), b in rat(-50..50, 12), c in rat(-50..50, 12)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn comparator_is_monotone_in_digits(
        m in -1_000_000i64..1_000_000,
        shift in 0i64..1000,
        e in 10u32..60,
        d in 5u32..60,
        lower in 1u32..60,
    ) {
        // two enclosures of nearby values with radius 10^−e
        let scale = Rational::int(10).powi(-(e as i64)).unwrap();
        let x = BigReal::from_rational(&Rational::new(m, 1000).unwrap(), 256);
        let y = BigReal::from_rational(&(&Rational::new(m, 1000).unwrap() + &(&scale * &Rational::int(shift))), 256);
        let r = BigReal::from_rational(&scale, 64).mag_up();
        let (x, y) = (x.add_err(r), y.add_err(r));
        if num_verdict(&x, &y, d) == Verdict::EqualWithinBounds && lower < d {
            prop_assert_eq!(num_verdict(&x, &y, lower), Verdict::EqualWithinBounds);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn composition_is_a_homomorphism(f in ratfunc(), g in ratfunc(), x in rat(-20..20, 7)) {
        let Ok(h) = f.compose(&g) else { return Ok(()) };
        let Ok(gx) = g.eval(&x) else { return Ok(()) };
        if let Ok(fgx) = f.eval(&gx) {
            // h may be defined at x after cancellation even where f∘g is not
            prop_assert_eq!(h.eval(&x).unwrap(), fgx);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflection_formula(x in prop::sample::select(vec![
        "1/6", "1/4", "1/3", "1/2", "2/3", "3/4", "5/6", "7/6", "5/4", "-1/4", "-5/3", "13/6", "-7/2",
    ]), k in 1i64..3) {
        let x: Rational = x.parse().unwrap();
        let y = &Rational::one() - &x;
        let e = GammaExpr::gamma(&x, k).unwrap().mul(&GammaExpr::gamma(&y, k).unwrap());
        let r = ge_reflect(&e, &x).unwrap();
        prop_assert!(r.gamma_factors().count() < e.gamma_factors().count() || x == Rational::frac(1, 2));
        let prec = Precision::digits(30);
        prop_assert!(agree(&ge_eval(&e, prec).unwrap(), &ge_eval(&r, prec).unwrap(), 30));
    }

    #[test]
    fn duplication_formula(x in non_integer(6, 12)) {
        // Γ(x)Γ(x+1/2) = 2^(1−2x) √π Γ(2x)
        let half = Rational::frac(1, 2);
        let two_x = &Rational::int(2) * &x;
        prop_assume!(!two_x.is_nonpositive_integer());
        let lhs = GammaExpr::gamma(&x, 1).unwrap().mul(&GammaExpr::gamma(&(&x + &half), 1).unwrap());
        let rhs = GammaExpr::rat_pow(&Rational::int(2), &(&Rational::one() - &two_x)).unwrap()
            .mul(&GammaExpr::pi_pow(&half))
            .mul(&GammaExpr::gamma(&two_x, 1).unwrap());
        let prec = Precision::digits(30);
        prop_assert!(agree(&ge_eval(&lhs, prec).unwrap(), &ge_eval(&rhs, prec).unwrap(), 30));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_evaluates_to_product(x in gamma_expr(), y in gamma_expr()) {
        let prec = Precision::digits(25);
        let joint = ge_eval(&ge_mul(&x, &y), prec).unwrap();
        let apart = &ge_eval(&x, prec).unwrap() * &ge_eval(&y, prec).unwrap();
        prop_assert!(agree(&joint, &apart, 25), "{} · {}", x, y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn quadrature_matches_beta(x in rat(1..36, 12), y in rat(1..36, 12)) {
        let prec = Precision::digits(25);
        let (ex, ey) = (&x - &Rational::one(), &y - &Rational::one());
        let pw = |v: &BigReal, e: &Rational| if e.is_zero() { Ok(BigReal::one(v.prec())) } else { pow_rational(v, e) };
        let q = tanh_sinh(
            |pt| Ok(&pw(pt.from_a, &ex)? * &pw(pt.to_b, &ey)?),
            &Rational::zero(),
            &Rational::one(),
            prec,
            &QuadOptions::default(),
        ).unwrap();
        prop_assert!(agree(&q.value, &beta(&x, &y, prec).unwrap(), 25));
    }

    #[test]
    fn series_matches_integral(
        a in rat(-24..36, 12),
        b in rat(1..24, 12),
        gap in rat(1..24, 12),
        z in (-9i64..10).prop_map(|n| Rational::new(n, 10).unwrap()),
    ) {
        let c = &b + &gap;
        let p = HypParams::new(a, b, c).unwrap();
        prop_assume!(p.termination().is_none());
        let prec = Precision::digits(25);
        let s = f21_series_rational(&p, &z, prec, DEFAULT_TERM_CAP).unwrap().value;
        let i = f21_eval_integral(&p, &z, prec).unwrap().value;
        prop_assert!(agree(&s, &i, 25), "{} at {}", p, z);
    }

    #[test]
    fn pochhammer_recurrence(x in rat(-40..40, 9)) {
        // exhaustive in n for each sampled x
        prop_assert_eq!(pochhammer(&x, 0), Rational::one());
        for n in 0..50u64 {
            prop_assert_eq!(pochhammer(&x, n + 1), &pochhammer(&x, n) * &(&x + &Rational::int(n)));
        }
        if !x.is_nonpositive_integer() {
            // (x)_n = Γ(x+n)/Γ(x) whenever both sides are defined
            let prec = Precision::digits(20);
            for n in [1u64, 7, 25, 50] {
                let g = GammaExpr::gamma(&(&x + &Rational::int(n)), 1).unwrap().mul(&GammaExpr::gamma(&x, -1).unwrap());
                let p = BigReal::from_rational(&pochhammer(&x, n), prec.work_bits());
                prop_assert!(agree(&ge_eval(&g, prec).unwrap(), &p, 20));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn catalog_passes_persist_at_lower_precision(pick in 0usize..64, lower in 5u32..30) {
        let points: Vec<_> = bundled_catalog()
            .into_iter()
            .filter(|r| r.kind == Kind::PointEvaluation && r.digits.is_none())
            .collect();
        let r = &points[pick % points.len()];
        let high = verify_identity(r, Precision::digits(30));
        if high.verdict == Outcome::Pass {
            prop_assert_eq!(verify_identity(r, Precision::digits(lower)).verdict, Outcome::Pass, "{}", r.id);
        }
    }
}

#[test]
fn pochhammer_covers_twenty_points() {
    // the proptest above samples; this pins the full 20 × 51 grid
    let xs: Vec<Rational> = (0..20).map(|i| Rational::new(2 * i - 17, 6).unwrap()).collect();
    for x in &xs {
        let mut acc = Rational::one();
        for n in 0..=50u64 {
            assert_eq!(pochhammer(x, n), acc, "x = {x}, n = {n}");
            acc = &acc * &(x + &Rational::int(n));
        }
    }
}
