use num_traits::{One, Zero};
use proptest::prelude::*;

use trinoid::exactalg::rational::sign;
use trinoid::exactalg::{
    count_roots, count_roots_report, eliminate_radicals, fmt_rational, four_sign_product, int, parse_rational, rat,
    reduce_radicals, QuadTower, Rational, TriPoly, UniPoly,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(), 0..7).prop_map(UniPoly::new)
}

fn tripoly() -> impl Strategy<Value = TriPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), small_rat()), 0..6).prop_map(|terms| {
        let mut p = TriPoly::zero();
        for ((i, j, k), c) in terms {
            p.add_term([i, j, k], c);
        }
        p
    })
}

/// Product of (x - r)^m over the given roots, times x² + 1 to add a
/// factor with no real roots.
fn with_roots(roots: &[(Rational, u32)]) -> UniPoly {
    let mut p = UniPoly::from_ints(&[1, 0, 1]);
    for (r, m) in roots {
        p = &p * &UniPoly::new(vec![-r.clone(), int(1)]).pow(*m);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_roundtrip(q in small_rat()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&q)).unwrap(), q);
    }

    #[test]
    fn division_identity(a in unipoly(), b in unipoly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn product_evaluates_pointwise(a in unipoly(), b in unipoly(), x in small_rat()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn sturm_counts_known_roots(
        roots in prop::collection::vec((-20i64..=20, 1i64..=6, 1u32..=3), 0..5),
        lo in -4i64..=0,
        span in 1i64..=6,
    ) {
        let mut rs: Vec<(Rational, u32)> = Vec::new();
        for (n, d, m) in roots {
            let r = rat(n, d);
            if !rs.iter().any(|(s, _)| *s == r) {
                rs.push((r, m));
            }
        }
        let p = with_roots(&rs);
        let (a, b) = (int(lo), int(lo + span));
        let expect = rs.iter().filter(|(r, _)| *r > a && *r <= b).count();
        let rep = count_roots_report(&p, &a, &b).unwrap();
        prop_assert_eq!(rep.distinct, expect);
        prop_assert_eq!(rep.repeated_roots, rs.iter().any(|(_, m)| *m > 1));
    }

    #[test]
    fn eliminated_polynomial_matches_float_evaluation(f in tripoly(), w0 in small_rat(), w1 in small_rat(), xi in 1i64..=9) {
        prop_assume!(w0 < int(1) && w1 < int(1));
        let g = reduce_radicals(&four_sign_product(&f), &w0, &w1).unwrap();
        prop_assert_eq!(&eliminate_radicals(&f, &w0, &w1), &g);
        let x = xi as f64 / 10.0;
        let y0 = (1.0 - to_f(&w0) * x * x).sqrt();
        let y1 = (1.0 - to_f(&w1) * x * x).sqrt();
        let mut direct = 1.0;
        for (s0, s1) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            direct *= f.eval_f64(&[x, s0 * y0, s1 * y1]);
        }
        let via = g.eval_f64(x);
        prop_assert!((direct - via).abs() <= 1e-9 * direct.abs().max(1.0), "{} vs {}", direct, via);
    }

    #[test]
    fn tower_sign_matches_float(c in prop::collection::vec(small_rat(), 8), g in prop::collection::vec(1i64..=50, 3)) {
        let gens: Vec<Rational> = g.iter().map(|n| rat(*n, 7)).collect();
        let tower = QuadTower::new(gens);
        let v: Vec<Rational> = c;
        let f = tower.to_f64(&v);
        if f.abs() > 1e-9 {
            prop_assert_eq!(tower.sign(&v), if f > 0.0 { 1 } else { -1 });
        }
        let sq = tower.mul(&v, &v);
        prop_assert!(tower.sign(&sq) >= 0);
    }

    #[test]
    fn tower_sign_multiplicative(a in prop::collection::vec(small_rat(), 4), b in prop::collection::vec(small_rat(), 4)) {
        let tower = QuadTower::new(vec![rat(2, 1), rat(3, 1)]);
        prop_assert_eq!(tower.sign(&tower.mul(&a, &b)), tower.sign(&a) * tower.sign(&b));
    }
}

fn to_f(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap()
}

#[test]
fn tower_decides_cancellation_exactly() {
    let tower = QuadTower::new(vec![int(2), int(3)]);
    let s = tower.add(&tower.basis(1, int(1)), &tower.basis(2, int(1)));
    // (√2 + √3)² - 5 - 2√6 = 0
    let sq = tower.mul(&s, &s);
    let zero = tower.add(&sq, &tower.add(&tower.basis(0, int(-5)), &tower.basis(3, int(-2))));
    assert_eq!(tower.sign(&zero), 0);
    // √2 + √3 = 3.14626436994197...
    let below = tower.add(&s, &tower.basis(0, rat(-31_462_643_699_419, 10_000_000_000_000)));
    let above = tower.add(&s, &tower.basis(0, rat(-31_462_643_699_420, 10_000_000_000_000)));
    assert_eq!(tower.sign(&below), 1);
    assert_eq!(tower.sign(&above), -1);
    assert_eq!(sign(&Rational::zero()), 0);
}

#[test]
fn sturm_matches_bisection_on_a_wilkinson_like_product() {
    let roots: Vec<(Rational, u32)> = (1..=12).map(|i| (rat(i, 13), 1)).collect();
    let p = with_roots(&roots);
    assert_eq!(count_roots(&p, &int(0), &int(1)).unwrap(), 12);
    // bisection oracle: count exact sign changes on a grid finer than the root spacing
    let mut changes = 0;
    let mut prev = sign(&p.eval(&rat(1, 26)));
    for i in 1..13 {
        let s = sign(&p.eval(&rat(2 * i + 1, 26)));
        if s != prev {
            changes += 1;
        }
        prev = s;
    }
    assert_eq!(changes, 12);
    assert_eq!(count_roots(&p, &rat(1, 26), &rat(7, 26)).unwrap(), 3);
    assert!(count_roots(&UniPoly::default(), &int(0), &int(1)).is_err());
    assert_eq!(count_roots(&UniPoly::constant(Rational::one()), &int(0), &int(1)).unwrap(), 0);
}
