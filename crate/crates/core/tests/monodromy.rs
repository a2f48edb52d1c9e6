use num_complex::Complex64;
use trinoid::che::TrinoidParams;
use trinoid::monodromy::{loop_monodromy, m2_check, spectral_point, LoopId};

fn star() -> TrinoidParams {
    TrinoidParams::parse("1/2,1/2,-1/8,1/8,1/8").unwrap()
}

#[test]
fn big_circle_is_product_of_local_loops() {
    let th = star().to_num();
    for theta in [0.7, 2.0, 3.0] {
        let l = spectral_point(theta).lambda;
        let m = |id: LoopId| loop_monodromy(&th, l, &id.path(), 1e-12).unwrap();
        let big = m(LoopId::BigCircle);
        let prod = m(LoopId::Gamma1) * m(LoopId::Gamma0);
        assert!((big - prod).max_abs() < 1e-8, "{theta}: {big:?} vs {prod:?}");
    }
}

#[test]
fn local_traces_real_elliptic() {
    let th = star().to_num();
    let l = spectral_point(std::f64::consts::FRAC_PI_2).lambda;
    for id in [LoopId::Gamma0, LoopId::Gamma1] {
        let m = loop_monodromy(&th, l, &id.path(), 1e-12).unwrap();
        let tr = m.trace();
        assert!(tr.im.abs() < 1e-8 && tr.re.abs() < 2.0, "{id:?} {tr}");
        assert!((m.det() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    }
}

#[test]
fn star_m2() {
    let r = m2_check(&star(), 0.05, 1e-12).unwrap();
    println!("{r:#?}");
    assert!(r.m0_error < 1e-8);
    assert!(r.m1_error < 1e-6);
    assert!(r.m2_error < 1e-4);
}

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trinoid::exactalg::{int, rat, Rational};
use trinoid::monodromy::{end_weights, laurent_tail, tail_radicand, weight_radicand, LaurentTail};
use trinoid::numerics::Mat2;

fn rand_theta(rng: &mut StdRng) -> TrinoidParams {
    let mut r = || rat(rng.gen_range(-24..=24), rng.gen_range(1..=16));
    TrinoidParams::new(r(), r(), r(), r(), r())
}

/// Coefficient of z^{-n} in Q for |z| > 1 from the geometric series of
/// 1/(z-1) = Σ z^{-k-1} and 1/(z-1)² = Σ (k+1) z^{-k-2}.
fn series_coefficient(theta: &TrinoidParams, n: i64) -> Rational {
    let mut c = Rational::zero();
    if n == 2 {
        c -= &theta.w0 / int(4);
    }
    if n == 1 {
        c += &theta.r_hat0;
    }
    if n >= 2 {
        c -= &theta.w1 / int(4) * int(n - 1);
    }
    if n >= 1 {
        c += &theta.r_hat1;
    }
    c
}

#[test]
fn laurent_tail_matches_series_expansion() {
    let mut rng = StdRng::seed_from_u64(30);
    for _ in 0..30 {
        let th = rand_theta(&mut rng);
        let tail = laurent_tail(&th);
        assert_eq!(
            tail,
            LaurentTail {
                a_m1: series_coefficient(&th, 1),
                a_m2: series_coefficient(&th, 2),
                a_m3: series_coefficient(&th, 3)
            }
        );
    }
    let zero = TrinoidParams::parse("0,0,0,0,3/7").unwrap();
    assert_eq!(laurent_tail(&zero), LaurentTail { a_m1: int(0), a_m2: int(0), a_m3: int(0) });
}

#[test]
fn weight_formulas_agree_at_random_parameters() {
    let mut rng = StdRng::seed_from_u64(100);
    for _ in 0..100 {
        let th = rand_theta(&mut rng);
        assert_eq!(weight_radicand(&th), tail_radicand(&laurent_tail(&th)));
        let r = end_weights(&th);
        assert!(r.tail_form_agrees);
        assert_eq!(r.weight_real, r.w_inf.is_some());
    }
}

#[test]
fn closing_conditions_at_lambda_one() {
    let th = star().to_num();
    let tol = 1e-12;
    for id in LoopId::ALL {
        let m = loop_monodromy(&th, Complex64::new(1.0, 0.0), &id.path(), tol).unwrap();
        assert!((m - Mat2::identity()).max_abs() <= 10.0 * tol);
        // central difference in θ at 0
        let h = 1e-3;
        let p = loop_monodromy(&th, spectral_point(h).lambda, &id.path(), tol).unwrap();
        let q = loop_monodromy(&th, spectral_point(-h).lambda, &id.path(), tol).unwrap();
        assert!(((p - q).scale(Complex64::new(0.5 / h, 0.0))).max_abs() <= 1e-6);
    }
}

#[test]
fn determinant_stays_one() {
    let th = star().to_num();
    for theta in [0.4, 1.3, 2.9, 4.4] {
        for id in LoopId::ALL {
            let m = loop_monodromy(&th, spectral_point(theta).lambda, &id.path(), 1e-12).unwrap();
            assert!((m.det() - 1.0).norm() <= 1e-10);
        }
    }
}

#[test]
fn local_trace_matches_exponent() {
    let th = star().to_num();
    for theta in [0.9, 2.2] {
        let sp = spectral_point(theta);
        let mu0 = (1.0 - th.w0 * sp.t).sqrt();
        let tr = loop_monodromy(&th, sp.lambda, &LoopId::Gamma0.path(), 1e-12).unwrap().trace();
        assert!((tr.re + 2.0 * (std::f64::consts::PI * mu0).cos()).abs() < 1e-8, "{tr} vs {mu0}");
    }
}

#[test]
fn zero_tail_gives_small_third_order_defect() {
    let th = TrinoidParams::parse("0,0,0,0,1/3").unwrap();
    let r = m2_check(&th, 0.05, 1e-12).unwrap();
    assert!(r.m2_closed.max_abs() == 0.0);
    assert!(r.m2_error < 1e-6);
}
