use trinoid::certifier::{certify, f_poly, Verdict};
use trinoid::che::TrinoidParams;
use trinoid::exactalg::{count_roots, rat};

fn star() -> TrinoidParams {
    TrinoidParams::parse("1/2,1/2,-1/8,1/8,1/8").unwrap()
}

#[test]
fn star_certificate() {
    let c = certify(&star(), &rat(4, 5)).unwrap();
    println!("{}", serde_json_like(&c));
    assert_eq!(c.verdict, Verdict::Unitarisable);
    assert_eq!(c.positivity_k0, 2);
    assert_eq!(c.k0, 4);
    let signs: Vec<&str> = ["++", "+-", "-+", "--"].iter().map(|k| c.sign_table[*k].as_str()).collect();
    assert_eq!(signs, ["-", "+", "+", "+"]);
    assert_eq!(c.parity_plus, 3);
}

fn serde_json_like(c: &trinoid::certifier::Certificate) -> String {
    format!("{:?} {:?} {:?}", c.k0, c.sturm_counts, c.failure)
}

#[test]
fn f_polys_have_no_roots_in_unit_interval() {
    for l in [3, 4] {
        let f = f_poly(&star(), l);
        assert_eq!(count_roots(&f, &rat(0, 1), &rat(1, 1)).unwrap(), 0);
    }
}

#[test]
fn elimination_routes_agree_on_low_coefficients() {
    use trinoid::certifier::{coefficient_polys, eliminate};
    use trinoid::exactalg::{four_sign_product, reduce_radicals};
    let th = star();
    let (num, den) = coefficient_polys(&th, 3);
    for p in num.iter().chain(den.iter()) {
        let slow = reduce_radicals(&four_sign_product(p), &th.w0, &th.w1).unwrap();
        assert_eq!(eliminate(&th, p), slow);
    }
}

#[test]
fn zero_p_is_a_sign_assumption_error() {
    let th = TrinoidParams::parse("1/2,1/2,-1/8,1/8,0").unwrap();
    assert!(matches!(certify(&th, &rat(4, 5)), Err(trinoid::Error::SignAssumption(_))));
}

#[test]
fn hypothesis_flags_follow_weight_signs() {
    use trinoid::certifier::hypothesis_flags;
    let f = hypothesis_flags(&TrinoidParams::parse("1/2,-1/4,0,0,1").unwrap());
    assert_eq!(f["++"], false);
    assert_eq!(f["+-"], true);
    assert_eq!(f["-+"], false);
    assert_eq!(f["--"], true);
    assert!(hypothesis_flags(&star()).values().all(|v| *v));
}

#[test]
fn scaled_family_member_certifies() {
    use trinoid::certifier::{family_scale, family_scale_approx};
    let th = family_scale(&star(), &rat(81, 100)).unwrap();
    let c = certify(&th, &rat(4, 5)).unwrap();
    assert_eq!(c.verdict, Verdict::Unitarisable, "{:?}", c.failure);
    let approx = family_scale_approx(&star(), 0.5).unwrap();
    assert!((approx.p - 0.125 * 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn sign_table_is_exact_at_t0() {
    use trinoid::certifier::sign_table;
    use trinoid::che::SignTuple;
    let s = sign_table(&star(), &rat(4, 5), 4).unwrap();
    assert_eq!(s[&SignTuple::PP], -1);
    assert!(sign_table(&star(), &rat(4, 5), 1).is_err());
}
