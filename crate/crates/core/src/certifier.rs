//! Exact unitarisability certificates: radical-eliminated coefficient
//! polynomials, a uniform positivity threshold, Sturm non-vanishing on
//! (0,1], the sign table at t0 and the parity verdict.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::che::{numerators, CheParams, NumParams, SignTuple, TrinoidParams};
use crate::error::{Error, Result};
use crate::exactalg::rational::{rational_sqrt, sqrt_bounds};
use crate::exactalg::{
    count_roots_report, eliminate_radicals, fmt_rational, int, QuadTower, Rational, TriPoly, UniPoly,
};

/// χ with μ0 ↦ y0, μ1 ↦ y1, r_k ↦ r̂_k x², a ↦ p x.
pub fn symbolic_chi(theta: &TrinoidParams) -> CheParams<TriPoly> {
    let x = TriPoly::var(0);
    let x2 = &x * &x;
    CheParams::new(
        TriPoly::var(1),
        TriPoly::var(2),
        x2.scale(&theta.r_hat0),
        x2.scale(&theta.r_hat1),
        x.scale(&theta.p),
    )
}

/// Numerators N_0..=N_n and denominators D_0..=D_n of c_k as polynomials
/// in (x, y0, y1).
pub fn coefficient_polys(theta: &TrinoidParams, n: usize) -> (Vec<TriPoly>, Vec<TriPoly>) {
    numerators(&symbolic_chi(theta), n)
}

/// Four-sign product of F followed by y_j² ↦ 1 - w_j x².
pub fn eliminate(theta: &TrinoidParams, f: &TriPoly) -> UniPoly {
    eliminate_radicals(f, &theta.w0, &theta.w1)
}

/// f_ℓ: the eliminated numerator of c_{ℓ+1}.
pub fn f_poly(theta: &TrinoidParams, l: usize) -> UniPoly {
    let (num, _) = coefficient_polys(theta, l + 1);
    eliminate(theta, &num[l + 1])
}

#[derive(Clone, Debug, PartialEq)]
struct Iv {
    lo: Rational,
    hi: Rational,
}

impl Iv {
    fn new(a: Rational, b: Rational) -> Self {
        if a <= b {
            Iv { lo: a, hi: b }
        } else {
            Iv { lo: b, hi: a }
        }
    }
    fn point(a: Rational) -> Self {
        Iv { lo: a.clone(), hi: a }
    }
}

impl Add for Iv {
    type Output = Iv;
    fn add(self, o: Iv) -> Iv {
        Iv { lo: self.lo + o.lo, hi: self.hi + o.hi }
    }
}

impl Sub for Iv {
    type Output = Iv;
    fn sub(self, o: Iv) -> Iv {
        Iv { lo: self.lo - o.hi, hi: self.hi - o.lo }
    }
}

impl Neg for Iv {
    type Output = Iv;
    fn neg(self) -> Iv {
        Iv { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Iv {
    type Output = Iv;
    fn mul(self, o: Iv) -> Iv {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Iv { lo, hi }
    }
}

pub const K0_CAP: usize = 100;

/// Least k0 ≤ 100 for which interval arithmetic over t ∈ (0,1] proves
/// U, V, W > 0 for every k ≥ k0 and all four sign tuples.
pub fn uniform_k0(theta: &TrinoidParams) -> Result<usize> {
    if !theta.p.is_positive() {
        return Err(Error::SignAssumption(format!("p must be positive, got {}", fmt_rational(&theta.p))));
    }
    let one = Rational::one();
    let mu_range = |w: &Rational| -> Result<Iv> {
        if w >= &one {
            return Err(Error::Domain("w must be < 1".into()));
        }
        let (lo, hi) = sqrt_bounds(&(&one - w));
        Ok(Iv::new(lo.clone().min(one.clone()), hi.max(one.clone())))
    };
    let m0 = mu_range(&theta.w0)?;
    let m1 = mu_range(&theta.w1)?;
    let x = Iv::new(Rational::zero(), one.clone());
    let a = Iv::new(Rational::zero(), theta.p.clone());
    let r0 = Iv::new(Rational::zero(), theta.r_hat0.clone());
    let rsum = Iv::point(&theta.r_hat0 + &theta.r_hat1);
    let half = Iv::point(Rational::new(1.into(), 2.into()));
    let pt = |v: i64| Iv::point(int(v));
    let pos = |iv: &Iv| iv.lo.is_positive();
    for k in 0..=K0_CAP {
        let kk = pt(k as i64);
        let ok = SignTuple::ALL.iter().all(|s| {
            let mu0 = if s.s0() > 0 { m0.clone() } else { -m0.clone() };
            let mu1 = if s.s1() > 0 { m1.clone() } else { -m1.clone() };
            let u = pt(1) + kk.clone() - mu0.clone();
            let v = kk.clone() * (kk.clone() + pt(1) - pt(2) * a.clone() - mu0.clone() - mu1.clone())
                + half.clone() * (mu0.clone() - pt(1)) * (mu1.clone() - pt(1))
                + a.clone() * (mu0.clone() - pt(1))
                + r0.clone();
            let slope = pt(2) * kk.clone() + pt(2) - pt(2) * a.clone() - mu0.clone() - mu1.clone();
            let w_over_x =
                Iv::point(theta.p.clone()) * (pt(2) * kk.clone() - mu0 - mu1) - x.clone() * rsum.clone();
            pos(&u) && pos(&v) && pos(&slope) && pos(&w_over_x)
        });
        if ok {
            return Ok(k);
        }
    }
    Err(Error::Certification(format!("no uniform positivity threshold up to k0 = {K0_CAP}")))
}

/// Exact value of a (x, y0, y1)-polynomial at x = √t0, y_j = s_j √(1 - w_j t0)
/// in the tower Q(√(1-w0 t0), √(1-w1 t0), √t0).
fn tower_value(tower: &QuadTower, gens: &[Rational; 3], p: &TriPoly, s: SignTuple) -> Vec<Rational> {
    let mut acc = tower.zero();
    for (e, c) in p.terms() {
        let mut coeff = c.clone();
        for _ in 0..e[0] / 2 {
            coeff *= &gens[2];
        }
        for _ in 0..e[1] / 2 {
            coeff *= &gens[0];
        }
        for _ in 0..e[2] / 2 {
            coeff *= &gens[1];
        }
        if e[1] % 2 == 1 && s.s0() < 0 {
            coeff = -coeff;
        }
        if e[2] % 2 == 1 && s.s1() < 0 {
            coeff = -coeff;
        }
        let mask = (e[1] % 2) as usize | ((e[2] % 2) as usize) << 1 | ((e[0] % 2) as usize) << 2;
        acc[mask] += coeff;
    }
    acc
}

fn exact_coefficient_signs(
    theta: &TrinoidParams,
    t0: &Rational,
    num: &[TriPoly],
    den: &[TriPoly],
    k: usize,
) -> BTreeMap<SignTuple, i32> {
    let gens = [&Rational::one() - &theta.w0 * t0, &Rational::one() - &theta.w1 * t0, t0.clone()];
    let tower = QuadTower::new(gens.to_vec());
    SignTuple::ALL
        .iter()
        .map(|&s| {
            let n = tower.sign(&tower_value(&tower, &gens, &num[k], s));
            let d = tower.sign(&tower_value(&tower, &gens, &den[k], s));
            (s, n * d)
        })
        .collect()
}

fn check_t0(t0: &Rational) -> Result<()> {
    if !(t0.is_positive() && t0 < &Rational::one()) {
        return Err(Error::Domain(format!("t0 must lie in (0,1), got {}", fmt_rational(t0))));
    }
    Ok(())
}

/// Common strict sign of c_{k0-1} and c_{k0} at t0 for each tuple,
/// decided in exact quadratic-tower arithmetic.
pub fn sign_table(theta: &TrinoidParams, t0: &Rational, k0: usize) -> Result<BTreeMap<SignTuple, i32>> {
    check_t0(t0)?;
    if k0 == 0 {
        return Err(Error::Domain("k0 must be at least 1".into()));
    }
    let (num, den) = coefficient_polys(theta, k0);
    let before = exact_coefficient_signs(theta, t0, &num, &den, k0 - 1);
    let at = exact_coefficient_signs(theta, t0, &num, &den, k0);
    for s in SignTuple::ALL {
        if at[&s] == 0 || before[&s] != at[&s] {
            return Err(Error::Certification(format!(
                "signs of c_{} and c_{k0} at tuple {} are {} and {}",
                k0 - 1,
                s.label(),
                before[&s],
                at[&s]
            )));
        }
    }
    Ok(at)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Unitarisable,
    NotCertified,
}

/// Root counts of one eliminated polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmEntry {
    /// Distinct roots in (0,1].
    pub half_open: usize,
    /// Distinct roots in (0,1).
    pub open: usize,
    pub repeated_roots: bool,
    pub degree: usize,
}

/// Exact sign change of p between consecutive points of the grid i/64 in (0,1].
fn has_sign_change(p: &UniPoly) -> bool {
    let mut prev = 0;
    for i in 1..=64 {
        let v = p.eval(&Rational::new(i.into(), 64.into()));
        let s = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { return true };
        if prev * s < 0 {
            return true;
        }
        prev = s;
    }
    false
}

fn sturm_entry(p: &UniPoly) -> Result<SturmEntry> {
    let r = count_roots_report(p, &Rational::zero(), &Rational::one())?;
    let at_one = p.eval(&Rational::one()).is_zero() as usize;
    Ok(SturmEntry {
        half_open: r.distinct,
        open: r.distinct - at_one,
        repeated_roots: r.repeated_roots,
        degree: p.degree().unwrap_or(0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub theta: TrinoidParams,
    /// Index used for condition checks on c_{k0-1}, c_{k0}.
    pub k0: usize,
    /// The uniform positivity threshold; k0 is searched upward from here.
    pub positivity_k0: usize,
    #[serde(serialize_with = "ser_rational")]
    pub t0: Rational,
    pub sturm_counts: BTreeMap<String, SturmEntry>,
    /// Tuple label ↦ "+" or "-".
    pub sign_table: BTreeMap<String, String>,
    pub parity_plus: usize,
    pub verdict: Verdict,
    pub failure: Option<String>,
    /// Tuple label ↦ whether both signed exponents stay below 1 on (0,1].
    pub hypothesis_flags: BTreeMap<String, bool>,
    pub convention_note: String,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub const CONVENTION_NOTE: &str = "c_k = N_k/D_k with N_-1 = 0, N_0 = 1, \
N_{k+1} = V(k) N_k + U(k-1) W(k) N_{k-1}, D_k = U(0)...U(k-1); \
variables x = sqrt(t), y_j = +-sqrt(1 - w_j x^2); eliminated polynomials are the four-sign \
products with y_j^2 -> 1 - w_j x^2 and carry no extra normalisation; keys c<k> and den<k> \
certify c_{k0-1}, c_{k0} and D_{k0}; the eliminated numerator of c_{l+1} is f_l; \
root counts are distinct roots on (0,1] and on (0,1); tuple order (s0,s1) for (s0 mu0, s1 mu1).";

/// Extra indices tried above the positivity threshold.
pub const K0_SEARCH: usize = 6;

pub fn hypothesis_flags(theta: &TrinoidParams) -> BTreeMap<String, bool> {
    SignTuple::ALL
        .iter()
        .map(|s| {
            let ok0 = s.s0() < 0 || theta.w0.is_positive();
            let ok1 = s.s1() < 0 || theta.w1.is_positive();
            (s.label().to_string(), ok0 && ok1)
        })
        .collect()
}

/// Runs the full exact pipeline at t0.
pub fn certify(theta: &TrinoidParams, t0: &Rational) -> Result<Certificate> {
    theta.validate()?;
    check_t0(t0)?;
    let mut cert = Certificate {
        theta: theta.clone(),
        k0: 0,
        positivity_k0: 0,
        t0: t0.clone(),
        sturm_counts: BTreeMap::new(),
        sign_table: BTreeMap::new(),
        parity_plus: 0,
        verdict: Verdict::NotCertified,
        failure: None,
        hypothesis_flags: hypothesis_flags(theta),
        convention_note: CONVENTION_NOTE.to_string(),
    };
    let m = match uniform_k0(theta) {
        Ok(m) => m,
        Err(e) => {
            cert.failure = Some(e.to_string());
            return Ok(cert);
        }
    };
    cert.positivity_k0 = m;
    let start = m.max(1);
    let (num, den) = coefficient_polys(theta, start + K0_SEARCH);
    let mut first_failure: Option<String> = None;
    for k0 in start..=start + K0_SEARCH {
        let polys = [
            (format!("c{}", k0 - 1), eliminate(theta, &num[k0 - 1])),
            (format!("c{k0}"), eliminate(theta, &num[k0])),
            (format!("den{k0}"), eliminate(theta, &den[k0])),
        ];
        let last = k0 == start + K0_SEARCH;
        if !last && polys.iter().any(|(_, p)| has_sign_change(p)) {
            first_failure.get_or_insert(format!("eliminated polynomials vanish on (0,1] for k0 = {k0}"));
            continue;
        }
        let mut counts = BTreeMap::new();
        for (key, p) in &polys {
            counts.insert(key.clone(), sturm_entry(p)?);
        }
        let clean = counts.values().all(|e| e.half_open == 0);
        cert.k0 = k0;
        cert.sturm_counts = counts;
        if !clean {
            first_failure.get_or_insert(format!("eliminated polynomials vanish on (0,1] for k0 = {k0}"));
            continue;
        }
        let before = exact_coefficient_signs(theta, t0, &num, &den, k0 - 1);
        let at = exact_coefficient_signs(theta, t0, &num, &den, k0);
        if SignTuple::ALL.iter().any(|s| at[s] == 0 || before[s] != at[s]) {
            first_failure.get_or_insert(format!("signs of c_{} and c_{k0} disagree at t0", k0 - 1));
            continue;
        }
        cert.sign_table = at
            .iter()
            .map(|(s, v)| (s.label().to_string(), if *v > 0 { "+" } else { "-" }.to_string()))
            .collect();
        cert.parity_plus = at.values().filter(|v| **v > 0).count();
        if cert.parity_plus % 2 == 1 {
            cert.verdict = Verdict::Unitarisable;
        } else {
            cert.failure = Some(format!("even number ({}) of positive sign tuples", cert.parity_plus));
        }
        return Ok(cert);
    }
    cert.failure = first_failure;
    Ok(cert)
}

/// Θ_κ = (κw0, κw1, κr̂0, κr̂1, √κ p) when √κ is rational.
pub fn family_scale(theta: &TrinoidParams, kappa: &Rational) -> Result<TrinoidParams> {
    if !(kappa.is_positive() && kappa <= &Rational::one()) {
        return Err(Error::Domain(format!("kappa must lie in (0,1], got {}", fmt_rational(kappa))));
    }
    let root = rational_sqrt(kappa).ok_or_else(|| {
        Error::Domain(format!("sqrt({}) is irrational; use family_scale_approx", fmt_rational(kappa)))
    })?;
    Ok(TrinoidParams::new(
        &theta.w0 * kappa,
        &theta.w1 * kappa,
        &theta.r_hat0 * kappa,
        &theta.r_hat1 * kappa,
        &theta.p * root,
    ))
}

/// Floating Θ_κ for any κ ∈ (0,1].
pub fn family_scale_approx(theta: &TrinoidParams, kappa: f64) -> Result<NumParams> {
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(Error::Domain(format!("kappa must lie in (0,1], got {kappa}")));
    }
    let n = theta.to_num();
    Ok(NumParams::new(kappa * n.w0, kappa * n.w1, kappa * n.r_hat0, kappa * n.r_hat1, kappa.sqrt() * n.p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn star() -> TrinoidParams {
        TrinoidParams::parse("1/2,1/2,-1/8,1/8,1/8").unwrap()
    }

    #[test]
    fn uniform_threshold_examples() {
        assert_eq!(uniform_k0(&star()).unwrap(), 2);
        let big = TrinoidParams::parse("1/2,1/2,5,5,1/8").unwrap();
        assert!(uniform_k0(&big).unwrap() > 2);
        let p0 = TrinoidParams::parse("1/2,1/2,-1/8,1/8,0").unwrap();
        assert!(matches!(uniform_k0(&p0), Err(Error::SignAssumption(_))));
    }

    #[test]
    fn scaling() {
        assert_eq!(family_scale(&star(), &int(1)).unwrap(), star());
        let q = family_scale(&star(), &rat(1, 4)).unwrap();
        assert_eq!(q, TrinoidParams::parse("1/8,1/8,-1/32,1/32,1/16").unwrap());
        assert!(family_scale(&star(), &int(2)).is_err());
        assert!(family_scale(&star(), &rat(1, 2)).is_err());
    }

    #[test]
    fn boundary_t0_rejected() {
        assert!(sign_table(&star(), &int(1), 4).is_err());
    }
}
