//! The confluent Heun equation: parameters, the three-term coefficient
//! recurrence, positivity thresholds, sign classes and the q-limit.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, parse_number, Rational};
use crate::numerics::{gamma, Field, Real, Ring};

/// The five surface parameters (w0, w1, r̂0, r̂1, p), exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrinoidParams {
    pub w0: Rational,
    pub w1: Rational,
    pub r_hat0: Rational,
    pub r_hat1: Rational,
    pub p: Rational,
}

impl TrinoidParams {
    pub fn new(w0: Rational, w1: Rational, r_hat0: Rational, r_hat1: Rational, p: Rational) -> Self {
        TrinoidParams { w0, w1, r_hat0, r_hat1, p }
    }

    /// Parses "w0,w1,r0h,r1h,p" with p/q entries.
    pub fn parse(s: &str) -> Result<Self> {
        Self::parse_with(s, false)
    }

    /// As `parse`, optionally accepting decimals (converted exactly).
    pub fn parse_with(s: &str, allow_decimal: bool) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::Domain(format!("expected 5 comma-separated parameters, got {}", parts.len())));
        }
        let v: Vec<Rational> = parts.iter().map(|p| parse_number(p, allow_decimal)).collect::<Result<_>>()?;
        Ok(TrinoidParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()))
    }

    pub fn as_array(&self) -> [&Rational; 5] {
        [&self.w0, &self.w1, &self.r_hat0, &self.r_hat1, &self.p]
    }

    /// p > 0 and w0, w1 < 1.
    pub fn validate(&self) -> Result<()> {
        if !self.p.is_positive() {
            return Err(Error::SignAssumption(format!("p must be positive, got {}", fmt_rational(&self.p))));
        }
        for (name, w) in [("w0", &self.w0), ("w1", &self.w1)] {
            if w >= &Rational::one() {
                return Err(Error::Domain(format!("{name} must be < 1 so that mu stays real on (0,1], got {}", fmt_rational(w))));
            }
        }
        Ok(())
    }

    pub fn to_num(&self) -> NumParams {
        NumParams::from(self)
    }
}

impl fmt::Display for TrinoidParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.as_array().iter().map(|q| fmt_rational(q)).collect();
        write!(f, "{}", v.join(","))
    }
}

impl Serialize for TrinoidParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TrinoidParams", 5)?;
        st.serialize_field("w0", &fmt_rational(&self.w0))?;
        st.serialize_field("w1", &fmt_rational(&self.w1))?;
        st.serialize_field("r_hat0", &fmt_rational(&self.r_hat0))?;
        st.serialize_field("r_hat1", &fmt_rational(&self.r_hat1))?;
        st.serialize_field("p", &fmt_rational(&self.p))?;
        st.end()
    }
}

/// Floating surface parameters for the numerical pipeline. Keeps the exact
/// tuple when there is one, so escalated precision starts from exact data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumParams {
    pub w0: f64,
    pub w1: f64,
    pub r_hat0: f64,
    pub r_hat1: f64,
    pub p: f64,
    #[serde(skip)]
    pub exact: Option<TrinoidParams>,
}

impl NumParams {
    pub fn new(w0: f64, w1: f64, r_hat0: f64, r_hat1: f64, p: f64) -> Self {
        NumParams { w0, w1, r_hat0, r_hat1, p, exact: None }
    }
}

impl From<&TrinoidParams> for NumParams {
    fn from(t: &TrinoidParams) -> Self {
        let f = |q: &Rational| q.as_f64();
        NumParams { w0: f(&t.w0), w1: f(&t.w1), r_hat0: f(&t.r_hat0), r_hat1: f(&t.r_hat1), p: f(&t.p), exact: Some(t.clone()) }
    }
}

impl From<TrinoidParams> for NumParams {
    fn from(t: TrinoidParams) -> Self {
        NumParams::from(&t)
    }
}

/// Sign choice (s0, s1) for (±μ0, ±μ1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignTuple {
    PP,
    PM,
    MP,
    MM,
}

impl SignTuple {
    pub const ALL: [SignTuple; 4] = [SignTuple::PP, SignTuple::PM, SignTuple::MP, SignTuple::MM];

    pub fn s0(self) -> i64 {
        match self {
            SignTuple::PP | SignTuple::PM => 1,
            _ => -1,
        }
    }

    pub fn s1(self) -> i64 {
        match self {
            SignTuple::PP | SignTuple::MP => 1,
            _ => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SignTuple::PP => "++",
            SignTuple::PM => "+-",
            SignTuple::MP => "-+",
            SignTuple::MM => "--",
        }
    }

    pub fn from_signs(s0: i64, s1: i64) -> Self {
        match (s0 > 0, s1 > 0) {
            (true, true) => SignTuple::PP,
            (true, false) => SignTuple::PM,
            (false, true) => SignTuple::MP,
            (false, false) => SignTuple::MM,
        }
    }
}

/// χ = (μ0, μ1, r0, r1, a).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheParams<T> {
    pub mu0: T,
    pub mu1: T,
    pub r0: T,
    pub r1: T,
    pub a: T,
}

impl<T: Ring> CheParams<T> {
    pub fn new(mu0: T, mu1: T, r0: T, r1: T, a: T) -> Self {
        CheParams { mu0, mu1, r0, r1, a }
    }

    /// ϑ_k = (1 - μ_k)/2.
    pub fn thetas(&self) -> (T, T) {
        let half = T::from_ratio(1, 2);
        ((T::one() - self.mu0.clone()) * half.clone(), (T::one() - self.mu1.clone()) * half)
    }

    /// Flips the signs of μ0 and μ1 as requested.
    pub fn with_signs(&self, s: SignTuple) -> Self {
        let f = |m: &T, sg: i64| if sg > 0 { m.clone() } else { -m.clone() };
        CheParams::new(f(&self.mu0, s.s0()), f(&self.mu1, s.s1()), self.r0.clone(), self.r1.clone(), self.a.clone())
    }
}

impl<T: Field> CheParams<T> {
    pub fn to_f64(&self) -> CheParams<f64> {
        CheParams::new(self.mu0.as_f64(), self.mu1.as_f64(), self.r0.as_f64(), self.r1.as_f64(), self.a.as_f64())
    }
}

/// (U(k), V(k), W(k)) of the recurrence U c_{k+1} = V c_k + W c_{k-1}.
pub fn recurrence_terms<T: Ring>(chi: &CheParams<T>, k: i64) -> (T, T, T) {
    let kk = T::from_int(k);
    let one = T::one();
    let half = T::from_ratio(1, 2);
    let two = T::from_int(2);
    let CheParams { mu0, mu1, r0, r1, a } = chi.clone();
    let u = (one.clone() + kk.clone()) * (one.clone() + kk.clone() - mu0.clone());
    let v = kk.clone() * (kk.clone() + one.clone() - two.clone() * a.clone() - mu0.clone() - mu1.clone())
        + half * (mu0.clone() - one.clone()) * (mu1.clone() - one.clone())
        + a.clone() * (mu0.clone() - one)
        + r0.clone();
    let w = a * (two * kk - mu0 - mu1) - (r0 + r1);
    (u, v, w)
}

/// c_0 ..= c_n with c_{-1} = 0, c_0 = 1.
pub fn coefficients<F: Field>(chi: &CheParams<F>, n: usize) -> Result<Vec<F>> {
    let mut c = Vec::with_capacity(n + 1);
    c.push(F::one());
    let mut prev = F::zero();
    for k in 0..n {
        let (u, v, w) = recurrence_terms(chi, k as i64);
        if u.is_zero() {
            return Err(Error::Resonance(k));
        }
        let next = (v * c[k].clone() + w * prev) / u;
        prev = c[k].clone();
        c.push(next);
    }
    Ok(c)
}

/// Division-free form c_k = N_k / D_k with D_k = U(0)···U(k-1) and
/// N_{k+1} = V(k) N_k + U(k-1) W(k) N_{k-1}. Returns (N_0..=N_n, D_0..=D_n).
pub fn numerators<T: Ring>(chi: &CheParams<T>, n: usize) -> (Vec<T>, Vec<T>) {
    let mut num = vec![T::one()];
    let mut den = vec![T::one()];
    let mut prev_num = T::zero();
    let mut prev_u = T::one();
    for k in 0..n {
        let (u, v, w) = recurrence_terms(chi, k as i64);
        let next = v * num[k].clone() + prev_u.clone() * w * prev_num;
        prev_num = num[k].clone();
        den.push(den[k].clone() * u.clone());
        num.push(next);
        prev_u = u;
    }
    (num, den)
}

/// m(χ): the least k0 ≥ 0 with U, V, W > 0 at every integer k ≥ k0.
pub fn positivity_threshold<F: Field>(chi: &CheParams<F>) -> Result<usize> {
    if !(chi.a > F::zero()) {
        return Err(Error::Domain(format!("positivity threshold needs a > 0, got {}", chi.a.as_f64())));
    }
    let f = chi.to_f64();
    let b = 1.0 - 2.0 * f.a - f.mu0 - f.mu1;
    let c = 0.5 * (f.mu0 - 1.0) * (f.mu1 - 1.0) + f.a * (f.mu0 - 1.0) + f.r0;
    let bounds = [f.mu0 - 1.0, 1.0 + b.abs().max(c.abs()), (f.a * (f.mu0 + f.mu1) + f.r0 + f.r1) / (2.0 * f.a)];
    let top = bounds.iter().cloned().fold(0.0, f64::max);
    if !top.is_finite() || top > 1e9 {
        return Err(Error::Domain("positivity threshold out of range".into()));
    }
    let positive = |k: usize| {
        let (u, v, w) = recurrence_terms(chi, k as i64);
        u > F::zero() && v > F::zero() && w > F::zero()
    };
    let mut m = top.ceil() as usize + 2;
    while !positive(m) {
        m += 1;
    }
    while m > 0 && positive(m - 1) {
        m -= 1;
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignTag {
    Splus,
    Sminus,
    Undetermined,
}

/// Membership in S+ / S- with the witness index ℓ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignClass {
    pub tag: SignTag,
    pub witness: Option<usize>,
}

/// Scans ℓ = m(χ)..=cap for c_{ℓ-1}, c_ℓ of one strict sign.
pub fn classify_sign<F: Field>(chi: &CheParams<F>, cap: usize) -> Result<SignClass> {
    let m = positivity_threshold(chi)?.max(1);
    let undetermined = SignClass { tag: SignTag::Undetermined, witness: None };
    if cap < m {
        return Ok(undetermined);
    }
    let c = coefficients(chi, cap)?;
    for l in m..=cap {
        let (s0, s1) = (c[l - 1].signum_i(), c[l].signum_i());
        if s0 != 0 && s0 == s1 {
            let tag = if s0 > 0 { SignTag::Splus } else { SignTag::Sminus };
            return Ok(SignClass { tag, witness: Some(l) });
        }
    }
    Ok(undetermined)
}

/// χ±± for surface parameters at t: (±√(1-w0 t), ±√(1-w1 t), r̂0 t, r̂1 t, p√t).
pub fn from_trinoid<R: Real>(theta: &NumParams, t: &R, signs: SignTuple) -> Result<CheParams<R>> {
    let tf = t.as_f64();
    if !(tf > 0.0 && tf < 1.0) {
        return Err(Error::Domain(format!("t must lie in (0,1), got {tf}")));
    }
    let conv = |x: f64, q: Option<&Rational>| q.map(R::from_rational).unwrap_or_else(|| R::from_f64(x));
    let ex = theta.exact.as_ref();
    let w0 = conv(theta.w0, ex.map(|e| &e.w0));
    let w1 = conv(theta.w1, ex.map(|e| &e.w1));
    let rh0 = conv(theta.r_hat0, ex.map(|e| &e.r_hat0));
    let rh1 = conv(theta.r_hat1, ex.map(|e| &e.r_hat1));
    let p = conv(theta.p, ex.map(|e| &e.p));
    if !(p > R::zero()) {
        return Err(Error::SignAssumption(format!("p must be positive, got {}", theta.p)));
    }
    let one = R::one();
    let g0 = one.clone() - w0 * t.clone();
    let g1 = one - w1 * t.clone();
    if !(g0 > R::zero()) || !(g1 > R::zero()) {
        return Err(Error::Domain(format!("w_k t must be < 1 for real exponents (t = {tf})")));
    }
    let chi = CheParams::new(g0.sqrt(), g1.sqrt(), rh0 * t.clone(), rh1 * t.clone(), p * t.sqrt());
    Ok(chi.with_signs(signs))
}

/// Coefficients of A2 y'' + A1 y' + A0 y = 0, the equation multiplied by
/// z(z-1); each entry lists ascending powers of z.
pub fn che_operator<T: Ring>(chi: &CheParams<T>) -> [Vec<T>; 3] {
    let one = T::one();
    let two = T::from_int(2);
    let half = T::from_ratio(1, 2);
    let CheParams { mu0, mu1, r0, r1, a } = chi.clone();
    let a2 = vec![T::zero(), -one.clone(), one.clone()];
    let a1 = vec![
        -(one.clone() - mu0.clone()),
        -(two.clone() * a.clone()) + (one.clone() - mu0.clone()) + (one.clone() - mu1.clone()),
        two.clone() * a.clone(),
    ];
    let big_a = a.clone() * (two.clone() - mu0.clone() - mu1.clone()) - (r0.clone() + r1);
    let big_b = half
        * (mu0.clone() * mu1.clone() - two.clone() * a * (one.clone() - mu0.clone()) - (mu0 + mu1) + two * r0 + one);
    let a0 = vec![big_b, big_a];
    [a0, a1, a2]
}

/// The y' and y coefficients of the equation in its monic form.
#[derive(Clone, Debug)]
pub struct CheCoeffs {
    op: [Vec<f64>; 3],
}

fn horner(c: &[f64], z: num_complex::Complex64) -> num_complex::Complex64 {
    c.iter().rev().fold(num_complex::Complex64::zero(), |acc, &v| acc * z + v)
}

impl CheCoeffs {
    /// p1(z) = 2a + (1-μ0)/z + (1-μ1)/(z-1).
    pub fn p1(&self, z: num_complex::Complex64) -> Result<num_complex::Complex64> {
        let d = self.denominator(z)?;
        Ok(horner(&self.op[1], z) / d)
    }

    /// p0(z) = (A z + B)/(z(z-1)).
    pub fn p0(&self, z: num_complex::Complex64) -> Result<num_complex::Complex64> {
        let d = self.denominator(z)?;
        Ok(horner(&self.op[0], z) / d)
    }

    fn denominator(&self, z: num_complex::Complex64) -> Result<num_complex::Complex64> {
        let d = horner(&self.op[2], z);
        if d.norm() == 0.0 {
            return Err(Error::Pole(format!("coefficient evaluated at singular point z = {z}")));
        }
        Ok(d)
    }
}

pub fn scalar_che_coeffs(chi: &CheParams<f64>) -> CheCoeffs {
    CheCoeffs { op: che_operator(chi) }
}

/// Limit extraction for r_k = Γ(k+1)/Γ(k-μ1) c_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Acceleration {
    /// Polynomial extrapolation in 1/k over k = k_s·2^j.
    Richardson,
    /// Iterated Aitken Δ² over the last consecutive terms.
    Aitken,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QValue<R> {
    pub q: R,
    pub err_est: R,
    /// Largest index used.
    pub k_max: usize,
}

pub const DEFAULT_K: usize = 5000;

/// Neville table towards h = 0; entry m uses the m+1 smallest steps.
pub fn richardson_diagonal<R: Real>(h: &[R], vals: &[R]) -> Vec<R> {
    let n = vals.len();
    let mut t = vals.to_vec();
    let mut diag = vec![t[n - 1].clone()];
    for m in 1..n {
        // t[i] holds the order-(m-1) estimate ending at index i
        for i in (m..n).rev() {
            let ratio = h[i - m].clone() / h[i].clone();
            t[i] = t[i].clone() + (t[i].clone() - t[i - 1].clone()) / (ratio - R::one());
        }
        diag.push(t[n - 1].clone());
    }
    diag
}

/// Iterated Aitken Δ²; returns the successive estimates.
pub fn aitken_iterates<R: Real>(seq: &[R]) -> Vec<R> {
    let mut cur = seq.to_vec();
    let mut out = vec![cur[cur.len() - 1].clone()];
    while cur.len() >= 3 {
        let mut next = Vec::with_capacity(cur.len() - 2);
        for i in 0..cur.len() - 2 {
            let d1 = cur[i + 1].clone() - cur[i].clone();
            let d2 = cur[i + 2].clone() - cur[i + 1].clone();
            let den = d2.clone() - d1.clone();
            if den.is_zero() {
                next.push(cur[i + 2].clone());
            } else {
                next.push(cur[i + 2].clone() - d2.clone() * d2 / den);
            }
        }
        out.push(next[next.len() - 1].clone());
        cur = next;
    }
    out
}

/// q(χ) = Γ(1-μ0)Γ(1-μ1) lim Γ(k+1)/Γ(k-μ1) c_k.
pub fn q_value<R: Real>(chi: &CheParams<R>, k_max: usize, tol: f64, method: Acceleration) -> Result<QValue<R>> {
    let mu1 = chi.mu1.as_f64();
    let k_start = 16usize.max(mu1.ceil().max(0.0) as usize + 2);
    // doubling subsequence: the 1/k tail becomes geometric, which suits both
    // Neville extrapolation in h = 1/k and Aitken Δ²
    let mut ks = vec![];
    let mut k = k_start;
    while k <= k_max {
        ks.push(k);
        k *= 2;
    }
    let n = *ks.last().unwrap_or(&k_start);
    if ks.len() < 3 {
        return Err(Error::Convergence { k: k_max, last_increment: f64::INFINITY, partial: vec![] });
    }
    let c = coefficients(chi, n)?;
    let mut g = crate::numerics::gamma_ratio(ks[0] as u64, &chi.mu1)?;
    let mut r = Vec::with_capacity(ks.len());
    let mut k = ks[0];
    for &target in &ks {
        while k < target {
            g = g * R::from_int(k as i64 + 1) / (R::from_int(k as i64) - chi.mu1.clone());
            k += 1;
        }
        r.push(g.clone() * c[k].clone());
    }
    let estimates = match method {
        Acceleration::Richardson => {
            let h: Vec<R> = ks.iter().map(|&k| R::one() / R::from_int(k as i64)).collect();
            richardson_diagonal(&h, &r)
        }
        Acceleration::Aitken => aitken_iterates(&r),
    };
    let mut best: Option<(R, R)> = None;
    for w in estimates.windows(2) {
        let inc = (w[1].clone() - w[0].clone()).abs();
        if best.as_ref().is_none_or(|(_, e)| inc < *e) {
            best = Some((w[1].clone(), inc));
        }
    }
    let (limit, inc) = best.expect("at least two estimates");
    let scale = R::max_of(R::one(), limit.abs());
    if !(inc.as_f64() < tol * scale.as_f64()) {
        return Err(Error::Convergence {
            k: n,
            last_increment: inc.as_f64(),
            partial: estimates.iter().map(|e| e.as_f64()).collect(),
        });
    }
    // rounding accumulated over n recurrence steps bounds the attainable accuracy
    let floor = R::from_f64(R::epsilon() * 8.0 * n as f64) * scale;
    let err = R::max_of(inc, floor);
    let pref = gamma(&(R::one() - chi.mu0.clone()))? * gamma(&(R::one() - chi.mu1.clone()))?;
    Ok(QValue { q: limit * pref.clone(), err_est: err * pref.abs(), k_max: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn chi_q(v: [Rational; 5]) -> CheParams<Rational> {
        let [a, b, c, d, e] = v;
        CheParams::new(a, b, c, d, e)
    }

    #[test]
    fn recurrence_hand_values() {
        let chi = chi_q([int(0), int(0), int(0), int(0), int(1)]);
        assert_eq!(recurrence_terms(&chi, 0), (int(1), rat(-1, 2), int(0)));
        assert_eq!(recurrence_terms(&chi, 1), (int(4), rat(-1, 2), int(2)));
        let c = coefficients(&chi, 2).unwrap();
        assert_eq!(c, vec![int(1), rat(-1, 2), rat(9, 16)]);
    }

    #[test]
    fn resonance_at_mu0_one() {
        let chi = chi_q([int(1), int(0), int(0), int(0), int(1)]);
        assert_eq!(coefficients(&chi, 3), Err(Error::Resonance(0)));
    }

    #[test]
    fn numerators_match_quotients() {
        let chi = chi_q([rat(1, 3), rat(-2, 5), rat(1, 7), rat(-1, 9), rat(1, 4)]);
        let c = coefficients(&chi, 8).unwrap();
        let (n, d) = numerators(&chi, 8);
        for k in 0..=8 {
            assert_eq!(&n[k] / &d[k], c[k]);
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(positivity_threshold(&chi_q([int(0), int(0), int(0), int(0), int(1)])).unwrap(), 2);
        assert_eq!(positivity_threshold(&chi_q([int(0), int(0), int(-5), int(0), int(1)])).unwrap(), 3);
        assert!(positivity_threshold(&chi_q([int(0), int(0), int(0), int(0), int(-1)])).is_err());
    }

    #[test]
    fn classify_cap_exhaustion() {
        let chi = chi_q([int(0), int(0), int(0), int(0), int(1)]);
        assert_eq!(classify_sign(&chi, 0).unwrap().tag, SignTag::Undetermined);
    }

    #[test]
    fn from_trinoid_substitution() {
        let th = TrinoidParams::parse("1/2,1/2,-1/8,1/8,1/8").unwrap().to_num();
        let chi = from_trinoid(&th, &0.8f64, SignTuple::PP).unwrap();
        assert!((chi.mu0 - 0.6f64.sqrt()).abs() < 1e-15);
        assert!((chi.r0 + 0.1).abs() < 1e-15 && (chi.r1 - 0.1).abs() < 1e-15);
        assert!((chi.a - 0.125 * 0.8f64.sqrt()).abs() < 1e-15);
        let bad = TrinoidParams::parse("2,1/2,0,0,1").unwrap().to_num();
        assert!(matches!(from_trinoid(&bad, &0.6f64, SignTuple::PP), Err(Error::Domain(_))));
        assert!(from_trinoid(&th, &0.0f64, SignTuple::PP).is_err());
    }

    #[test]
    fn che_coefficients_at_zero_params() {
        let chi = CheParams::new(0.0, 0.0, 0.0, 0.0, 0.0);
        let co = scalar_che_coeffs(&chi);
        let z = num_complex::Complex64::new(0.3, 0.2);
        let expect = z.inv() + (z - 1.0).inv();
        assert!((co.p1(z).unwrap() - expect).norm() < 1e-14);
        assert!(co.p0(num_complex::Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn richardson_exact_on_polynomial_tail() {
        // r_k = 3 + 2/k - 5/k^2
        let ks = [16.0, 32.0, 64.0, 128.0];
        let h: Vec<f64> = ks.iter().map(|k| 1.0 / k).collect();
        let r: Vec<f64> = h.iter().map(|h| 3.0 + 2.0 * h - 5.0 * h * h).collect();
        let d = richardson_diagonal(&h, &r);
        assert!((d.last().unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn aitken_exact_on_geometric() {
        let s: Vec<f64> = (0..7).map(|n| 2.0 + 0.5f64.powi(n)).collect();
        let a = aitken_iterates(&s);
        assert!((a[1] - 2.0).abs() < 1e-13);
    }
}
