//! Connection matrices between the regular singular points z = 0 and z = 1:
//! the asymptotic q-value construction, a Frobenius series-matching oracle,
//! and the unitarisability ratio bc/ad.
//!
//! Row and column order: row 1 is the solution holomorphic at 0 and row 2
//! the one with exponent μ0; column 1 is the solution holomorphic at 1 and
//! column 2 the one with exponent μ1. Swapping both orders leaves bc/ad
//! unchanged; swapping one of them inverts it.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::che::{che_operator, from_trinoid, q_value, Acceleration, CheParams, NumParams, SignTuple, DEFAULT_K};
use crate::error::{Error, Result};
use crate::numerics::{gamma, Big256, Field, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnMethod {
    Asymptotic,
    Frobenius,
}

/// One q-value with its error estimate and the precision that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QRecord {
    pub q: f64,
    pub err_est: f64,
    pub precision_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectionMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    /// Keyed by sign tuple label ("++" is q(μ0, μ1)).
    pub q_values: Option<BTreeMap<String, QRecord>>,
    pub method: ConnMethod,
}

impl ConnectionMatrix {
    pub fn from_entries(a: Complex64, b: Complex64, c: Complex64, d: Complex64, method: ConnMethod) -> Self {
        ConnectionMatrix { a, b, c, d, q_values: None, method }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// D·C·D' for diagonal D = diag(d0, d1), D' = diag(e0, e1).
    pub fn rescaled(&self, d: [Complex64; 2], e: [Complex64; 2]) -> Self {
        ConnectionMatrix {
            a: d[0] * self.a * e[0],
            b: d[0] * self.b * e[1],
            c: d[1] * self.c * e[0],
            d: d[1] * self.d * e[1],
            q_values: None,
            method: self.method,
        }
    }
}

/// Local exponents: Δk = diag(-ϑk, ϑk), ϑk = (1 - μk)/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalExponents {
    pub delta0: (f64, f64),
    pub delta1: (f64, f64),
}

impl LocalExponents {
    pub fn new(chi: &CheParams<f64>) -> Self {
        let (t0, t1) = chi.thetas();
        LocalExponents { delta0: (-t0, t0), delta1: (-t1, t1) }
    }

    /// exp(2πi·Δk) diagonal entries for k = 0, 1.
    pub fn local_eigenvalues(&self) -> [(Complex64, Complex64); 2] {
        let e = |x: f64| Complex64::new(0.0, 2.0 * std::f64::consts::PI * x).exp();
        [(e(self.delta0.0), e(self.delta0.1)), (e(self.delta1.0), e(self.delta1.1))]
    }
}

/// Default tolerance for q-limits.
pub const DEFAULT_TOL: f64 = 1e-10;

/// q for one sign tuple with the precision ladder: a 53-bit evaluation
/// whose value is within its error estimate (or 1e3 ulp of the scale) of
/// zero is redone at 256 bits.
pub fn q_laddered(theta: &NumParams, t: f64, signs: SignTuple, k_max: usize, tol: f64) -> Result<QRecord> {
    let chi = from_trinoid(theta, &t, signs)?;
    let pref = (gamma(&(1.0 - chi.mu0))? * gamma(&(1.0 - chi.mu1))?).abs();
    let low = q_value(&chi, k_max, tol, Acceleration::Richardson);
    if let Ok(v) = &low {
        let margin = v.err_est.max(1e3 * f64::EPSILON * pref.max(1.0));
        if v.q.abs() > margin {
            return Ok(QRecord { q: v.q, err_est: v.err_est, precision_bits: 53 });
        }
    }
    let tb = Big256::from_f64(t);
    let chi_b = from_trinoid(theta, &tb, signs)?;
    let high = q_value(&chi_b, k_max, tol, Acceleration::Richardson)?;
    Ok(QRecord { q: high.q.as_f64(), err_est: high.err_est.as_f64(), precision_bits: 256 })
}

fn check_exponents(chi: &CheParams<f64>) -> Result<()> {
    for (name, m) in [("mu0", chi.mu0), ("mu1", chi.mu1)] {
        if m == m.round() {
            return Err(Error::Pole(format!("{name} = {m} is an integer; the gamma prefactor has a pole")));
        }
    }
    Ok(())
}

/// C assembled from the four q-values and the Γ prefactors.
pub fn connection_matrix(theta: impl Into<NumParams>, t: f64, k_max: usize, tol: f64) -> Result<ConnectionMatrix> {
    let theta = theta.into();
    let chi = from_trinoid(&theta, &t, SignTuple::PP)?;
    check_exponents(&chi)?;
    let mut qs = BTreeMap::new();
    for s in SignTuple::ALL {
        qs.insert(s.label().to_string(), q_laddered(&theta, t, s, k_max, tol)?);
    }
    let g0 = gamma(&chi.mu0)? / gamma(&(1.0 - chi.mu0))?;
    let g1 = gamma(&chi.mu1)? / gamma(&(1.0 - chi.mu1))?;
    let q = |l: &str| qs[l].q;
    let re = |x: f64| Complex64::new(x, 0.0);
    Ok(ConnectionMatrix {
        a: re(g0 * q("+-")),
        b: re(g0 * q("++") * g1),
        c: re(q("--")),
        d: re(q("-+") * g1),
        q_values: Some(qs),
        method: ConnMethod::Asymptotic,
    })
}

fn poly_shift(c: &[f64], center: f64, sigma: f64) -> Vec<f64> {
    // Σ c_i (center + σ s)^i in powers of s
    let mut out = vec![0.0; c.len()];
    let mut pow = vec![1.0];
    for ci in c {
        for (j, pj) in pow.iter().enumerate() {
            out[j] += ci * pj;
        }
        let mut next = vec![0.0; pow.len() + 1];
        for (j, pj) in pow.iter().enumerate() {
            next[j] += center * pj;
            next[j + 1] += sigma * pj;
        }
        pow = next;
    }
    out
}

/// Value and z-derivative of a local solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalValue {
    pub value: f64,
    pub derivative: f64,
    pub tail: f64,
}

/// The two Frobenius solutions at `point` (0 or 1) with exponents
/// {0, μ_point}, evaluated at real z strictly between 0 and 1.
pub fn local_solutions(chi: &CheParams<f64>, point: u8, z: f64, n: usize) -> Result<[LocalValue; 2]> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("matching point {z} must lie in (0,1)")));
    }
    let (center, sigma, mu) = if point == 0 { (0.0, 1.0, chi.mu0) } else { (1.0, -1.0, chi.mu1) };
    let [a0, a1, a2] = che_operator(chi);
    let a2s = poly_shift(&a2, center, sigma);
    debug_assert!(a2s[0].abs() < 1e-14);
    let q2: Vec<f64> = a2s[1..].to_vec();
    let q1: Vec<f64> = poly_shift(&a1, center, sigma).iter().map(|c| sigma * c).collect();
    let mut q0 = vec![0.0];
    q0.extend(poly_shift(&a0, center, sigma));
    let width = q2.len().max(q1.len()).max(q0.len());
    let f = |j: usize, x: f64| {
        let g = |q: &[f64]| q.get(j).copied().unwrap_or(0.0);
        g(&q2) * x * (x - 1.0) + g(&q1) * x + g(&q0)
    };
    let s = sigma * (z - center);
    let mut out = [LocalValue { value: 0.0, derivative: 0.0, tail: 0.0 }; 2];
    for (slot, rho) in [0.0, mu].into_iter().enumerate() {
        let mut a = vec![1.0];
        for m in 1..=n {
            let den = f(0, m as f64 + rho);
            if den == 0.0 {
                return Err(Error::Resonance(m));
            }
            let mut acc = 0.0;
            for j in 1..width.min(m + 1) {
                acc += a[m - j] * f(j, (m - j) as f64 + rho);
            }
            a.push(-acc / den);
        }
        let mut val = 0.0;
        let mut der = 0.0;
        for (m, am) in a.iter().enumerate() {
            let e = m as f64 + rho;
            val += am * s.powf(e);
            if e != 0.0 {
                der += am * e * s.powf(e - 1.0);
            }
        }
        // ratio-test tail bound on the last few terms
        let ratio = (n.saturating_sub(4)..=n)
            .filter(|&m| m >= 1 && a[m - 1] != 0.0)
            .map(|m| (a[m] / a[m - 1]).abs() * s)
            .fold(0.0, f64::max);
        let last = (a[n] * s.powf(n as f64 + rho)).abs();
        let tail = if ratio < 1.0 { last * ratio / (1.0 - ratio) } else { f64::INFINITY };
        if !(tail <= 1e-12 * val.abs().max(1.0)) {
            return Err(Error::Truncation { tail, suggested: 2 * n });
        }
        out[slot] = LocalValue { value: val, derivative: sigma * der, tail };
    }
    Ok(out)
}

/// C' = Φ0(z_match)·Φ1(z_match)^{-1} from local Frobenius pairs.
pub fn frobenius_connection(theta: impl Into<NumParams>, t: f64, z_match: f64, n: usize) -> Result<ConnectionMatrix> {
    let theta = theta.into();
    let chi = from_trinoid(&theta, &t, SignTuple::PP)?;
    check_exponents(&chi)?;
    let w0 = local_solutions(&chi, 0, z_match, n)?;
    let w1 = local_solutions(&chi, 1, z_match, n)?;
    // rows [y, y'] per solution
    let m0 = [[w0[0].value, w0[0].derivative], [w0[1].value, w0[1].derivative]];
    let m1 = [[w1[0].value, w1[0].derivative], [w1[1].value, w1[1].derivative]];
    let det1 = m1[0][0] * m1[1][1] - m1[0][1] * m1[1][0];
    if det1 == 0.0 {
        return Err(Error::Degenerate("local solutions at z = 1 are dependent".into()));
    }
    let inv1 = [[m1[1][1] / det1, -m1[0][1] / det1], [-m1[1][0] / det1, m1[0][0] / det1]];
    let mul = |i: usize, j: usize| m0[i][0] * inv1[0][j] + m0[i][1] * inv1[1][j];
    let re = |x: f64| Complex64::new(x, 0.0);
    Ok(ConnectionMatrix::from_entries(re(mul(0, 0)), re(mul(0, 1)), re(mul(1, 0)), re(mul(1, 1)), ConnMethod::Frobenius))
}

/// bc/ad together with a reducibility flag.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub ratio: Complex64,
    /// Some entry vanishes (only b or c can, given ad ≠ 0).
    pub reducible: bool,
}

fn negligible(z: Complex64, scale: f64) -> bool {
    z.norm() <= 1e3 * f64::EPSILON * scale
}

fn scale_of(c: &ConnectionMatrix) -> f64 {
    c.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn unitarisability_ratio(c: &ConnectionMatrix) -> Result<RatioReport> {
    let scale = scale_of(c);
    if negligible(c.a, scale) || negligible(c.d, scale) {
        return Err(Error::Reducible("a·d = 0".into()));
    }
    Ok(RatioReport { ratio: c.b * c.c / (c.a * c.d), reducible: !is_irreducible(c) })
}

/// All four entries non-zero beyond the ladder threshold.
pub fn is_irreducible(c: &ConnectionMatrix) -> bool {
    let scale = scale_of(c);
    scale > 0.0 && c.entries().iter().all(|z| !negligible(*z, scale))
}

/// q(μ0,μ1)q(-μ0,-μ1) / (q(μ0,-μ1)q(-μ0,μ1)).
pub fn q_ratio(theta: impl Into<NumParams>, t: f64) -> Result<f64> {
    let theta = theta.into();
    let mut q = BTreeMap::new();
    for s in SignTuple::ALL {
        q.insert(s, q_laddered(&theta, t, s, DEFAULT_K, DEFAULT_TOL)?);
    }
    let den = q[&SignTuple::PM].q * q[&SignTuple::MP].q;
    let num = q[&SignTuple::PP].q * q[&SignTuple::MM].q;
    let scale = q.values().map(|r| r.q.abs()).fold(0.0, f64::max);
    let tiny = |x: &QRecord| x.q.abs() <= x.err_est.max(1e3 * f64::EPSILON * scale);
    if SignTuple::ALL.iter().any(|s| tiny(&q[s])) {
        return Err(Error::Reducible("a q-value vanishes within its error".into()));
    }
    Ok(num / den)
}

/// True iff the q-ratio is a negative real.
pub fn simultaneously_unitarisable(theta: impl Into<NumParams>, t: f64) -> Result<bool> {
    Ok(q_ratio(theta, t)? < 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::che::TrinoidParams;

    fn star() -> TrinoidParams {
        TrinoidParams::parse("1/2,1/2,-1/8,1/8,1/8").unwrap()
    }

    #[test]
    fn ratio_arithmetic() {
        let r = |x: f64| Complex64::new(x, 0.0);
        let c = ConnectionMatrix::from_entries(r(1.0), r(1.0), r(1.0), r(2.0), ConnMethod::Frobenius);
        assert!((unitarisability_ratio(&c).unwrap().ratio - 0.5).norm() < 1e-15);
        let c = ConnectionMatrix::from_entries(r(1.0), r(0.0), r(1.0), r(1.0), ConnMethod::Frobenius);
        let rep = unitarisability_ratio(&c).unwrap();
        assert!(rep.reducible && rep.ratio.norm() == 0.0);
        assert!(!is_irreducible(&c));
    }

    #[test]
    fn pole_at_integer_mu() {
        let th = TrinoidParams::parse("0,1/2,-1/8,1/8,1/8").unwrap();
        assert!(matches!(connection_matrix(&th, 0.5, DEFAULT_K, DEFAULT_TOL), Err(Error::Pole(_))));
    }

    #[test]
    fn frobenius_truncation_stable() {
        let a = frobenius_connection(&star(), 0.5, 0.5, 60).unwrap();
        let b = frobenius_connection(&star(), 0.5, 0.5, 120).unwrap();
        let ra = unitarisability_ratio(&a).unwrap().ratio;
        let rb = unitarisability_ratio(&b).unwrap().ratio;
        assert!((ra - rb).norm() < 1e-8 * rb.norm());
    }

    #[test]
    fn methods_agree_at_half() {
        let a = connection_matrix(&star(), 0.5, DEFAULT_K, DEFAULT_TOL).unwrap();
        let f = frobenius_connection(&star(), 0.5, 0.5, 80).unwrap();
        let ra = unitarisability_ratio(&a).unwrap().ratio;
        let rf = unitarisability_ratio(&f).unwrap().ratio;
        assert!((ra - rf).norm() <= 1e-6 * rf.norm(), "{ra} vs {rf}");
    }
}
