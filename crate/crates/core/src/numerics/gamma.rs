//! Real log-gamma, signed gamma and the ratio Γ(k+1)/Γ(k-μ).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::real::Real;
use crate::error::{Error, Result};

const BERNOULLI_MAX: usize = 96;

/// B_0 .. B_96 (B_1 = -1/2 convention).
fn bernoulli() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut b: Vec<BigRational> = Vec::with_capacity(BERNOULLI_MAX + 1);
        b.push(BigRational::one());
        for m in 1..=BERNOULLI_MAX {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(m+1, k)
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

fn stirling_threshold<R: Real>() -> f64 {
    let bits = R::precision_bits();
    if bits <= 64 {
        8.0
    } else {
        (bits / 4) as f64
    }
}

/// ln Γ(x) for x > 0.
pub fn log_gamma<R: Real>(x: &R) -> Result<R> {
    let xf = x.as_f64();
    if !(*x > R::zero()) {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {xf}")));
    }
    if *x == R::one() || *x == R::from_int(2) {
        return Ok(R::zero());
    }
    if xf < 0.5 {
        // reflection
        let pi = R::pi();
        let s = (pi.clone() * x.clone()).sin();
        let rest = log_gamma(&(R::one() - x.clone()))?;
        return Ok(pi.ln() - s.ln() - rest);
    }
    let threshold = stirling_threshold::<R>();
    let mut y = x.clone();
    let mut prod = R::one();
    while y.as_f64() < threshold {
        prod = prod * y.clone();
        y = y + R::one();
    }
    let half = R::from_ratio(1, 2);
    let two_pi = R::pi() * R::from_int(2);
    let mut sum = (y.clone() - half.clone()) * y.ln() - y.clone() + half * two_pi.ln();
    let inv = R::one() / y.clone();
    let inv2 = inv.clone() * inv.clone();
    let mut power = inv;
    let eps = R::epsilon() * 0.01;
    let table = bernoulli();
    let mut n = 1;
    while 2 * n <= BERNOULLI_MAX {
        let coeff = R::from_rational(&table[2 * n]) / R::from_int((2 * n * (2 * n - 1)) as i64);
        let term = coeff * power.clone();
        sum = sum + term.clone();
        if term.abs().as_f64() <= eps * sum.abs().as_f64().max(1e-300) {
            break;
        }
        power = power * inv2.clone();
        n += 1;
    }
    Ok(sum - prod.ln())
}

/// Γ(x) for real x off the non-positive integers, with sign.
pub fn gamma<R: Real>(x: &R) -> Result<R> {
    let xf = x.as_f64();
    if *x > R::zero() {
        return Ok(log_gamma(x)?.exp());
    }
    if xf == xf.round() {
        return Err(Error::Pole(format!("gamma has a pole at {xf}")));
    }
    let pi = R::pi();
    let s = (pi.clone() * x.clone()).sin();
    let g = gamma(&(R::one() - x.clone()))?;
    Ok(pi / (s * g))
}

/// Γ(k+1)/Γ(k-μ) via the log-gamma difference.
pub fn gamma_ratio<R: Real>(k: u64, mu: &R) -> Result<R> {
    let kk = R::from_int(k as i64);
    let arg = kk.clone() - mu.clone();
    if k < 1 || !(arg > R::zero()) {
        return Err(Error::Domain(format!(
            "gamma_ratio needs k >= 1 and k - mu > 0 (k = {k}, mu = {})",
            mu.as_f64()
        )));
    }
    let num = log_gamma(&(kk + R::one()))?;
    let den = log_gamma(&arg)?;
    Ok((num - den).exp())
}
