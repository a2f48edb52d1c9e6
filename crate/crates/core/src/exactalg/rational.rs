use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical "p/q" text, denominator always present.
pub fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses "p/q" or an integer "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational of the form p/q: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Domain(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Parses "p/q", an integer, or (when `allow_decimal`) a decimal literal,
/// converted exactly.
pub fn parse_number(s: &str, allow_decimal: bool) -> Result<Rational> {
    if let Ok(q) = parse_rational(s) {
        return Ok(q);
    }
    if !allow_decimal {
        return Err(Error::Domain(format!("decimal input {s:?} needs --approx; use p/q")));
    }
    let x: f64 = s.trim().parse().map_err(|_| Error::Domain(format!("not a number: {s:?}")))?;
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("not finite: {s:?}")))
}

pub fn sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Rational bounds lo <= sqrt(q) <= hi, width about 1e-12.
pub fn sqrt_bounds(q: &Rational) -> (Rational, Rational) {
    if let Some(r) = rational_sqrt(q) {
        return (r.clone(), r);
    }
    let f = num_traits::ToPrimitive::to_f64(q).unwrap_or(0.0).max(0.0).sqrt();
    let scale = int(1_000_000_000_000);
    let mut lo = Rational::from_float(f).unwrap_or_else(Rational::zero);
    let mut hi = lo.clone();
    let step = Rational::new(BigInt::from(1), scale.to_integer());
    while lo.is_positive() && &(&lo * &lo) > q {
        lo -= &step;
    }
    if lo.is_negative() {
        lo = Rational::zero();
    }
    while &(&hi * &hi) < q {
        hi += &step;
    }
    (lo, hi)
}
