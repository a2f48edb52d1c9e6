//! Distinct real root counting by Sturm chains built from primitive
//! pseudo-remainders.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::rational::Rational;
use super::unipoly::{primitive, UniPoly};
use crate::error::{Error, Result};

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder lc(b)^e·a mod b, together with e.
fn prem(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, u32) {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = 0;
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        e += 1;
        r.pop();
        r = trim(r);
    }
    (r, e)
}

fn int_derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let (r, _) = prem(&a, &b);
        a = b;
        b = primitive(r);
    }
    a
}

/// Sign of p(n/d) for d > 0, exactly.
fn sign_at(p: &[BigInt], x: &Rational) -> i32 {
    let n = x.numer();
    let d = x.denom();
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    // Horner on the homogenised form sum c_i n^i d^(deg-i)
    for c in p.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

/// The Sturm chain of a square-free integer polynomial.
fn chain(p: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let mut seq = vec![p.clone()];
    let d = primitive(int_derivative(&p));
    if d.is_empty() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (r, e) = prem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        let lb_neg = seq[n - 1].last().unwrap().is_negative();
        let flip = !(lb_neg && e % 2 == 1);
        let next: Vec<BigInt> = if flip { r.into_iter().map(|c| -c).collect() } else { r };
        seq.push(primitive(next));
    }
    seq
}

fn variations(seq: &[Vec<BigInt>], x: &Rational) -> usize {
    let mut last = 0;
    let mut v = 0;
    for p in seq {
        let s = sign_at(p, x);
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Outcome of a root count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCount {
    /// Distinct real roots in (lo, hi].
    pub distinct: usize,
    /// Whether the input polynomial has any repeated complex root.
    pub repeated_roots: bool,
}

/// Square-free part over Q, primitive with integer coefficients.
pub fn square_free_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    let ip = p.primitive_integer();
    let g = int_gcd(&ip, &int_derivative(&ip));
    let sqf = UniPoly::from_bigints(&ip).exact_div(&UniPoly::from_bigints(&g)).expect("gcd divides");
    Ok(UniPoly::from_bigints(&sqf.primitive_integer()))
}

/// Distinct real roots of `p` in the half-open interval (lo, hi].
pub fn count_roots_report(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<RootCount> {
    if p.is_zero() {
        return Err(Error::Degenerate("cannot count roots of the zero polynomial".into()));
    }
    if lo > hi {
        return Err(Error::Domain("empty interval: lo > hi".into()));
    }
    let sqf = square_free_part(p)?;
    let repeated = sqf.degree() != p.degree();
    let seq = chain(sqf.primitive_integer());
    let distinct = variations(&seq, lo).saturating_sub(variations(&seq, hi));
    Ok(RootCount { distinct, repeated_roots: repeated })
}

/// Distinct real roots of `p` in (lo, hi].
pub fn count_roots(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    Ok(count_roots_report(p, lo, hi)?.distinct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn sqrt_two() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(count_roots(&p, &int(0), &int(1)).unwrap(), 0);
        assert_eq!(count_roots(&p, &int(1), &int(2)).unwrap(), 1);
        assert_eq!(count_roots(&p, &int(-2), &int(2)).unwrap(), 2);
    }

    #[test]
    fn endpoint_convention() {
        // roots 0 and 1: (0,1] contains only 1
        let p = UniPoly::from_ints(&[0, -1, 1]);
        assert_eq!(count_roots(&p, &int(0), &int(1)).unwrap(), 1);
        assert_eq!(count_roots(&p, &rat(-1, 2), &int(0)).unwrap(), 1);
        assert_eq!(count_roots(&p, &rat(1, 2), &rat(3, 4)).unwrap(), 0);
    }

    #[test]
    fn repeated_roots_flagged() {
        // (x - 1/2)^3 (x + 2)
        let a = UniPoly::new(vec![rat(-1, 2), int(1)]);
        let p = &a.pow(3) * &UniPoly::from_ints(&[2, 1]);
        let r = count_roots_report(&p, &int(0), &int(1)).unwrap();
        assert_eq!(r, RootCount { distinct: 1, repeated_roots: true });
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(count_roots(&UniPoly::default(), &int(0), &int(1)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn constant_has_no_roots() {
        assert_eq!(count_roots(&UniPoly::from_ints(&[-3]), &int(-5), &int(5)).unwrap(), 0);
    }
}
