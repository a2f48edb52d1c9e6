use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use super::rational::Rational;
use crate::numerics::Ring;

/// Sparse polynomial over Q in `N` variables.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly<const N: usize> {
    terms: BTreeMap<[u32; N], Rational>,
}

/// Polynomials in (x, y0, y1).
pub type TriPoly = MultiPoly<3>;

impl<const N: usize> MultiPoly<N> {
    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term([0; N], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        MultiPoly::monomial(e, Rational::one())
    }

    pub fn monomial(e: [u32; N], c: Rational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(e, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: [u32; N], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    /// Substitutes v_i -> -v_i.
    pub fn negate_var(&self, i: usize) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, if e[i] % 2 == 1 { -c } else { c.clone() })).collect(),
        }
    }

    /// True when every exponent of variable i is even.
    pub fn is_even_in(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] % 2 == 0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn eval_f64(&self, v: &[f64; N]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for i in 0..N {
                    t *= v[i].powi(e[i] as i32);
                }
                t
            })
            .sum()
    }

    pub fn eval(&self, v: &[Rational; N]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N {
                for _ in 0..e[i] {
                    t *= &v[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MultiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<const N: usize> fmt::Debug for MultiPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<const N: usize> Add for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn add(self, o: &MultiPoly<N>) -> MultiPoly<N> {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl<const N: usize> Sub for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn sub(self, o: &MultiPoly<N>) -> MultiPoly<N> {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c);
        }
        r
    }
}

impl<const N: usize> Mul for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn mul(self, o: &MultiPoly<N>) -> MultiPoly<N> {
        let mut r = MultiPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = [0; N];
                for i in 0..N {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        r
    }
}

impl<const N: usize> Neg for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn neg(self) -> MultiPoly<N> {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl<const N: usize> Add for MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn add(self, o: MultiPoly<N>) -> MultiPoly<N> {
        &self + &o
    }
}

impl<const N: usize> Sub for MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn sub(self, o: MultiPoly<N>) -> MultiPoly<N> {
        &self - &o
    }
}

impl<const N: usize> Mul for MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn mul(self, o: MultiPoly<N>) -> MultiPoly<N> {
        &self * &o
    }
}

impl<const N: usize> Neg for MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn neg(self) -> MultiPoly<N> {
        -&self
    }
}

impl<const N: usize> Zero for MultiPoly<N> {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<const N: usize> One for MultiPoly<N> {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl<const N: usize> Ring for MultiPoly<N> {
    fn from_ratio(n: i64, d: i64) -> Self {
        MultiPoly::constant(Rational::new(n.into(), d.into()))
    }
}
