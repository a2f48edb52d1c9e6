//! Exact arithmetic and sign determination in Q(√g_0, ..., √g_{n-1}).

use num_traits::{Signed, Zero};

use super::rational::{sign, Rational};

/// A tower of real quadratic extensions by square roots of non-negative
/// rationals. Elements are coefficient vectors over the 2^n products of
/// generators; bit i of the index selects √g_i.
#[derive(Clone, Debug)]
pub struct QuadTower {
    gens: Vec<Rational>,
}

pub type TowerElem = Vec<Rational>;

impl QuadTower {
    /// Panics on a negative generator.
    pub fn new(gens: Vec<Rational>) -> Self {
        assert!(gens.iter().all(|g| !g.is_negative()), "generators must be non-negative");
        QuadTower { gens }
    }

    pub fn dim(&self) -> usize {
        1 << self.gens.len()
    }

    pub fn zero(&self) -> TowerElem {
        vec![Rational::zero(); self.dim()]
    }

    /// c·Π_{i in mask} √g_i.
    pub fn basis(&self, mask: usize, c: Rational) -> TowerElem {
        let mut v = self.zero();
        v[mask] = c;
        v
    }

    pub fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        mul_level(&self.gens, a, b)
    }

    /// Exact sign of an element.
    pub fn sign(&self, a: &TowerElem) -> i32 {
        sign_level(&self.gens, a)
    }

    pub fn to_f64(&self, a: &TowerElem) -> f64 {
        let roots: Vec<f64> = self.gens.iter().map(|g| num_traits::ToPrimitive::to_f64(g).unwrap_or(0.0).sqrt()).collect();
        a.iter()
            .enumerate()
            .map(|(mask, c)| {
                let mut t = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
                for (i, r) in roots.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        t *= r;
                    }
                }
                t
            })
            .sum()
    }
}

fn mul_level(gens: &[Rational], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut r = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let mut c = x * y;
            let both = i & j;
            for (k, g) in gens.iter().enumerate() {
                if both >> k & 1 == 1 {
                    c *= g;
                }
            }
            r[i ^ j] += c;
        }
    }
    r
}

fn sign_level(gens: &[Rational], a: &[Rational]) -> i32 {
    if gens.is_empty() {
        return sign(&a[0]);
    }
    let half = a.len() / 2;
    let lower = &gens[..gens.len() - 1];
    let g = &gens[gens.len() - 1];
    let (u, v) = a.split_at(half);
    let su = sign_level(lower, u);
    if g.is_zero() {
        return su;
    }
    let sv = sign_level(lower, v);
    if sv == 0 || su == sv {
        return if su == 0 { sv } else { su };
    }
    if su == 0 {
        return sv;
    }
    // opposite signs: compare u^2 with g v^2
    let uu = mul_level(lower, u, u);
    let vv = mul_level(lower, v, v);
    let norm: Vec<Rational> = uu.iter().zip(&vv).map(|(x, y)| x - y * g).collect();
    su * sign_level(lower, &norm)
}
