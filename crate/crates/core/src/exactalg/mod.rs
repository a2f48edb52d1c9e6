//! Exact rational arithmetic, polynomial algebra, radical elimination and
//! Sturm root counting.

pub mod multipoly;
pub mod rational;
pub mod sturm;
pub mod tower;
pub mod unipoly;

pub use multipoly::{MultiPoly, TriPoly};
pub use rational::{fmt_rational, int, parse_number, parse_rational, rat, Rational};
pub use sturm::{count_roots, count_roots_report, square_free_part, RootCount};
pub use tower::{QuadTower, TowerElem};
pub use unipoly::UniPoly;

use num_traits::One;

use crate::error::{Error, Result};

/// Product of the four sign-conjugates F(x,±y0,±y1); even in y0 and y1.
pub fn four_sign_product(f: &TriPoly) -> TriPoly {
    let h = f * &f.negate_var(2);
    &h * &h.negate_var(1)
}

/// Replaces y_j^2 by 1 - w_j x^2 in a polynomial even in y0 and y1.
pub fn reduce_radicals(q: &TriPoly, w0: &Rational, w1: &Rational) -> Result<UniPoly> {
    for var in [1, 2] {
        if !q.is_even_in(var) {
            return Err(Error::Parity { var: var - 1 });
        }
    }
    let one_minus = |w: &Rational| UniPoly::new(vec![Rational::one(), Rational::from_integer(0.into()), -w]);
    let s0 = one_minus(w0);
    let s1 = one_minus(w1);
    let p0: Vec<UniPoly> = (0..=q.degree_in(1) / 2).map(|j| s0.pow(j)).collect();
    let p1: Vec<UniPoly> = (0..=q.degree_in(2) / 2).map(|j| s1.pow(j)).collect();
    let mut acc = UniPoly::default();
    for (e, c) in q.terms() {
        let m = UniPoly::monomial(c.clone(), e[0] as usize);
        let t = &(&m * &p0[(e[1] / 2) as usize]) * &p1[(e[2] / 2) as usize];
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Same result as `reduce_radicals(&four_sign_product(f), w0, w1)`, computed by
/// splitting f = A + B y0 + C y1 + D y0 y1 over Q[x] with y_j^2 already reduced.
pub fn eliminate_radicals(f: &TriPoly, w0: &Rational, w1: &Rational) -> UniPoly {
    let one_minus = |w: &Rational| UniPoly::new(vec![Rational::one(), Rational::from_integer(0.into()), -w]);
    let g0 = one_minus(w0);
    let g1 = one_minus(w1);
    let p0: Vec<UniPoly> = (0..=f.degree_in(1) / 2).map(|j| g0.pow(j)).collect();
    let p1: Vec<UniPoly> = (0..=f.degree_in(2) / 2).map(|j| g1.pow(j)).collect();
    let mut parts = [UniPoly::default(), UniPoly::default(), UniPoly::default(), UniPoly::default()];
    for (e, c) in f.terms() {
        let m = UniPoly::monomial(c.clone(), e[0] as usize);
        let t = &(&m * &p0[(e[1] / 2) as usize]) * &p1[(e[2] / 2) as usize];
        let slot = (e[1] % 2 + 2 * (e[2] % 2)) as usize;
        parts[slot] = &parts[slot] + &t;
    }
    let [a, b, c, d] = parts;
    // (A + B y0)^2 - g1 (C + D y0)^2 = P + Q y0
    let p = &(&(&a * &a) + &(&(&b * &b) * &g0)) - &(&g1 * &(&(&c * &c) + &(&(&d * &d) * &g0)));
    let q = &(&a * &b) - &(&g1 * &(&c * &d));
    let q = &q + &q;
    &(&p * &p) - &(&g0 * &(&q * &q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y0() -> TriPoly {
        TriPoly::var(1)
    }
    fn y1() -> TriPoly {
        TriPoly::var(2)
    }
    fn x() -> TriPoly {
        TriPoly::var(0)
    }

    #[test]
    fn four_sign_examples() {
        assert_eq!(four_sign_product(&y0()), y0().pow(4));
        let f = &x() + &y0();
        let expect = (&x().pow(2) - &y0().pow(2)).pow(2);
        assert_eq!(four_sign_product(&f), expect);
        assert_eq!(four_sign_product(&TriPoly::constant(int(1))), TriPoly::constant(int(1)));
    }

    #[test]
    fn reduce_examples() {
        let q = y0().pow(2);
        assert_eq!(reduce_radicals(&q, &rat(1, 2), &int(0)).unwrap(), UniPoly::new(vec![int(1), int(0), rat(-1, 2)]));
        let q = &(&y0().pow(2) * &y1().pow(2)) - &TriPoly::constant(int(1));
        assert_eq!(reduce_radicals(&q, &int(1), &int(1)).unwrap(), UniPoly::from_ints(&[0, 0, -2, 0, 1]));
        assert_eq!(reduce_radicals(&y0(), &int(1), &int(1)), Err(Error::Parity { var: 0 }));
    }

    #[test]
    fn eliminate_matches_two_step() {
        let f = &(&(&x() * &y0()) + &(&y1().pow(3) * &x().pow(2))) + &(&(&y0() * &y1()).scale(&rat(3, 7)) - &TriPoly::constant(int(2)));
        let (w0, w1) = (rat(1, 2), rat(-3, 4));
        assert_eq!(eliminate_radicals(&f, &w0, &w1), reduce_radicals(&four_sign_product(&f), &w0, &w1).unwrap());
    }
}
