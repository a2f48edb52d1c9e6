//! Scalar traits shared by the exact and floating pipelines, and a
//! fixed-precision binary float backed by `dashu-float`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::ops::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring with the small constants the recurrences need.
pub trait Ring:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(n: i64, d: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

/// Ordered field.
pub trait Field: Ring + Div<Output = Self> + PartialOrd {
    fn as_f64(&self) -> f64;

    fn signum_i(&self) -> i32 {
        let z = Self::zero();
        if *self > z {
            1
        } else if *self < z {
            -1
        } else {
            0
        }
    }
}

/// Real floating-point scalar with elementary functions.
pub trait Real: Field {
    /// Mantissa bits.
    fn precision_bits() -> u32;
    fn from_f64(x: f64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn pi() -> Self;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    /// Unit roundoff 2^(1-p).
    fn epsilon() -> f64 {
        2f64.powi(1 - Self::precision_bits() as i32)
    }
    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Ring for f64 {
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
}

impl Field for f64 {
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Real for f64 {
    fn precision_bits() -> u32 {
        53
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl Ring for BigRational {
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(n.into(), d.into())
    }
}

impl Field for BigRational {
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn signum_i(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

type Inner = FBig<HalfEven, 2>;

/// Binary float with `BITS` mantissa bits, round-half-even.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct BigFloat<const BITS: usize>(Inner);

/// The escalation precision of the ladder.
pub type Big256 = BigFloat<256>;

impl<const BITS: usize> BigFloat<BITS> {
    fn wrap(x: Inner) -> Self {
        BigFloat(x.with_precision(BITS).value())
    }
    fn from_ibig(n: IBig) -> Self {
        Self::wrap(Inner::from(n))
    }
}

macro_rules! big_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<const BITS: usize> $tr for BigFloat<BITS> {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                BigFloat(self.0 $op rhs.0)
            }
        }
    };
}
big_binop!(Add, add, +);
big_binop!(Sub, sub, -);
big_binop!(Mul, mul, *);
big_binop!(Div, div, /);

impl<const BITS: usize> Neg for BigFloat<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        BigFloat(-self.0)
    }
}

impl<const BITS: usize> Zero for BigFloat<BITS> {
    fn zero() -> Self {
        Self::wrap(Inner::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == Inner::ZERO
    }
}

impl<const BITS: usize> One for BigFloat<BITS> {
    fn one() -> Self {
        Self::wrap(Inner::ONE)
    }
}

impl<const BITS: usize> Ring for BigFloat<BITS> {
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_ibig(IBig::from(n)) / Self::from_ibig(IBig::from(d))
    }
}

impl<const BITS: usize> Field for BigFloat<BITS> {
    fn as_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
}

impl<const BITS: usize> Real for BigFloat<BITS> {
    fn precision_bits() -> u32 {
        BITS as u32
    }
    fn from_f64(x: f64) -> Self {
        Self::wrap(Inner::try_from(x).expect("finite f64"))
    }
    fn from_rational(q: &BigRational) -> Self {
        let n = IBig::from_str(&q.numer().to_string()).expect("integer");
        let d = IBig::from_str(&q.denom().to_string()).expect("integer");
        Self::from_ibig(n) / Self::from_ibig(d)
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.sqrt())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.ln())
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.exp())
    }
    fn sin(&self) -> Self {
        // reduce to [-pi, pi], then Taylor
        let pi = Self::pi();
        let two_pi = pi.clone() + pi.clone();
        let turns = (self.as_f64() / two_pi.as_f64()).round();
        let mut x = self.clone() - two_pi * Self::from_f64(turns);
        // halve until small, then use sin(2x) = 2 sin x cos x via (s, c)
        let mut halvings = 0;
        while x.as_f64().abs() > 0.125 {
            x = x / Self::from_int(2);
            halvings += 1;
        }
        let eps = Self::from_f64(Self::epsilon() * 1e-3);
        let x2 = x.clone() * x.clone();
        let mut term = x.clone();
        let mut s = x.clone();
        let mut n = 1i64;
        while term.abs() > eps {
            term = -(term * x2.clone()) / Self::from_int((n + 1) * (n + 2));
            s = s + term.clone();
            n += 2;
        }
        let one = Self::one();
        let mut c = (one - s.clone() * s.clone()).sqrt();
        for _ in 0..halvings {
            let s2 = Self::from_int(2) * s.clone() * c.clone();
            let c2 = c.clone() * c.clone() - s.clone() * s.clone();
            s = s2;
            c = c2;
        }
        s
    }
    fn pi() -> Self {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        fn atan_inv<const B: usize>(m: i64) -> BigFloat<B> {
            let eps = BigFloat::<B>::from_f64(BigFloat::<B>::epsilon() * 1e-3);
            let inv = BigFloat::<B>::from_ratio(1, m);
            let inv2 = inv.clone() * inv.clone();
            let mut power = inv.clone();
            let mut sum = inv;
            let mut k = 1i64;
            loop {
                power = -(power * inv2.clone());
                let term = power.clone() / BigFloat::<B>::from_int(2 * k + 1);
                if term.abs() < eps {
                    break;
                }
                sum = sum + term;
                k += 1;
            }
            sum
        }
        Self::from_int(16) * atan_inv::<BITS>(5) - Self::from_int(4) * atan_inv::<BITS>(239)
    }
}
