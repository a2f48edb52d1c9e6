use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }
    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }
    pub fn zero() -> Self {
        Mat2::real(0.0, 0.0, 0.0, 0.0)
    }
    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), d)
    }
    pub fn a(&self) -> Complex64 {
        self.0[0][0]
    }
    pub fn b(&self) -> Complex64 {
        self.0[0][1]
    }
    pub fn c(&self) -> Complex64 {
        self.0[1][0]
    }
    pub fn d(&self) -> Complex64 {
        self.0[1][1]
    }
    pub fn det(&self) -> Complex64 {
        self.a() * self.d() - self.b() * self.c()
    }
    pub fn trace(&self) -> Complex64 {
        self.a() + self.d()
    }
    pub fn scale(&self, s: Complex64) -> Self {
        Mat2::new(self.a() * s, self.b() * s, self.c() * s, self.d() * s)
    }
    /// Inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        Some(Mat2::new(self.d(), -self.b(), -self.c(), self.a()).scale(det.inv()))
    }
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new(self.a().conj(), self.c().conj(), self.b().conj(), self.d().conj())
    }
    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
    pub fn dist(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a() + o.a(), self.b() + o.b(), self.c() + o.c(), self.d() + o.d())
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a() - o.a(), self.b() - o.b(), self.c() - o.c(), self.d() - o.d())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a() * o.a() + self.b() * o.c(),
            self.a() * o.b() + self.b() * o.d(),
            self.c() * o.a() + self.d() * o.c(),
            self.c() * o.b() + self.d() * o.d(),
        )
    }
}
