//! Eigenlines, cross-ratios, unitarisability of SL(2,C) matrices and pairs,
//! and the Klein ball model of hyperbolic space.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Mat2;

/// Homogeneous point (x : y) of CP¹.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CP1Point {
    pub x: Complex64,
    pub y: Complex64,
}

impl CP1Point {
    pub fn new(x: Complex64, y: Complex64) -> Result<Self> {
        if x == Complex64::new(0.0, 0.0) && y == Complex64::new(0.0, 0.0) {
            return Err(Error::Degenerate("(0 : 0) is not a point of CP1".into()));
        }
        Ok(CP1Point { x, y })
    }

    pub fn finite(z: Complex64) -> Self {
        CP1Point { x: z, y: Complex64::new(1.0, 0.0) }
    }

    pub fn infinity() -> Self {
        CP1Point { x: Complex64::new(1.0, 0.0), y: Complex64::new(0.0, 0.0) }
    }

    /// x/y, or None at ∞.
    pub fn value(&self) -> Option<Complex64> {
        (self.y.norm() > 1e-300).then(|| self.x / self.y)
    }

    /// Chordal distance on the Riemann sphere.
    pub fn chordal(&self, o: &CP1Point) -> f64 {
        det(self, o).norm() / ((self.x.norm_sqr() + self.y.norm_sqr()).sqrt() * (o.x.norm_sqr() + o.y.norm_sqr()).sqrt())
    }

    /// Möbius action of g.
    pub fn apply(&self, g: &Mat2) -> CP1Point {
        CP1Point { x: g.a() * self.x + g.b() * self.y, y: g.c() * self.x + g.d() * self.y }
    }
}

fn det(p: &CP1Point, q: &CP1Point) -> Complex64 {
    p.x * q.y - p.y * q.x
}

/// Relative tolerance for eigenvalue coincidence and point coincidence.
const COINCIDENCE: f64 = 1e-12;

fn eigenvector(m: &Mat2, ev: Complex64) -> CP1Point {
    let u = (m.b(), ev - m.a());
    let v = (ev - m.d(), m.c());
    let pick = if u.0.norm() + u.1.norm() >= v.0.norm() + v.1.norm() { u } else { v };
    CP1Point { x: pick.0, y: pick.1 }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub enum Eigenlines {
    Two(CP1Point, CP1Point),
    /// Parabolic: a single fixed line.
    One(CP1Point),
}

impl Eigenlines {
    pub fn points(&self) -> Vec<CP1Point> {
        match self {
            Eigenlines::Two(p, q) => vec![*p, *q],
            Eigenlines::One(p) => vec![*p],
        }
    }
}

pub fn is_scalar(m: &Mat2) -> bool {
    let scale = m.max_abs().max(1.0);
    m.b().norm() <= COINCIDENCE * scale && m.c().norm() <= COINCIDENCE * scale && (m.a() - m.d()).norm() <= COINCIDENCE * scale
}

/// Eigenlines of M in CP¹; the first belongs to the eigenvalue with the
/// larger real part (ties broken by imaginary part).
pub fn eigenlines(m: &Mat2) -> Result<Eigenlines> {
    if is_scalar(m) {
        return Err(Error::EveryLineFixed);
    }
    let tr = m.trace();
    let disc = (tr * tr - 4.0 * m.det()).sqrt();
    let scale = m.max_abs().max(1.0);
    let (mut l1, mut l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    if (l1.re, l1.im) < (l2.re, l2.im) {
        std::mem::swap(&mut l1, &mut l2);
    }
    if disc.norm() <= 1e-7 * scale {
        return Ok(Eigenlines::One(eigenvector(m, tr / 2.0)));
    }
    Ok(Eigenlines::Two(eigenvector(m, l1), eigenvector(m, l2)))
}

/// [a,b,c,d] = det(b,c)det(d,a) / (det(b,a)det(d,c)), so [0,1,∞,x] = x.
pub fn cross_ratio(a: &CP1Point, b: &CP1Point, c: &CP1Point, d: &CP1Point) -> Result<Complex64> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i].chordal(pts[j]) <= COINCIDENCE {
                return Err(Error::Degenerate(format!("cross-ratio points {i} and {j} coincide")));
            }
        }
    }
    Ok(det(b, c) * det(d, a) / (det(b, a) * det(d, c)))
}

pub const DET_TOL: f64 = 1e-10;

fn check_sl2(m: &Mat2) -> Result<()> {
    let r = (m.det() - 1.0).norm();
    if r > DET_TOL * m.max_abs().powi(2).max(1.0) {
        return Err(Error::Domain(format!("determinant differs from 1 by {r:.3e}")));
    }
    Ok(())
}

/// Realness test for traces and cross-ratios.
pub fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-10_f64.max(1e-8 * z.re.abs())
}

/// M = ±Id, or tr M real with |tr M| < 2.
pub fn is_unitarisable(m: &Mat2) -> Result<bool> {
    check_sl2(m)?;
    if is_scalar(m) {
        return Ok(true);
    }
    let tr = m.trace();
    Ok(is_real(tr) && tr.re.abs() < 2.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub simultaneously_unitarisable: bool,
    pub cross_ratio: [f64; 2],
    pub cross_ratio_im_residual: f64,
    pub trace_im_residuals: [f64; 2],
}

/// Simultaneous unitarisability of an irreducible pair of individually
/// unitarisable matrices, decided by the sign of [φ, ψ, φ', ψ'] where φ, φ'
/// are the eigenlines of M0 and ψ, ψ' those of M1. The pairing makes the
/// cross-ratio equal bc/ad when M0 = diag(β, β⁻¹) and M1 = C diag(β, β⁻¹) C⁻¹
/// with Im β > 0.
pub fn pair_verdict(m0: &Mat2, m1: &Mat2) -> Result<PairVerdict> {
    for (i, m) in [m0, m1].iter().enumerate() {
        if is_scalar(m) {
            return Err(Error::Precondition(format!("M{i} is ±Id")));
        }
        if !is_unitarisable(m)? {
            return Err(Error::Precondition(format!("M{i} is not unitarisable")));
        }
    }
    let (Eigenlines::Two(f, f2), Eigenlines::Two(g, g2)) = (eigenlines(m0)?, eigenlines(m1)?) else {
        return Err(Error::Precondition("elliptic matrices have two eigenlines".into()));
    };
    for p in [&f, &f2] {
        for q in [&g, &g2] {
            if p.chordal(q) <= 1e-9 {
                return Err(Error::Reducible("the pair shares an eigenline".into()));
            }
        }
    }
    let cr = cross_ratio(&f2, &g, &f, &g2)?;
    Ok(PairVerdict {
        simultaneously_unitarisable: is_real(cr) && cr.re < 0.0,
        cross_ratio: [cr.re, cr.im],
        cross_ratio_im_residual: cr.im.abs(),
        trace_im_residuals: [m0.trace().im.abs(), m1.trace().im.abs()],
    })
}

pub fn simultaneously_unitarisable_pair(m0: &Mat2, m1: &Mat2) -> Result<bool> {
    Ok(pair_verdict(m0, m1)?.simultaneously_unitarisable)
}

/// Point of the closed Klein ball: with XX* = [[a+b, c+id], [c-id, a-b]],
/// returns (b, c, d)/a.
pub fn klein_point(x: &Mat2) -> Result<[f64; 3]> {
    let h = *x * x.adjoint();
    let a = (h.a().re + h.d().re) / 2.0;
    if !(a > 0.0) {
        return Err(Error::Degenerate("X = 0 has no Klein image".into()));
    }
    let b = (h.a().re - h.d().re) / 2.0;
    Ok([b / a, h.b().re / a, h.b().im / a])
}

/// Boundary point of the eigenline through the rank-1 matrix [v, 0].
pub fn klein_of_line(p: &CP1Point) -> [f64; 3] {
    let x = Mat2::new(p.x, Complex64::new(0.0, 0.0), p.y, Complex64::new(0.0, 0.0));
    klein_point(&x).expect("a CP1 point is nonzero")
}

#[derive(Clone, Debug, Serialize)]
pub struct Axes {
    pub endpoints0: [[f64; 3]; 2],
    pub endpoints1: [[f64; 3]; 2],
    pub intersection: Option<[f64; 3]>,
    /// Distance between the two chords.
    pub gap: f64,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn along(p: [f64; 3], d: [f64; 3], s: f64) -> [f64; 3] {
    [p[0] + s * d[0], p[1] + s * d[1], p[2] + s * d[2]]
}

/// Tolerance on the distance between axes for them to count as meeting.
pub const AXIS_TOL: f64 = 1e-8;

/// Axes of two elliptic matrices as chords of the Klein ball and their
/// intersection, if any.
pub fn axes(m0: &Mat2, m1: &Mat2) -> Result<Axes> {
    let ends = |m: &Mat2, i: usize| -> Result<[[f64; 3]; 2]> {
        if is_scalar(m) || !is_unitarisable(m)? {
            return Err(Error::Precondition(format!("M{i} is not elliptic")));
        }
        match eigenlines(m)? {
            Eigenlines::Two(p, q) => Ok([klein_of_line(&p), klein_of_line(&q)]),
            Eigenlines::One(_) => Err(Error::Precondition(format!("M{i} is parabolic"))),
        }
    };
    let e0 = ends(m0, 0)?;
    let e1 = ends(m1, 1)?;
    // closest points of the segments p + s u, q + r v with s, r in [0,1]
    let (p, q) = (e0[0], e1[0]);
    let (u, v) = (sub(e0[1], p), sub(e1[1], q));
    let w = sub(p, q);
    let (a, b, c, d, e) = (dot(u, u), dot(u, v), dot(v, v), dot(u, w), dot(v, w));
    let den = a * c - b * b;
    let mut s = if den > 1e-14 { ((b * e - c * d) / den).clamp(0.0, 1.0) } else { 0.0 };
    let mut r = ((b * s + e) / c).clamp(0.0, 1.0);
    s = ((b * r - d) / a).clamp(0.0, 1.0);
    r = ((b * s + e) / c).clamp(0.0, 1.0);
    let x = along(p, u, s);
    let y = along(q, v, r);
    let diff = sub(x, y);
    let gap = dot(diff, diff).sqrt();
    let mid = [(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0, (x[2] + y[2]) / 2.0];
    Ok(Axes { endpoints0: e0, endpoints1: e1, intersection: (gap <= AXIS_TOL).then_some(mid), gap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cross_ratio_normalisation() {
        let x = c(0.3, -2.0);
        let r = cross_ratio(&CP1Point::finite(c(0.0, 0.0)), &CP1Point::finite(c(1.0, 0.0)), &CP1Point::infinity(), &CP1Point::finite(x))
            .unwrap();
        assert!((r - x).norm() < 1e-15);
        let r = cross_ratio(
            &CP1Point::finite(c(0.0, 0.0)),
            &CP1Point::finite(c(0.0, -1.0)),
            &CP1Point::infinity(),
            &CP1Point::finite(c(0.0, 1.0)),
        )
        .unwrap();
        assert!((r + 1.0).norm() < 1e-15);
    }

    #[test]
    fn pair_examples() {
        let m0 = Mat2::diag(c(0.0, 1.0), c(0.0, -1.0));
        let m1 = Mat2::real(0.0, 1.0, -1.0, 0.0);
        let v = pair_verdict(&m0, &m1).unwrap();
        assert!(v.simultaneously_unitarisable);
        assert!((v.cross_ratio[0] + 1.0).abs() < 1e-12);
        let cm = Mat2::real(2.0, 1.0, 1.0, 1.0);
        let m1 = cm * m0 * cm.inverse().unwrap();
        let v = pair_verdict(&m0, &m1).unwrap();
        assert!(!v.simultaneously_unitarisable);
        assert!((v.cross_ratio[0] - 0.5).abs() < 1e-12, "{:?}", v.cross_ratio);
        let up = Mat2::new(c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, -1.0));
        assert!(matches!(pair_verdict(&m0, &up), Err(Error::Reducible(_))));
    }

    #[test]
    fn klein_examples() {
        assert_eq!(klein_point(&Mat2::identity()).unwrap(), [0.0, 0.0, 0.0]);
        let s = 2f64.sqrt();
        let k = klein_point(&Mat2::real(s, 0.0, 0.0, 1.0 / s)).unwrap();
        assert!((k[0] - 0.6).abs() < 1e-15 && k[1] == 0.0 && k[2] == 0.0);
        assert_eq!(klein_of_line(&CP1Point::infinity()), [1.0, 0.0, 0.0]);
        assert_eq!(klein_of_line(&CP1Point::finite(c(0.0, 0.0))), [-1.0, 0.0, 0.0]);
        assert!(klein_point(&Mat2::zero()).is_err());
    }

    #[test]
    fn unitarisable_examples() {
        assert!(is_unitarisable(&Mat2::diag(Complex64::from_polar(1.0, 1.0), Complex64::from_polar(1.0, -1.0))).unwrap());
        assert!(!is_unitarisable(&Mat2::real(1.0, 1.0, 0.0, 1.0)).unwrap());
        assert!(!is_unitarisable(&Mat2::real(2.0, 0.0, 0.0, 0.5)).unwrap());
        assert!(is_unitarisable(&Mat2::identity().scale(c(-1.0, 0.0))).unwrap());
        assert!(is_unitarisable(&Mat2::real(2.0, 0.0, 0.0, 1.0)).is_err());
        assert!(matches!(eigenlines(&Mat2::identity()), Err(Error::EveryLineFixed)));
        assert!(matches!(eigenlines(&Mat2::real(1.0, 1.0, 0.0, 1.0)).unwrap(), Eigenlines::One(_)));
    }
}
