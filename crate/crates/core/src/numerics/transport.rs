//! Adaptive RKF45 transport of dΦ = Φ·A(z)dz along paths in the plane.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mat2::Mat2;
use crate::error::{Error, Result};

/// A path in C. Primitive pieces are parametrised by s ∈ [0, 1].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PathSpec {
    Circle {
        center: Complex64,
        radius: f64,
        ccw: bool,
        /// Angle of the start (and end) point.
        start_angle: f64,
    },
    Segment {
        from: Complex64,
        to: Complex64,
    },
    Composite(Vec<PathSpec>),
}

impl PathSpec {
    pub fn circle(center: Complex64, radius: f64, ccw: bool, start_angle: f64) -> Self {
        PathSpec::Circle { center, radius, ccw, start_angle }
    }

    pub fn segment(from: Complex64, to: Complex64) -> Self {
        PathSpec::Segment { from, to }
    }

    pub fn start(&self) -> Complex64 {
        match self {
            PathSpec::Circle { center, radius, start_angle, .. } => {
                center + Complex64::from_polar(*radius, *start_angle)
            }
            PathSpec::Segment { from, .. } => *from,
            PathSpec::Composite(v) => v.first().map(|p| p.start()).unwrap_or_default(),
        }
    }

    pub fn end(&self) -> Complex64 {
        match self {
            PathSpec::Circle { .. } => self.start(),
            PathSpec::Segment { to, .. } => *to,
            PathSpec::Composite(v) => v.last().map(|p| p.end()).unwrap_or_default(),
        }
    }

    pub fn base_point(&self) -> Complex64 {
        self.start()
    }

    /// Checks radii and end-to-end continuity.
    pub fn validate(&self) -> Result<()> {
        match self {
            PathSpec::Circle { radius, .. } if !(*radius > 0.0) => {
                Err(Error::Domain(format!("circle radius must be positive, got {radius}")))
            }
            PathSpec::Composite(v) => {
                if v.is_empty() {
                    return Err(Error::Domain("empty composite path".into()));
                }
                for p in v {
                    p.validate()?;
                }
                for w in v.windows(2) {
                    let gap = (w[0].end() - w[1].start()).norm();
                    if gap > 1e-12 * (1.0 + w[0].end().norm()) {
                        return Err(Error::Domain(format!("composite path has a gap of {gap:e}")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Smallest distance from the path to `p`.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match self {
            PathSpec::Circle { center, radius, .. } => ((p - center).norm() - radius).abs(),
            PathSpec::Segment { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - from).norm();
                }
                let s = ((p - from) * d.conj()).re / len2;
                let s = s.clamp(0.0, 1.0);
                (p - (from + d * s)).norm()
            }
            PathSpec::Composite(v) => v.iter().map(|q| q.distance_to(p)).fold(f64::INFINITY, f64::min),
        }
    }

    fn point_and_velocity(&self, s: f64) -> (Complex64, Complex64) {
        match self {
            PathSpec::Circle { center, radius, ccw, start_angle } => {
                let dir = if *ccw { 1.0 } else { -1.0 };
                let ang = start_angle + dir * 2.0 * PI * s;
                let off = Complex64::from_polar(*radius, ang);
                (center + off, Complex64::new(0.0, dir * 2.0 * PI) * off)
            }
            PathSpec::Segment { from, to } => (from + (to - from) * s, to - from),
            PathSpec::Composite(_) => unreachable!("composite paths are split before stepping"),
        }
    }
}

/// Result of transporting the identity along a path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportResult {
    pub matrix: Mat2,
    pub est_error: f64,
    pub steps: usize,
}

// Fehlberg 4(5) tableau
const C: [f64; 6] = [0.0, 0.25, 3.0 / 8.0, 12.0 / 13.0, 1.0, 0.5];
const A: [[f64; 5]; 6] = [
    [0.0, 0.0, 0.0, 0.0, 0.0],
    [0.25, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 32.0, 9.0 / 32.0, 0.0, 0.0, 0.0],
    [1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0.0, 0.0],
    [439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0.0],
    [-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0],
];
const B5: [f64; 6] = [16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0];
const B4: [f64; 6] = [25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0, 0.0];

const MIN_STEP: f64 = 1e-14;

fn transport_piece<F>(coeff: &F, piece: &PathSpec, tol: f64) -> Result<TransportResult>
where
    F: Fn(Complex64) -> Mat2,
{
    let rhs = |s: f64, phi: &Mat2| -> Mat2 {
        let (z, dz) = piece.point_and_velocity(s);
        *phi * coeff(z).scale(dz)
    };
    let mut phi = Mat2::identity();
    let mut s = 0.0;
    let mut h = 1.0 / 64.0;
    let mut est_error = 0.0;
    let mut steps = 0;
    while s < 1.0 {
        if s + h > 1.0 {
            h = 1.0 - s;
        }
        let mut k = [Mat2::zero(); 6];
        for i in 0..6 {
            let mut y = phi;
            for j in 0..i {
                if A[i][j] != 0.0 {
                    y = y + k[j].scale((h * A[i][j]).into());
                }
            }
            k[i] = rhs(s + C[i] * h, &y);
        }
        let mut y5 = phi;
        let mut y4 = phi;
        for i in 0..6 {
            y5 = y5 + k[i].scale((h * B5[i]).into());
            y4 = y4 + k[i].scale((h * B4[i]).into());
        }
        let err = (y5 - y4).max_abs();
        if !err.is_finite() {
            let (z, _) = piece.point_and_velocity(s);
            return Err(Error::Integration { re: z.re, im: z.im, msg: "non-finite state".into() });
        }
        if err <= tol {
            phi = y5;
            s += h;
            est_error += err;
            steps += 1;
        }
        let factor = if err == 0.0 { 4.0 } else { (0.9 * (tol / err).powf(0.2)).clamp(0.2, 4.0) };
        h *= factor;
        if h < MIN_STEP && s < 1.0 {
            let (z, _) = piece.point_and_velocity(s);
            return Err(Error::Integration { re: z.re, im: z.im, msg: "step size underflow".into() });
        }
    }
    Ok(TransportResult { matrix: phi, est_error, steps })
}

/// Transport T with Φ(end) = Φ(start)·T for dΦ = Φ·coeff(z)dz.
pub fn integrate_transport<F>(coeff: F, path: &PathSpec, tol: f64) -> Result<TransportResult>
where
    F: Fn(Complex64) -> Mat2,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    path.validate()?;
    fn walk<F: Fn(Complex64) -> Mat2>(coeff: &F, path: &PathSpec, tol: f64, acc: &mut TransportResult) -> Result<()> {
        match path {
            PathSpec::Composite(v) => {
                for p in v {
                    walk(coeff, p, tol, acc)?;
                }
            }
            piece => {
                let r = transport_piece(coeff, piece, tol)?;
                acc.matrix = acc.matrix * r.matrix;
                acc.est_error += r.est_error;
                acc.steps += r.steps;
            }
        }
        Ok(())
    }
    let mut acc = TransportResult { matrix: Mat2::identity(), est_error: 0.0, steps: 0 };
    walk(&coeff, path, tol, &mut acc)?;
    Ok(acc)
}
