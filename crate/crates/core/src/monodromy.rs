//! The trinoid potential, loop monodromies on the spectral circle, the
//! θ-expansion of the big-circle monodromy and the end weights.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::che::{NumParams, TrinoidParams};
use crate::error::{Error, Result};
use crate::exactalg::rational::rational_sqrt;
use crate::exactalg::{fmt_rational, int, rat, MultiPoly, Rational};
use crate::numerics::{integrate_transport, Mat2, PathSpec};

/// A point e^{iθ} of the spectral circle with t = sin²(θ/2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralPoint {
    pub theta: f64,
    pub lambda: Complex64,
    pub t: f64,
}

pub fn spectral_point(theta: f64) -> SpectralPoint {
    let half = (theta / 2.0).sin();
    SpectralPoint { theta, lambda: Complex64::from_polar(1.0, theta), t: half * half }
}

/// t = -¼ λ^{-1} (λ-1)² for arbitrary nonzero λ.
pub fn t_of_lambda(lambda: Complex64) -> Complex64 {
    let d = lambda - 1.0;
    -0.25 * d * d / lambda
}

/// The t-free part Q(z) = -w0/4z² - w1/4(z-1)² + r̂0/z + r̂1/(z-1) + p².
pub fn q_function(theta: &NumParams, z: Complex64) -> Result<Complex64> {
    if z == Complex64::zero() || z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole(format!("potential evaluated at z = {z}")));
    }
    let z1 = z - 1.0;
    Ok(-theta.w0 / (4.0 * z * z) - theta.w1 / (4.0 * z1 * z1) + theta.r_hat0 / z + theta.r_hat1 / z1
        + theta.p * theta.p)
}

/// Exact Q(z) at a rational point.
pub fn q_exact(theta: &TrinoidParams, z: &Rational) -> Result<Rational> {
    if z.is_zero() || *z == int(1) {
        return Err(Error::Pole(format!("potential evaluated at z = {}", fmt_rational(z))));
    }
    let z1 = z - int(1);
    let four = int(4);
    Ok(-&theta.w0 / (&four * z * z) - &theta.w1 / (&four * &z1 * &z1) + &theta.r_hat0 / z + &theta.r_hat1 / &z1
        + &theta.p * &theta.p)
}

/// ξ_T(z) = [[0, λ^{-1}], [λ t Q(z), 0]].
pub fn potential_matrix(theta: &NumParams, lambda: Complex64, z: Complex64) -> Result<Mat2> {
    if lambda == Complex64::zero() {
        return Err(Error::Domain("lambda must be nonzero".into()));
    }
    let q = q_function(theta, z)?;
    Ok(Mat2::new(Complex64::zero(), 1.0 / lambda, lambda * t_of_lambda(lambda) * q, Complex64::zero()))
}

pub const BASE_POINT: f64 = 2.0;
pub const LOOP_RADIUS: f64 = 0.25;
pub const MIN_SINGULAR_DISTANCE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, PartialOrd, Ord)]
pub enum LoopId {
    #[serde(rename = "gamma0")]
    Gamma0,
    #[serde(rename = "gamma1")]
    Gamma1,
    #[serde(rename = "big_circle")]
    BigCircle,
}

impl LoopId {
    pub const ALL: [LoopId; 3] = [LoopId::Gamma0, LoopId::Gamma1, LoopId::BigCircle];

    pub fn name(self) -> &'static str {
        match self {
            LoopId::Gamma0 => "gamma0",
            LoopId::Gamma1 => "gamma1",
            LoopId::BigCircle => "big_circle",
        }
    }

    /// Loops based at z = 2: γ1 reaches its circle along the real axis, γ0
    /// passes below z = 1. With these, M_big = M_γ1 · M_γ0.
    pub fn path(self) -> PathSpec {
        let base = Complex64::new(BASE_POINT, 0.0);
        match self {
            LoopId::Gamma1 => {
                let entry = Complex64::new(1.0 + LOOP_RADIUS, 0.0);
                PathSpec::Composite(vec![
                    PathSpec::segment(base, entry),
                    PathSpec::circle(Complex64::new(1.0, 0.0), LOOP_RADIUS, true, 0.0),
                    PathSpec::segment(entry, base),
                ])
            }
            LoopId::Gamma0 => {
                let entry = Complex64::new(0.0, -LOOP_RADIUS);
                PathSpec::Composite(vec![
                    PathSpec::segment(base, entry),
                    PathSpec::circle(Complex64::zero(), LOOP_RADIUS, true, -PI / 2.0),
                    PathSpec::segment(entry, base),
                ])
            }
            LoopId::BigCircle => PathSpec::circle(Complex64::zero(), BASE_POINT, true, 0.0),
        }
    }
}

fn check_clearance(path: &PathSpec) -> Result<()> {
    for s in [Complex64::zero(), Complex64::new(1.0, 0.0)] {
        let d = path.distance_to(s);
        if d < MIN_SINGULAR_DISTANCE {
            return Err(Error::Domain(format!("loop passes within {d:.3e} of the singularity {}", s.re)));
        }
    }
    if (path.start() - path.end()).norm() > 1e-12 {
        return Err(Error::Domain("loop is not closed".into()));
    }
    Ok(())
}

/// Monodromy of dΦ = Φ ξ_T around a closed loop, Φ(base) = Id.
pub fn loop_monodromy(theta: &NumParams, lambda: Complex64, path: &PathSpec, tol: f64) -> Result<Mat2> {
    check_clearance(path)?;
    let coeff = |z: Complex64| potential_matrix(theta, lambda, z).expect("path avoids the poles");
    Ok(integrate_transport(coeff, path, tol)?.matrix)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopReport {
    pub loop_id: LoopId,
    pub lambda: [f64; 2],
    pub t: [f64; 2],
    pub matrix: Mat2,
    pub det_residual: f64,
    pub trace_realness_residual: f64,
}

pub fn loop_report(theta: &NumParams, lambda: Complex64, id: LoopId, tol: f64) -> Result<LoopReport> {
    let m = loop_monodromy(theta, lambda, &id.path(), tol)?;
    let t = t_of_lambda(lambda);
    Ok(LoopReport {
        loop_id: id,
        lambda: [lambda.re, lambda.im],
        t: [t.re, t.im],
        matrix: m,
        det_residual: (m.det() - 1.0).norm(),
        trace_realness_residual: m.trace().im.abs(),
    })
}

/// z^{-1}, z^{-2}, z^{-3} coefficients of Q for |z| > 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentTail {
    #[serde(serialize_with = "ser_rational")]
    pub a_m1: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub a_m2: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub a_m3: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub fn laurent_tail(theta: &TrinoidParams) -> LaurentTail {
    let quarter = rat(1, 4);
    LaurentTail {
        a_m1: &theta.r_hat0 + &theta.r_hat1,
        a_m2: &theta.r_hat1 - (&theta.w0 + &theta.w1) * &quarter,
        a_m3: &theta.r_hat1 - &theta.w1 / int(2),
    }
}

/// Entries of M2 / (2πi).
pub fn m2_coefficients(tail: &LaurentTail) -> [[Rational; 2]; 2] {
    let (a1, a2, a3) = (&tail.a_m1, &tail.a_m2, &tail.a_m3);
    let q = rat(1, 4);
    let h = rat(1, 2);
    [
        [a2 * &q - a1 * &h, a2 - a1 - a3 * &q],
        [a1 * &q, a1 * &h - a2 * &q],
    ]
}

/// θ²-coefficient of the big-circle monodromy.
pub fn m2_closed(tail: &LaurentTail) -> Mat2 {
    let c = m2_coefficients(tail);
    let f = |r: &Rational| Complex64::new(0.0, 2.0 * PI * r.to_f64().unwrap_or(f64::NAN));
    Mat2::new(f(&c[0][0]), f(&c[0][1]), f(&c[1][0]), f(&c[1][1]))
}

pub const DEFAULT_DTHETA: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct M2Report {
    pub dtheta: f64,
    pub m0: Mat2,
    pub m1: Mat2,
    pub m2: Mat2,
    pub m2_closed: Mat2,
    /// Max-entry norms of M0 - Id, M1 and M2 - M2_closed.
    pub m0_error: f64,
    pub m1_error: f64,
    pub m2_error: f64,
}

struct Stencil {
    m0: Mat2,
    m1: Mat2,
    m2: Mat2,
}

fn stencil(theta: &NumParams, h: f64, tol: f64) -> Result<Stencil> {
    let path = LoopId::BigCircle.path();
    let m = |th: f64| loop_monodromy(theta, spectral_point(th).lambda, &path, tol);
    let (p1, n1, p2, n2, z) = (m(h)?, m(-h)?, m(2.0 * h)?, m(-2.0 * h)?, m(0.0)?);
    let c = |x: f64| Complex64::new(x, 0.0);
    let even1 = p1 + n1;
    let even2 = p2 + n2;
    Ok(Stencil {
        m0: (even1.scale(c(4.0)) - even2).scale(c(1.0 / 6.0)),
        m1: ((p1 - n1).scale(c(8.0)) - (p2 - n2)).scale(c(1.0 / (12.0 * h))),
        m2: (even1.scale(c(16.0)) - even2 - z.scale(c(30.0))).scale(c(1.0 / (24.0 * h * h))),
    })
}

/// Five-point central differences of θ ↦ M_big(e^{iθ}) at spacing dtheta
/// and dtheta/2, combined by one Richardson step, against the closed forms.
pub fn m2_check(theta: &TrinoidParams, dtheta: f64, tol: f64) -> Result<M2Report> {
    if !(dtheta > 0.0) {
        return Err(Error::Domain(format!("dtheta must be positive, got {dtheta}")));
    }
    let num = theta.to_num();
    let coarse = stencil(&num, dtheta, tol)?;
    let fine = stencil(&num, dtheta / 2.0, tol)?;
    let r = |f: Mat2, c: Mat2| (f.scale(16.0.into()) - c).scale((1.0 / 15.0).into());
    let m0 = r(fine.m0, coarse.m0);
    let m1 = r(fine.m1, coarse.m1);
    let m2 = r(fine.m2, coarse.m2);
    let closed = m2_closed(&laurent_tail(theta));
    Ok(M2Report {
        dtheta,
        m0,
        m1,
        m2,
        m2_closed: closed,
        m0_error: (m0 - Mat2::identity()).max_abs(),
        m1_error: m1.max_abs(),
        m2_error: (m2 - closed).max_abs(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalanceCheck {
    /// The end on the left of |w_i| ≤ |w_j| + |w_k|: "0", "1" or "inf".
    pub end: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightReport {
    #[serde(serialize_with = "ser_rational")]
    pub w0: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub w1: Rational,
    /// (w0+w1)² + 8r̂0(w1-2r̂1) - 8r̂1w0; w_inf = (π/8)√radicand.
    #[serde(serialize_with = "ser_rational")]
    pub radicand: Rational,
    /// None when the radicand is negative.
    pub w_inf: Option<f64>,
    /// c with w_inf = c·π, when the radicand is a rational square.
    #[serde(serialize_with = "ser_opt_rational")]
    pub w_inf_over_pi: Option<Rational>,
    pub weight_real: bool,
    /// radicand = 16(a_m2² - a_m1 a_m3), checked exactly.
    pub tail_form_agrees: bool,
    pub balancing: Vec<BalanceCheck>,
    pub balanced: bool,
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

pub fn weight_radicand(theta: &TrinoidParams) -> Rational {
    let s = &theta.w0 + &theta.w1;
    &s * &s + int(8) * &theta.r_hat0 * (&theta.w1 - int(2) * &theta.r_hat1) - int(8) * &theta.r_hat1 * &theta.w0
}

pub fn tail_radicand(tail: &LaurentTail) -> Rational {
    int(16) * (&tail.a_m2 * &tail.a_m2 - &tail.a_m1 * &tail.a_m3)
}

/// Comparison slack for the balancing inequalities.
const BALANCE_SLACK: f64 = 1e-12;

pub fn end_weights(theta: &TrinoidParams) -> WeightReport {
    let radicand = weight_radicand(theta);
    let tail_form_agrees = tail_radicand(&laurent_tail(theta)) == radicand;
    let weight_real = !radicand.is_negative();
    let w_inf = weight_real.then(|| PI / 8.0 * radicand.to_f64().unwrap_or(f64::NAN).sqrt());
    let w_inf_over_pi = if weight_real { rational_sqrt(&radicand).map(|s| s / int(8)) } else { None };
    let mut balancing = Vec::new();
    if let Some(wi) = w_inf {
        let w = [theta.w0.abs().to_f64().unwrap_or(f64::NAN), theta.w1.abs().to_f64().unwrap_or(f64::NAN), wi];
        for (i, end) in ["0", "1", "inf"].iter().enumerate() {
            let rhs = w[(i + 1) % 3] + w[(i + 2) % 3];
            balancing.push(BalanceCheck { end: end.to_string(), lhs: w[i], rhs, holds: w[i] <= rhs + BALANCE_SLACK });
        }
    }
    let balanced = !balancing.is_empty() && balancing.iter().all(|b| b.holds);
    WeightReport {
        w0: theta.w0.clone(),
        w1: theta.w1.clone(),
        radicand,
        w_inf,
        w_inf_over_pi,
        weight_real,
        tail_form_agrees,
        balancing,
        balanced,
    }
}

/// Both weight radicands as polynomials in (w0, w1, r̂0, r̂1); equal iff the
/// two weight formulas agree identically.
pub fn symbolic_radicands() -> (MultiPoly<4>, MultiPoly<4>) {
    let v = |i| MultiPoly::<4>::var(i);
    let c = |n: i64| MultiPoly::<4>::constant(int(n));
    let (w0, w1, r0, r1) = (v(0), v(1), v(2), v(3));
    let s = &w0 + &w1;
    let direct = &(&(&s * &s) + &(&(&c(8) * &r0) * &(&w1 - &(&c(2) * &r1)))) - &(&(&c(8) * &r1) * &w0);
    let quarter = MultiPoly::<4>::constant(rat(1, 4));
    let a1 = &r0 + &r1;
    let a2 = &r1 - &(&s * &quarter);
    let a3 = &r1 - &(&w1 * &MultiPoly::<4>::constant(rat(1, 2)));
    let tail = &c(16) * &(&(&a2 * &a2) - &(&a1 * &a3));
    (direct, tail)
}

pub fn weight_identity_holds() -> bool {
    let (a, b) = symbolic_radicands();
    a == b
}
