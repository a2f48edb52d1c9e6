//! Floating-point foundations: scalar traits, log-gamma, 2×2 matrices and
//! path transport.

pub mod gamma;
pub mod mat2;
pub mod real;
pub mod transport;

pub use gamma::{gamma, gamma_ratio, log_gamma};
pub use mat2::Mat2;
pub use real::{Big256, BigFloat, Field, Real, Ring};
pub use transport::{integrate_transport, PathSpec, TransportResult};

/// Complex scalar used throughout the numerical pipeline (53-bit).
pub type ComplexScalar = num_complex::Complex64;
