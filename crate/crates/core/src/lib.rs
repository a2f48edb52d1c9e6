//! Unitarisability certificates and monodromy computations for the
//! confluent Heun equation attached to CMC trinoid potentials.

pub mod certifier;
pub mod che;
pub mod connection;
pub mod error;
pub mod exactalg;
pub mod monodromy;
pub mod numerics;
pub mod su2geom;

pub use error::{Error, Result};
