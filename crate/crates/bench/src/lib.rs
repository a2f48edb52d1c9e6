//! Shared fixtures for the criterion benches.

use trinoid::che::TrinoidParams;

/// The reference parameter set used across benches.
pub fn theta_star() -> TrinoidParams {
    TrinoidParams::parse("1/2,1/2,-1/8,1/8,1/8").expect("valid parameters")
}
