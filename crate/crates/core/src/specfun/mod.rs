//! Special functions: Bessel J and its zeros, Airy Ai, and K of imaginary
//! order.

mod airy;
mod bessel;
mod kbessel;

pub use airy::{airy_ai, AI0};
pub(crate) use airy::modulus_phase_series;
pub use bessel::{bessel_j, bessel_j_zero, bessel_j_zeros, MAX_ORDER};
pub(crate) use bessel::jn;
pub use kbessel::{
    beta_coefficients, bessel_k_imag_order_oracle, bessel_k_imag_order_oracle_scaled,
    bessel_k_imag_order_uniform, bessel_k_imag_order_uniform_scaled, oracle_scaled_with,
};
pub(crate) use kbessel::{airy_bracket, beta_ratio};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A transverse cavity mode: azimuthal order m, radial index n >= 1, and the
/// n-th positive zero xi of J_m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeIndex {
    pub m: i32,
    pub n: usize,
    pub xi: f64,
}

impl ModeIndex {
    pub fn new(m: i32, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("radial index n must be >= 1".into()));
        }
        Ok(Self { m, n, xi: bessel_j_zero(m, n)? })
    }
}
