//! Radiative level shifts of a two-level atom coupled to a massless scalar
//! field inside a cylindrical cavity, for inertial and uniformly accelerated
//! trajectories.
//!
//! All shifts are dimensionless, in units of `g^2 * omega0`. The detuning
//! parameter is `x = R * omega0` and the inverse acceleration is
//! `alpha = omega0 / a`.

pub mod error;
pub mod inertial;
pub mod quadrature;
pub mod rindler;
pub mod specfun;
pub mod sweep;

pub use error::{Error, Result};
pub use inertial::{delta0, delta0_pv_oracle, inertial_term, CavitySpec, Method, ShiftResult};
pub use quadrature::QuadratureSpec;
pub use rindler::{
    delta_lstot2, delta_minus_delta0, delta_total, noninertial_integrand, relative_enhancement, AccelSpec,
    EnhancementPoint,
};
pub use specfun::ModeIndex;
