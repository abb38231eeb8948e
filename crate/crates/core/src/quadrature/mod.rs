//! Adaptive quadrature, principal values and the oscillatory double integral.

mod gk;
mod oscillatory;

pub use gk::{adaptive, Scalar};
pub use oscillatory::{double_integrand, inner_integral, oscillatory_double_integral};
pub(crate) use oscillatory::{oscillatory_double_integral_weighted, path_margin};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical controls shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Half-width of the region around a pole evaluated by symmetric pairing.
    pub pv_window: f64,
    /// Frequency beyond which semi-infinite ranges are handed to the mapped
    /// tail rule.
    pub upper_cutoff: f64,
    pub max_subdivisions: usize,
    pub osc_panels_per_period: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            pv_window: 1e-3,
            upper_cutoff: 50.0,
            max_subdivisions: 10_000,
            osc_panels_per_period: 8,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.pv_window > 0.0
            && self.pv_window < 0.5
            && self.upper_cutoff > 0.0
            && self.max_subdivisions > 0
            && self.osc_panels_per_period > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid quadrature spec {self:?}")))
        }
    }
}

/// Integrates `f` over [a, b].
///
/// The interval is mapped through x = a + (b - a) u^2 (3 - 2u), which removes
/// integrable algebraic singularities at either endpoint.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    if !(a < b) {
        return Err(Error::Domain(format!("integrate: need a < b, got [{a}, {b}]")));
    }
    integrate_smoothed(f, a, b, spec)
}

pub(crate) fn integrate_smoothed<T: Scalar>(
    f: impl Fn(f64) -> T,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(T, f64)> {
    let w = b - a;
    adaptive(
        |u| {
            let x = a + w * u * u * (3.0 - 2.0 * u);
            f(x) * (6.0 * w * u * (1.0 - u))
        },
        &[0.0, 0.5, 1.0],
        spec.rel_tol,
        spec.abs_tol,
        spec.max_subdivisions,
    )
}

/// Integrates over [a, inf) with x = a + scale * u / (1 - u).
pub(crate) fn integrate_to_infinity<T: Scalar>(
    f: impl Fn(f64) -> T,
    a: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<(T, f64)> {
    adaptive(
        |u| {
            let v = 1.0 - u;
            f(a + scale * u / v) * (scale / (v * v))
        },
        &[0.0, 0.5, 0.9, 1.0],
        spec.rel_tol,
        spec.abs_tol,
        spec.max_subdivisions,
    )
}

/// Principal value of the integral of f(x) / (x - pole) over [a, b].
///
/// Within `pv_window` of the pole the integrand is folded,
/// [f(pole + t) - f(pole - t)] / t, which is regular at t = 0.
pub fn pv_integral(f: impl Fn(f64) -> f64, pole: f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(a < pole && pole < b) {
        return Err(Error::Domain(format!("pv_integral: pole {pole} outside ({a}, {b})")));
    }
    Ok(pv_parts(&f, pole, a, b, spec.pv_window, spec)?.0)
}

pub(crate) fn pv_parts(
    f: &impl Fn(f64) -> f64,
    pole: f64,
    a: f64,
    b: f64,
    window: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let h = window.min(pole - a).min(b - pole);
    let (mut value, mut err) = adaptive(
        |t| (f(pole + t) - f(pole - t)) / t,
        &[0.0, h],
        spec.rel_tol,
        spec.abs_tol,
        spec.max_subdivisions,
    )?;
    let g = |x: f64| f(x) / (x - pole);
    if pole - h > a {
        let (v, e) = integrate_smoothed(g, a, pole - h, spec)?;
        value += v;
        err += e;
    }
    if pole + h < b {
        let (v, e) = integrate_smoothed(g, pole + h, b, spec)?;
        value += v;
        err += e;
    }
    Ok((value, err))
}
