//! Level shift of a uniformly accelerated atom on the cavity axis.
//!
//! The authoritative route is the exact principal-value representation over
//! Unruh modes, valid for every acceleration. The large-alpha double-integral
//! representation is kept as an independent check at moderate alpha.

mod lstot2;
mod unruh;

use std::f64::consts::PI;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inertial::{delta0, CavitySpec, Method, ShiftResult};
use crate::quadrature::QuadratureSpec;

/// Inverse acceleration alpha = omega0 / a. `f64::INFINITY` is the inertial
/// limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccelSpec {
    pub alpha: f64,
}

impl AccelSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        let a = Self { alpha };
        a.validate()?;
        Ok(a)
    }

    pub fn inertial() -> Self {
        Self { alpha: f64::INFINITY }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("alpha = {} must be positive", self.alpha)))
        }
    }
}

/// One point of the relative enhancement F = (Delta - Delta0)/Delta0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnhancementPoint {
    /// x - xi_01.
    pub epsilon: f64,
    pub alpha: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub delta: f64,
    pub delta0: f64,
}

/// The per-mode integrand U(w) - 2 Theta(w - chi)/sqrt(w^2 - chi^2).
///
/// With `scaled` the product cosh(pi nu) K^2_{i nu} is formed from the
/// e^{pi nu/2}-scaled K, through the uniform expansion once nu = alpha w
/// reaches 10 and the integral representation below. Without it the
/// unscaled integral representation is used throughout, which overflows for
/// nu beyond a few hundred.
pub fn noninertial_integrand(varpi: f64, alpha: f64, chi: f64, scaled: bool) -> Result<f64> {
    if !(varpi > 0.0 && alpha > 0.0 && chi > 0.0) || !(varpi * alpha * chi).is_finite() {
        return Err(Error::Domain(format!(
            "noninertial_integrand needs positive finite (w, alpha, chi); got ({varpi}, {alpha}, {chi})"
        )));
    }
    if varpi == chi {
        return Err(Error::Domain(format!("noninertial_integrand is singular at threshold w = chi = {chi}")));
    }
    let u = if scaled {
        unruh::unruh_density(varpi, alpha, chi)?
    } else {
        unruh::unruh_density_direct(varpi, alpha, chi)?
    };
    let t = if varpi > chi { 2.0 / ((varpi - chi) * (varpi + chi)).sqrt() } else { 0.0 };
    Ok(u - t)
}

/// (Delta - Delta0) / (g^2 omega0) from the principal-value Unruh-mode
/// representation, (1/(4 pi^2 x^2)) sum_mn w_mn D(xi_mn/x, alpha).
pub fn delta_minus_delta0(cavity: &CavitySpec, accel: &AccelSpec, spec: &QuadratureSpec) -> Result<ShiftResult> {
    spec.validate()?;
    accel.validate()?;
    let modes = cavity.modes()?;
    cavity.check_resonance(&modes)?;
    if accel.alpha.is_infinite() {
        let terms = modes.into_iter().map(|(m, _)| (m, 0.0)).collect();
        return Ok(ShiftResult::from_terms(terms, 0.0, Method::PvUnruh));
    }
    let x = cavity.detuning_x;
    let pre = 1.0 / (4.0 * PI * PI * x * x);
    let parts: Vec<Result<(f64, f64)>> = modes
        .par_iter()
        .map(|(mode, w)| {
            if *w == 0.0 {
                return Ok((0.0, 0.0));
            }
            let (d, e) = unruh::mode_difference(mode.xi / x, accel.alpha, spec)?;
            Ok((pre * w * d, pre * w * e))
        })
        .collect();
    let mut terms = Vec::with_capacity(modes.len());
    let mut err = 0.0;
    for ((mode, _), part) in modes.iter().zip(parts) {
        let (v, e) = part?;
        terms.push((*mode, v));
        err += e;
    }
    Ok(ShiftResult::from_terms(terms, err, Method::PvUnruh))
}

/// Delta / (g^2 omega0) = Delta0 + (Delta - Delta0).
pub fn delta_total(cavity: &CavitySpec, accel: &AccelSpec, spec: &QuadratureSpec) -> Result<ShiftResult> {
    let d0 = delta0(cavity)?;
    if accel.alpha.is_infinite() {
        accel.validate()?;
        return Ok(ShiftResult { method: Method::PvUnruh, ..d0 });
    }
    let diff = delta_minus_delta0(cavity, accel, spec)?;
    let terms = d0
        .per_mode_terms
        .iter()
        .zip(&diff.per_mode_terms)
        .map(|((m, a), (_, b))| (*m, a + b))
        .collect();
    Ok(ShiftResult {
        value: d0.value + diff.value,
        per_mode_terms: terms,
        err_estimate: diff.err_estimate,
        method: Method::PvUnruh,
    })
}

/// Delta / (g^2 omega0) from the large-alpha representation, which keeps the
/// term oscillating at frequency alpha and the Airy-factor term.
///
/// Meant for 1e2 <= alpha <= 1e4; outside that band a warning is logged and
/// the result is still returned.
pub fn delta_lstot2(cavity: &CavitySpec, accel: &AccelSpec, spec: &QuadratureSpec) -> Result<ShiftResult> {
    spec.validate()?;
    accel.validate()?;
    let alpha = accel.alpha;
    if !alpha.is_finite() {
        return Err(Error::Domain("delta_lstot2 needs finite alpha".into()));
    }
    if !(1e2..=1e4).contains(&alpha) {
        warn!("delta_lstot2: alpha = {alpha:e} outside the asymptotic band [1e2, 1e4]");
    }
    let modes = cavity.modes()?;
    cavity.check_resonance(&modes)?;
    let x = cavity.detuning_x;
    let parts: Vec<Result<(f64, f64)>> = modes
        .par_iter()
        .map(|(mode, w)| {
            if *w == 0.0 {
                return Ok((0.0, 0.0));
            }
            let (v, e) = lstot2::mode_shift(mode.xi / x, alpha, spec)?;
            let pre = w / (x * x);
            Ok((pre * v, pre * e))
        })
        .collect();
    let mut terms = Vec::with_capacity(modes.len());
    let mut err = 0.0;
    for ((mode, _), part) in modes.iter().zip(parts) {
        let (v, e) = part?;
        terms.push((*mode, v));
        err += e;
    }
    Ok(ShiftResult::from_terms(terms, err, Method::Lstot2))
}

/// F = (Delta - Delta0)/Delta0 with both from the same cavity and cutoff.
pub fn relative_enhancement(
    cavity: &CavitySpec,
    accel: &AccelSpec,
    spec: &QuadratureSpec,
) -> Result<EnhancementPoint> {
    let d0 = delta0(cavity)?.value;
    if d0.abs() < 1e-14 {
        return Err(Error::DivisionDegenerate { delta0: d0 });
    }
    let diff = delta_minus_delta0(cavity, accel, spec)?.value;
    Ok(EnhancementPoint {
        epsilon: cavity.detuning_x - crate::specfun::bessel_j_zero(0, 1)?,
        alpha: accel.alpha,
        f: diff / d0,
        delta: d0 + diff,
        delta0: d0,
    })
}

/// Per-mode D(chi, alpha), without the 1/(4 pi^2 x^2) prefactor or weight.
pub fn mode_difference(chi: f64, alpha: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    unruh::mode_difference(chi, alpha, spec)
}
