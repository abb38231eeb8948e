//! Level shift of an inertial atom, Delta_0, in closed form and as a
//! principal-value integral over the mode frequency.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_to_infinity, pv_parts, QuadratureSpec};
use crate::specfun::{bessel_j_zeros, jn, ModeIndex};

/// Cavity configuration in dimensionless form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavitySpec {
    /// x = R * omega0.
    pub detuning_x: f64,
    /// rho0 / R, in [0, 1).
    pub rho_frac: f64,
    /// Azimuthal cutoff; only m = 0 contributes on the axis.
    pub m_max: u32,
    /// Radial cutoff.
    pub n_max: usize,
}

impl CavitySpec {
    pub const DEFAULT_N_MAX: usize = 128;

    /// On-axis cavity with the given detuning and radial cutoff.
    pub fn on_axis(detuning_x: f64, n_max: usize) -> Self {
        Self { detuning_x, rho_frac: 0.0, m_max: 0, n_max }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.detuning_x > 0.0) || !self.detuning_x.is_finite() {
            return Err(Error::Domain(format!("detuning x = {} must be positive", self.detuning_x)));
        }
        if !(0.0..1.0).contains(&self.rho_frac) {
            return Err(Error::Domain(format!("rho_frac = {} must lie in [0, 1)", self.rho_frac)));
        }
        if self.n_max == 0 {
            return Err(Error::Domain("n_max must be >= 1".into()));
        }
        if self.m_max as i32 > crate::specfun::MAX_ORDER {
            return Err(Error::Domain(format!("m_max = {} too large", self.m_max)));
        }
        Ok(())
    }

    /// Included modes with their weights J_m^2(xi rho)/J_{|m|+1}^2(xi), in
    /// ascending n, then m.
    pub fn modes(&self) -> Result<Vec<(ModeIndex, f64)>> {
        self.validate()?;
        let m_max = if self.rho_frac == 0.0 { 0 } else { self.m_max as i32 };
        let mut zeros = Vec::new();
        for m in 0..=m_max {
            zeros.push(bessel_j_zeros(m, self.n_max)?);
        }
        let mut out = Vec::with_capacity(self.n_max * (2 * m_max as usize + 1));
        for n in 1..=self.n_max {
            for m in -m_max..=m_max {
                let xi = zeros[m.unsigned_abs() as usize][n - 1];
                let num = jn(m.unsigned_abs(), xi * self.rho_frac);
                let den = jn(m.unsigned_abs() + 1, xi);
                out.push((ModeIndex { m, n, xi }, num * num / (den * den)));
            }
        }
        Ok(out)
    }

    pub(crate) fn check_resonance(&self, modes: &[(ModeIndex, f64)]) -> Result<()> {
        for (mode, _) in modes {
            if (self.detuning_x - mode.xi).abs() < 1e-12 {
                return Err(Error::Resonance { x: self.detuning_x, xi: mode.xi });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    PvQuadrature,
    Lstot2,
    PvUnruh,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::PvQuadrature => "pv_quadrature",
            Method::Lstot2 => "lstot2",
            Method::PvUnruh => "pv_unruh",
        }
    }
}

/// A shift in units of g^2 omega0 with its per-mode breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftResult {
    pub value: f64,
    pub per_mode_terms: Vec<(ModeIndex, f64)>,
    pub err_estimate: f64,
    pub method: Method,
}

impl ShiftResult {
    pub(crate) fn from_terms(per_mode_terms: Vec<(ModeIndex, f64)>, err_estimate: f64, method: Method) -> Self {
        let value = per_mode_terms.iter().map(|(_, v)| v).sum();
        Self { value, per_mode_terms, err_estimate, method }
    }
}

/// The bracket t(r) of the closed form, r = R omega0 / xi.
///
/// For r < 1 (mode above the atomic gap) t = (arctan(sqrt(1-r^2)/r) - pi/2)/sqrt(1-r^2),
/// for r > 1 t = arcosh(r)/sqrt(r^2-1), and t(1) = 1, the limit from above.
pub fn inertial_term(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("inertial_term: r = {r} must be positive")));
    }
    let d = (r - 1.0) * (r + 1.0);
    if d == 0.0 {
        return Ok(1.0);
    }
    if r > 1.0 {
        // arcosh(r) = asinh(sqrt(r^2 - 1))
        let s = d.sqrt();
        Ok(s.asinh() / s)
    } else {
        let s = (-d).sqrt();
        Ok(-(r / s).atan() / s)
    }
}

/// Delta_0 / (g^2 omega0) from the closed form.
pub fn delta0(cavity: &CavitySpec) -> Result<ShiftResult> {
    let modes = cavity.modes()?;
    cavity.check_resonance(&modes)?;
    let x = cavity.detuning_x;
    let pre = 1.0 / (PI * PI * x);
    let mut terms = Vec::with_capacity(modes.len());
    for (mode, w) in modes {
        let t = if w == 0.0 { 0.0 } else { pre * w / mode.xi * inertial_term(x / mode.xi)? };
        terms.push((mode, t));
    }
    Ok(ShiftResult::from_terms(terms, 0.0, Method::ClosedForm))
}

/// P.V. int_chi^inf dw [1/(w+1) - 1/(w-1)] / sqrt(w^2 - chi^2), evaluated
/// numerically after w = chi cosh s.
pub fn threshold_pv_numeric(chi: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    if (chi - 1.0).abs() < 1e-9 {
        return Err(Error::DegenerateThreshold { chi });
    }
    let s_cut = (1.0 + spec.upper_cutoff / chi).acosh();
    let plus = |s: f64| 1.0 / (chi * s.cosh() + 1.0);
    let (mut value, mut err) = (0.0, 0.0);
    if chi > 1.0 {
        let f = |s: f64| plus(s) - 1.0 / (chi * s.cosh() - 1.0);
        let (v, e) = crate::quadrature::integrate_smoothed(f, 0.0, s_cut, spec)?;
        let (vt, et) = integrate_to_infinity(f, s_cut, 1.0, spec)?;
        value += v + vt;
        err += e + et;
    } else {
        let s0 = (1.0 / chi).acosh();
        let end = s_cut.max(2.0 * s0 + 1.0);
        let (vp, ep) = crate::quadrature::integrate_smoothed(plus, 0.0, end, spec)?;
        // -1/(chi cosh s - 1) = g(s)/(s - s0) with g regular at s0;
        // chi (cosh s - cosh s0) = 2 chi sinh((s+s0)/2) sinh((s-s0)/2)
        let g = |s: f64| {
            let d = 0.5 * (s - s0);
            if d == 0.0 {
                return -1.0 / (chi * s0.sinh());
            }
            -d / (chi * (0.5 * (s + s0)).sinh() * d.sinh())
        };
        let (vm, em) = pv_parts(&g, s0, 0.0, end, spec.pv_window, spec)?;
        let tail = |s: f64| plus(s) - 1.0 / (chi * s.cosh() - 1.0);
        let (vt, et) = integrate_to_infinity(tail, end, 1.0, spec)?;
        value += vp + vm + vt;
        err += ep + em + et;
    }
    Ok((value, err))
}

/// The same principal value in closed form.
pub(crate) fn threshold_pv_exact(chi: f64) -> f64 {
    let d = (chi - 1.0) * (chi + 1.0);
    if d > 0.0 {
        let s = d.sqrt();
        -2.0 * (1.0 / chi).asin() / s
    } else {
        let c = (-d).sqrt();
        2.0 * c.atanh() / c
    }
}

/// Delta_0 / (g^2 omega0) from the principal-value frequency integral
/// (1/(2 pi^2 x^2)) sum_mn w_mn P.V. int_chi^inf dw k(w) / sqrt(w^2 - chi^2),
/// k(w) = 1/(w+1) - 1/(w-1), chi = xi_mn / x.
pub fn delta0_pv_oracle(cavity: &CavitySpec, spec: &QuadratureSpec) -> Result<ShiftResult> {
    spec.validate()?;
    let modes = cavity.modes()?;
    cavity.check_resonance(&modes)?;
    let x = cavity.detuning_x;
    let pre = 1.0 / (2.0 * PI * PI * x * x);
    let mut terms = Vec::with_capacity(modes.len());
    let mut err = 0.0;
    for (mode, w) in modes {
        if w == 0.0 {
            terms.push((mode, 0.0));
            continue;
        }
        let (v, e) = threshold_pv_numeric(mode.xi / x, spec)?;
        terms.push((mode, pre * w * v));
        err += pre * w * e;
    }
    Ok(ShiftResult::from_terms(terms, err, Method::PvQuadrature))
}

/// Radial cutoff implied by the electron mass scale, xi_{0 n}/R = m_e c / hbar:
/// with x = R omega0 and mass_ratio = m_e c^2 / (hbar omega0) this is the n
/// whose zero is nearest x * mass_ratio (McMahon: xi_{0n} ~ (n - 1/4) pi).
pub fn physical_n_max(detuning_x: f64, mass_ratio: f64) -> f64 {
    (detuning_x * mass_ratio / PI + 0.25).round().max(1.0)
}

/// Contribution of the on-axis modes n_from < n <= n_to to Delta_0 / (g^2 omega0),
/// summed asymptotically for cutoffs far beyond what can be enumerated.
///
/// For xi_0n >> x the mode term is -(1/(2 pi xi_0n)) (1 + (2/3) x^2/xi_0n^2)
/// with xi_0n ~ (n - 1/4) pi; the midpoint rule turns the sum into
/// integrals over n - 1/4 from n_from + 1/4 to n_to + 1/4.
pub fn delta0_tail(detuning_x: f64, n_from: usize, n_to: f64) -> Result<f64> {
    if !(detuning_x > 0.0) || !detuning_x.is_finite() {
        return Err(Error::Domain(format!("detuning x = {detuning_x} must be positive")));
    }
    if !(n_to >= n_from as f64) {
        return Err(Error::Domain(format!("tail cutoff {n_to} below the explicit cutoff {n_from}")));
    }
    let (a, b) = (n_from as f64 + 0.25, n_to + 0.25);
    let lead = (b / a).ln() / (2.0 * PI * PI);
    let curv = detuning_x * detuning_x / (3.0 * PI.powi(4)) * (0.5 / (a * a) - 0.5 / (b * b));
    Ok(-(lead + curv))
}

/// m_e c^2 / (hbar omega0) for omega0 in rad/s.
pub fn electron_mass_ratio(omega0: f64) -> f64 {
    // m_e c^2 / hbar in rad/s
    const ELECTRON_FREQUENCY: f64 = 7.763_440_711_05e20;
    ELECTRON_FREQUENCY / omega0
}
