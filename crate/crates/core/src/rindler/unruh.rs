//! Per-mode principal value of the Unruh-mode integrand,
//! D(chi, alpha) = P.V. int_0^inf [U(w) - 2 Theta(w - chi)/sqrt(w^2 - chi^2)] k(w) dw
//! with U(w) = (4 alpha/pi) cosh(pi nu) K^2_{i nu}(chi alpha), nu = alpha w,
//! and k(w) = 1/(w+1) - 1/(w-1).
//!
//! The range is split where the Airy argument of the uniform expansion
//! reaches Z_OSC above threshold. Below that point U is integrated directly.
//! Beyond it U is written with the Airy modulus and phase as a smooth part
//! plus Re[amp e^{i Theta}]; the smooth part is integrated on the real axis
//! and the oscillatory part along a vertical path into the lower half plane,
//! where it decays exponentially. The threshold term has a closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inertial::threshold_pv_exact;
use crate::quadrature::{adaptive, integrate_to_infinity, QuadratureSpec};
use crate::specfun::{airy_bracket, beta_ratio, bessel_k_imag_order_oracle, bessel_k_imag_order_oracle_scaled, modulus_phase_series};

/// nu = alpha * w below which K is taken from the integral representation.
pub(crate) const NU_SWITCH: f64 = 10.0;
/// Airy argument beyond which the modulus/phase split is used.
const Z_OSC: f64 = 10.0;
/// Airy argument below threshold past which U is negligible (Ai^2 < e^-166).
const Z_LOW: f64 = 25.0;

/// U(w) in prefactor-cancelled form: the e^{pi nu/2}-scaled K is squared, so
/// cosh(pi nu) never appears.
pub(crate) fn unruh_density(varpi: f64, alpha: f64, chi: f64) -> Result<f64> {
    let nu = alpha * varpi;
    let damp = 1.0 + (-2.0 * PI * nu).exp();
    if nu >= NU_SWITCH {
        let s2 = (varpi - chi) * (varpi + chi) / (varpi * varpi);
        let b = airy_bracket(nu, s2);
        Ok(4.0 * PI * damp * b * b / varpi)
    } else {
        let ks = bessel_k_imag_order_oracle_scaled(nu, chi * alpha)?;
        Ok(2.0 * alpha / PI * damp * ks * ks)
    }
}

/// U(w) from the unscaled oracle, cosh(pi nu) K^2. Overflows past nu ~ 450.
pub(crate) fn unruh_density_direct(varpi: f64, alpha: f64, chi: f64) -> Result<f64> {
    let nu = alpha * varpi;
    let k = bessel_k_imag_order_oracle(nu, chi * alpha)?;
    Ok(4.0 * alpha / PI * (PI * nu).cosh() * k * k)
}

fn kernel(w: f64) -> f64 {
    1.0 / (w + 1.0) - 1.0 / (w - 1.0)
}

/// beta * nu = (3/2) alpha (w arcosh(w/chi) - sqrt(w^2 - chi^2)) above
/// threshold, its analogue below; both positive.
fn zeta(w: f64, alpha: f64, chi: f64) -> f64 {
    let s2 = (w - chi) * (w + chi) / (w * w);
    alpha * w * beta_ratio(s2) * s2.abs().powf(1.5)
}

/// Analytic continuation of zeta off the real axis, for Re w > chi.
fn zeta_c(w: Complex64, alpha: f64, chi: f64) -> Complex64 {
    let s2 = (w - chi) * (w + chi) / (w * w);
    if s2.norm() < 0.04 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for k in 0..24 {
            sum += p / (2 * k + 3) as f64;
            p *= s2;
        }
        alpha * w * 1.5 * sum * s2 * s2.sqrt()
    } else {
        let z = w / chi;
        let root = (w - chi).sqrt() * (w + chi).sqrt();
        let acosh = (z + (z - 1.0).sqrt() * (z + 1.0).sqrt()).ln();
        1.5 * alpha * (w * acosh - root)
    }
}

/// Root of zeta(w) = target on the side of the threshold given by `above`.
fn solve_zeta(target: f64, alpha: f64, chi: f64, above: bool) -> f64 {
    let (mut lo, mut hi) = if above {
        let mut hi = 2.0 * chi;
        while zeta(hi, alpha, chi) < target {
            hi *= 2.0;
        }
        (chi, hi)
    } else {
        (0.0, chi)
    };
    // zeta increases away from chi on both sides
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let far = zeta(mid, alpha, chi) > target;
        if far == above {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// P.V. int_a^b n(w)/(w - pole) dw with symmetric pairing over a half-width
/// of at most `h_max` and the given interior breakpoints.
fn pv_breaks(
    n: &impl Fn(f64) -> f64,
    pole: f64,
    a: f64,
    b: f64,
    h_max: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let pts = |lo: f64, hi: f64| {
        let mut v = vec![lo];
        v.extend(breaks.iter().copied().filter(|&p| p > lo && p < hi));
        v.push(hi);
        v
    };
    let g = |w: f64| n(w) / (w - pole);
    let run = |f: &dyn Fn(f64) -> f64, p: &[f64]| {
        adaptive(f, p, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    };
    if !(pole > a && pole < b) {
        return run(&g, &pts(a, b));
    }
    let h = h_max.min(pole - a).min(b - pole);
    let mut inner = vec![0.0];
    let mut d: Vec<f64> = breaks.iter().map(|p| (p - pole).abs()).filter(|&t| t > 0.0 && t < h).collect();
    d.sort_by(f64::total_cmp);
    inner.extend(d);
    inner.push(h);
    let (mut value, mut err) = run(&|t: f64| (n(pole + t) - n(pole - t)) / t, &inner)?;
    for (lo, hi) in [(a, pole - h), (pole + h, b)] {
        if hi > lo {
            let (v, e) = run(&g, &pts(lo, hi))?;
            value += v;
            err += e;
        }
    }
    Ok((value, err))
}

/// D(chi, alpha) and an error estimate.
pub(crate) fn mode_difference(chi: f64, alpha: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    if (chi - 1.0).abs() < 1e-12 {
        return Err(Error::DegenerateThreshold { chi });
    }
    let delta = chi * 2f64.powf(-1.0 / 3.0) * (alpha * chi).powf(-2.0 / 3.0);

    let mut w_osc = solve_zeta(Z_OSC.powf(1.5), alpha, chi, true).max(NU_SWITCH / alpha * (1.0 + 1e-9));
    if chi < 1.0 && (1.0 - w_osc).abs() < 0.5 * (w_osc - chi) {
        w_osc = 1.0 + 0.5 * (w_osc - chi);
    }
    let w_low = if 1.5 * alpha * chi > Z_LOW.powf(1.5) {
        solve_zeta(Z_LOW.powf(1.5), alpha, chi, false)
    } else {
        0.0
    };

    // Direct region [w_low, w_osc]: n(w) = U(w) k(w) (w - 1) = -2U/(w + 1).
    let mut breaks = vec![NU_SWITCH / alpha];
    for k in [-8.0, -3.0, 0.0, 3.0] {
        breaks.push(chi + k * delta);
    }
    breaks.sort_by(f64::total_cmp);
    let failed = std::cell::Cell::new(None);
    let n_direct = |w: f64| match unruh_density(w, alpha, chi) {
        Ok(u) => -2.0 * u / (w + 1.0),
        Err(e) => {
            failed.set(Some(e));
            0.0
        }
    };
    let (a_val, a_err) = pv_breaks(&n_direct, 1.0, w_low, w_osc, spec.pv_window, &breaks, spec)?;
    if let Some(e) = failed.take() {
        return Err(e);
    }

    // Smooth part beyond w_osc: (2/sqrt(w^2 - chi^2)) P (1 + e^{-2 pi nu}).
    let smooth = |w: f64| {
        let z = zeta(w, alpha, chi);
        let (p, _) = modulus_phase_series(1.0 / (z * z));
        let root = ((w - chi) * (w + chi)).sqrt();
        2.0 * p * (1.0 + (-2.0 * PI * alpha * w).exp()) / root
    };
    let n_smooth = |w: f64| -2.0 * smooth(w) / (w + 1.0);
    let cut = spec.upper_cutoff.max(2.0 * w_osc.max(1.0));
    let mut sb = Vec::new();
    let mut step = w_osc - chi;
    while w_osc + step < cut {
        sb.push(w_osc + step);
        step *= 4.0;
    }
    let (bs_val, bs_err) = pv_breaks(&n_smooth, 1.0, w_osc, cut, spec.pv_window, &sb, spec)?;
    let (bt_val, bt_err) = integrate_to_infinity(|w| smooth(w) * kernel(w), cut, cut, spec)?;

    // Oscillatory part beyond w_osc, Re int amp e^{i Theta} k, deformed to
    // w = w_osc - i t.
    let osc = |w: Complex64| {
        let z = zeta_c(w, alpha, chi);
        let (p, t) = modulus_phase_series(Complex64::new(1.0, 0.0) / (z * z));
        let theta = PI / 2.0 - 4.0 / 3.0 * z * t;
        let root = (w - chi).sqrt() * (w + chi).sqrt();
        let k = 1.0 / (w + 1.0) - 1.0 / (w - 1.0);
        2.0 * p / root * (Complex64::i() * theta).exp() * k
    };
    let rate = 2.0 * alpha * (w_osc / chi).acosh();
    let scale = (1.0 / rate).min((w_osc - 1.0).abs());
    let (path, p_err) = integrate_to_infinity(|t| osc(Complex64::new(w_osc, -t)), 0.0, scale, spec)?;
    let mut bo_val = path.im;
    if w_osc < 1.0 {
        let z = zeta(1.0, alpha, chi);
        let (p, t) = modulus_phase_series(1.0 / (z * z));
        let theta = PI / 2.0 - 4.0 / 3.0 * z * t;
        let amp = 2.0 * p / ((1.0 - chi) * (1.0 + chi)).sqrt();
        bo_val -= PI * amp * theta.sin();
    }

    let jt = 2.0 * threshold_pv_exact(chi);
    let value = a_val + bs_val + bt_val + bo_val - jt;
    Ok((value, a_err + bs_err + bt_err + p_err))
}
