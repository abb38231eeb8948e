use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::airy::airy_ai;
use crate::error::{Error, Result};
use crate::quadrature::adaptive;

/// K_{i nu}(z) for real nu >= 0 and z > 0.
///
/// Evaluated from K_{i nu}(z) = Re int_0^inf exp(i nu t - z cosh t) dt with
/// the path lifted into the strip 0 < Im t < pi/2 so that the integrand is
/// not oscillatory with exponentially large cancellation.
pub fn bessel_k_imag_order_oracle(nu: f64, z: f64) -> Result<f64> {
    Ok(bessel_k_imag_order_oracle_scaled(nu, z)? * (-FRAC_PI_2 * nu).exp())
}

/// e^{pi nu / 2} K_{i nu}(z) from the same integral.
pub fn bessel_k_imag_order_oracle_scaled(nu: f64, z: f64) -> Result<f64> {
    oracle_scaled_with(nu, z, 1e-12)
}

/// Oracle with an explicit relative tolerance for refinement checks.
pub fn oracle_scaled_with(nu: f64, z: f64, rel_tol: f64) -> Result<f64> {
    if !(z > 0.0) || !(nu >= 0.0) || !nu.is_finite() || !z.is_finite() {
        return Err(Error::Domain(format!("K_(i nu)(z) oracle needs nu >= 0, z > 0; got ({nu}, {z})")));
    }
    let shift = FRAC_PI_2 * nu;
    // log of the scaled integrand at t = p + i q
    let expo = |p: f64, q: f64| {
        Complex64::new(
            -nu * q - z * p.cosh() * q.cos() + shift,
            nu * p - z * p.sinh() * q.sin(),
        )
    };

    let (top, a, drop, peak) = if nu >= z || (z * z - nu * nu).sqrt() < 1.0 {
        let top = if nu >= z { FRAC_PI_2 } else { (nu / z).asin() };
        let a = if nu > z { (nu / z).acosh() } else { 0.0 };
        (top, a, FRAC_PI_4, expo(0.0, top).re)
    } else {
        let top = (nu / z).asin();
        (top, 0.0, 0.0, expo(0.0, top).re)
    };
    let abs_tol = 1e-15 * peak.exp();
    let mut total = Complex64::new(0.0, 0.0);
    let max_seg = 20_000;

    if a > 0.0 {
        let cycles = (nu * a - z * a.sinh()).abs() / (2.0 * PI);
        let pieces = (cycles.ceil() as usize).clamp(1, 5000);
        let pts: Vec<f64> = (0..=pieces).map(|k| a * k as f64 / pieces as f64).collect();
        let (v, _) = adaptive(|s| expo(s, top).exp(), &pts, rel_tol, abs_tol, max_seg)?;
        total += v;
    }
    if drop > 0.0 {
        let dt = Complex64::new(1.0, -1.0);
        let (v, _) = adaptive(|u| expo(a + u, top - u).exp() * dt, &[0.0, drop], rel_tol, abs_tol, max_seg)?;
        total += v;
    }
    let q = top - drop;
    let p0 = a + drop;
    let c = z * q.cos();
    let p_end = (p0.cosh() + 60.0 / c).acosh();
    let cycles = (nu * (p_end - p0) - z * q.sin() * (p_end.sinh() - p0.sinh())).abs() / (2.0 * PI);
    let pieces = (cycles.ceil() as usize).clamp(4, 5000);
    let pts: Vec<f64> = (0..=pieces)
        .map(|k| p0 + (p_end - p0) * k as f64 / pieces as f64)
        .collect();
    let (v, _) = adaptive(|p| expo(p, q).exp(), &pts, rel_tol, abs_tol, max_seg)?;
    total += v;
    Ok(total.re)
}

/// Turning-point coefficients (beta_less, beta_greater) of the uniform
/// expansion. beta_less is defined for 0 < x <= 1 and beta_greater for x >= 1.
pub fn beta_coefficients(x: f64) -> Result<(Option<f64>, Option<f64>)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("beta_coefficients: x = {x} must be positive")));
    }
    if x == 1.0 {
        return Ok((Some(0.0), Some(0.0)));
    }
    let s2 = (1.0 - x) * (1.0 + x);
    let beta = beta_ratio(s2) * s2.abs().powf(1.5);
    Ok(if x < 1.0 { (Some(beta), None) } else { (None, Some(beta)) })
}

/// beta / |1 - x^2|^{3/2} as a function of s2 = 1 - x^2 (positive below the
/// turning point). Finite at s2 = 0, where it equals 1/2.
pub(crate) fn beta_ratio(s2: f64) -> f64 {
    let s = s2.abs().sqrt();
    if s < 0.2 {
        let sign = if s2 >= 0.0 { 1.0 } else { -1.0 };
        let mut sum = 0.0;
        let mut p = 1.0;
        for k in 0..24 {
            sum += p / (2 * k + 3) as f64;
            p *= sign * s2.abs();
        }
        1.5 * sum
    } else if s2 > 0.0 {
        let x = (1.0 - s2).max(0.0).sqrt();
        // sech^{-1} x = ln((1 + s)/x); written with s to stay accurate as x -> 0
        let asech = if x > 0.0 { ((1.0 + s) / x).ln() } else { f64::INFINITY };
        1.5 * (asech - s) / (s * s * s)
    } else {
        1.5 * (s - s.atan()) / (s * s * s)
    }
}

/// The bracketed Airy factor of the uniform expansion, written in terms of
/// s2 = 1 - x^2: nu^{1/6} (beta/|s2|^{3/2})^{1/6} Ai(-+(beta nu)^{2/3}).
pub(crate) fn airy_bracket(nu: f64, s2: f64) -> f64 {
    let r = beta_ratio(s2);
    let beta = r * s2.abs().powf(1.5);
    let arg = (beta * nu).powf(2.0 / 3.0);
    let ai = if s2 > 0.0 { airy_ai(-arg) } else { airy_ai(arg) };
    nu.powf(1.0 / 6.0) * r.powf(1.0 / 6.0) * ai
}

/// e^{pi nu/2} K_{i nu}(x nu) from the leading uniform Airy-type expansion.
///
/// The turning-point value uses the limit of the outer branches,
/// 2^{-1/6} nu^{1/6} Ai(0).
pub fn bessel_k_imag_order_uniform_scaled(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("uniform K expansion needs x > 0, got {x}")));
    }
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("uniform K expansion needs nu > 0, got {nu}")));
    }
    let s2 = (1.0 - x) * (1.0 + x);
    Ok(PI * std::f64::consts::SQRT_2 / nu.sqrt() * airy_bracket(nu, s2))
}

/// K_{i nu}(x nu) from the leading uniform Airy-type expansion.
pub fn bessel_k_imag_order_uniform(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_imag_order_uniform_scaled(nu, x)? * (-FRAC_PI_2 * nu).exp())
}
