//! The oscillatory double integral of the large-alpha representation,
//!
//!   I(alpha, chi) = int_0^inf dw/w int_w^1 dk/k sin(alpha ln(k/w))
//!                   cos((chi alpha/2)(w - 1/w - k + 1/k)).
//!
//! With w = e^p, k = e^q, d = q - p and s = (p+q)/2 the integrand depends on
//! s only through cosh s, and the two triangles p < 0 and p > 0 fold onto
//!
//!   I = 2 int_0^inf sin(alpha d) H(d) dd,
//!   H(d) = int_{d/2}^inf cos(C cosh s) ds,   C = 2 chi alpha sinh(d/2).
//!
//! H is evaluated from H = Re[i e^{iW} h], W = chi alpha sinh d, with
//! h = int_0^inf e^{-t} ((W - C + it)(W + C + it))^{-1/2} dt, either by
//! quadrature or, once W - C is large, by Watson's lemma. The d-integral runs
//! on the real axis with panels tied to the local oscillation period and
//! then up a vertical path d_c + iy, where e^{iW} decays.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::gk::kronrod_fixed;
use super::{adaptive, QuadratureSpec};
use crate::error::{Error, Result};

/// |W - C| beyond which h comes from its asymptotic series.
const WATSON_MIN: f64 = 40.0;
/// The vertical leg runs until the integrand has fallen by e^-(2 * this).
const VERTICAL_DECAYS: f64 = 25.0;

type C64 = Complex64;

/// Integrand of I in the original variables.
pub fn double_integrand(alpha: f64, chi: f64, varpi: f64, kappa: f64) -> f64 {
    (alpha * (kappa / varpi).ln()).sin()
        * (0.5 * chi * alpha * (varpi - 1.0 / varpi - kappa + 1.0 / kappa)).cos()
        / (varpi * kappa)
}

/// Breakpoints on [a, b] spaced by 1/per_period of the local period
/// 2 pi / rate(x).
fn panels(a: f64, b: f64, rate: impl Fn(f64) -> f64, per_period: usize) -> Vec<f64> {
    let mut pts = vec![a];
    let mut x = a;
    loop {
        x += 2.0 * PI / (rate(x) * per_period as f64);
        if x >= b {
            break;
        }
        pts.push(x);
    }
    pts.push(b);
    pts
}

/// The inner integral int_w^1 dk/k sin(alpha ln(k/w)) cos(...) for one w,
/// by direct panel quadrature in q = ln k.
pub fn inner_integral(alpha: f64, chi: f64, varpi: f64, spec: &QuadratureSpec) -> Result<f64> {
    check(alpha, chi)?;
    if !(varpi > 0.0) {
        return Err(Error::Domain(format!("inner_integral: w = {varpi} must be positive")));
    }
    let p = varpi.ln();
    if p == 0.0 {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if p < 0.0 { (p, 0.0, 1.0) } else { (0.0, p, -1.0) };
    let sp = p.sinh();
    let f = |q: f64| (alpha * (q - p)).sin() * (chi * alpha * (sp - q.sinh())).cos();
    let pts = panels(lo, hi, |q| alpha * (1.0 + chi * q.cosh()), spec.osc_panels_per_period);
    let (v, _) = adaptive(f, &pts, spec.rel_tol, spec.abs_tol, spec.max_subdivisions.max(pts.len() * 4))?;
    Ok(sign * v)
}

/// I(alpha, chi). Intended for alpha up to about 1e4; beyond that a warning
/// is logged, since the real segment grows linearly with alpha.
pub fn oscillatory_double_integral(alpha: f64, chi: f64, spec: &QuadratureSpec) -> Result<f64> {
    if alpha > 1e4 {
        log::warn!("oscillatory_double_integral: alpha = {alpha:e} beyond the operational range");
    }
    Ok(oscillatory_double_integral_weighted(alpha, chi, spec, 1.0)?.0)
}

/// I with the sine factor scaled by `sine_weight`; a zero weight must give
/// exactly zero. Returns the value and an error estimate.
pub(crate) fn oscillatory_double_integral_weighted(
    alpha: f64,
    chi: f64,
    spec: &QuadratureSpec,
    sine_weight: f64,
) -> Result<(f64, f64)> {
    check(alpha, chi)?;
    spec.validate()?;
    let ca = chi * alpha;

    // End of the real segment: along d_c + iy, e^{iW} decays at the rate
    // rise(d_c) or faster and beats e^{alpha y}. When the leg does not reach
    // pi/2, the horizontal continuation from its top is negligible as well,
    // and d_c is kept at twice the leg length so the leg stays near the real
    // axis. For large chi alpha this puts d_c close to the origin.
    let rise = |d: f64| alpha * (chi * d.cosh() * 2.0 / PI - 1.0);
    let mut d_c = ((FRAC_PI_2 + path_margin(alpha)) / chi).max(1.0).acosh();
    let mut top = 2.0 * VERTICAL_DECAYS / rise(d_c);
    if top < FRAC_PI_2 {
        d_c = d_c.max(2.0 * top);
        top = 2.0 * VERTICAL_DECAYS / rise(d_c);
    } else {
        top = FRAC_PI_2;
    }

    let failed = std::cell::Cell::new(None);
    let big_h = |d: f64| match tail_cosine(d, ca) {
        Ok(v) => v,
        Err(e) => {
            failed.set(Some(e));
            0.0
        }
    };
    let real = |d: f64| {
        if d == 0.0 {
            return 0.0;
        }
        sine_weight * (alpha * d).sin() * big_h(d)
    };
    let pts = panels(0.0, d_c, |d| alpha * (1.0 + chi * d.cosh()), spec.osc_panels_per_period);
    let budget = spec.max_subdivisions.max(pts.len() * 4);
    let (v_real, e_real) = adaptive(real, &pts, spec.rel_tol, spec.abs_tol, budget)?;
    if let Some(e) = failed.take() {
        return Err(e);
    }

    // Vertical path d = d_c + iy; the horizontal continuation from its top
    // is below e^-50 and dropped.
    let vertical = |y: f64| {
        let d = C64::new(d_c, y);
        let w = ca * d.sinh();
        let c = 2.0 * ca * (0.5 * d).sinh();
        let a = 4.0 * ca * (0.5 * d).sinh() * (0.25 * d).sinh().powi(2);
        let h = if a.norm() >= WATSON_MIN { h_watson(a, w + c) } else { h_quad(a, w + c) };
        let iw = C64::i() * w;
        let ad = C64::i() * alpha * d;
        // (1/2)(e^{i(W + alpha d)} - e^{i(W - alpha d)}) h, times dd = i dy
        0.5 * sine_weight * ((iw + ad).exp() - (iw - ad).exp()) * h * C64::i()
    };
    let mut ypts = vec![0.0];
    let mut y = 1.0 / rise(d_c);
    while y < top {
        ypts.push(y);
        y *= 4.0;
    }
    ypts.push(top);
    let (v_vert, e_vert) = adaptive(vertical, &ypts, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)?;
    Ok((2.0 * (v_real + v_vert.re), 2.0 * (e_real + e_vert)))
}

/// H(d) = int_{d/2}^inf cos(C cosh s) ds with C = 2 chi alpha sinh(d/2);
/// `ca` is chi alpha.
pub(crate) fn tail_cosine(d: f64, ca: f64) -> Result<f64> {
    let c = 2.0 * ca * (0.5 * d).sinh();
    let w = ca * d.sinh();
    let a = 4.0 * ca * (0.5 * d).sinh() * (0.25 * d).sinh().powi(2);
    let (a, b) = (C64::new(a, 0.0), C64::new(w + c, 0.0));
    let h = if a.re >= WATSON_MIN { h_watson(a, b) } else { h_quad(a, b) };
    Ok((C64::i() * C64::new(0.0, w).exp() * h).re)
}

/// Where a path is turned at Re z = z_c into the strip, the dropped piece
/// along Im z = +-pi/2 is bounded by exp(alpha (pi/2 - chi cosh z_c)); z_c is
/// chosen with chi cosh z_c >= pi/2 + path_margin(alpha), so that bound is
/// below e^-40.
pub(crate) fn path_margin(alpha: f64) -> f64 {
    (40.0 / alpha).max(2.0)
}

fn check(alpha: f64, chi: f64) -> Result<()> {
    if alpha > 0.0 && chi > 0.0 && alpha.is_finite() && chi.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("need positive finite alpha, chi; got ({alpha}, {chi})")))
    }
}

/// h from Watson's lemma, h ~ sum_k i^k k! f_k with f_k the Taylor
/// coefficients at W of f(w) = (w - C)^{-1/2} (w + C)^{-1/2}, given
/// a = W - C and b = W + C. From (w^2 - C^2) f' = -w f the terms
/// t_k = i^k k! f_k obey
/// t_{k+1} = -(i ((a + b) k + W) t_k - k^2 t_{k-1}) / (a b).
fn h_watson(a: C64, b: C64) -> C64 {
    let ab = a * b;
    let w = 0.5 * (a + b);
    let mut prev = C64::new(0.0, 0.0);
    let mut term = (C64::i() * (-C64::i() * a).sqrt() * (-C64::i() * b).sqrt()).inv();
    let mut sum = term;
    let mut last = term.norm();
    for k in 0..200 {
        let kf = k as f64;
        let next = -(C64::i() * ((a + b) * kf + w) * term - kf * kf * prev) / ab;
        let mag = next.norm();
        // asymptotic: stop at the smallest term
        if mag > last || mag < 1e-17 * sum.norm() {
            if mag <= last {
                sum += next;
            }
            break;
        }
        sum += next;
        prev = term;
        term = next;
        last = mag;
    }
    sum
}

/// h by quadrature after t = s^2, on panels growing geometrically from the
/// scale sqrt|a| of the branch point t = i a.
///
/// (a + it)^{1/2} is taken as e^{i pi/4} (t - ia)^{1/2}, whose cut is only
/// reached when i a lies on the positive axis; this is the continuation of
/// the real-a branch along the paths used here.
fn h_quad(a: C64, b: C64) -> C64 {
    let (ia, ib) = (C64::i() * a, C64::i() * b);
    let f = |s: f64| {
        let t = s * s;
        let den = C64::i() * (t - ia).sqrt() * (t - ib).sqrt();
        2.0 * s * (-t).exp() / den
    };
    let mut pts = vec![0.0];
    let mut x = a.norm().sqrt().min(1.0) / 4.0;
    while x < 6.5 {
        pts.push(x);
        x *= 4.0;
    }
    pts.push(6.5);
    pts.windows(2).map(|w| kronrod_fixed(&f, w[0], w[1])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_cosine_reference_values() {
        // -(pi/2) Y0(C) - int_0^{d/2} cos(C cosh s) ds at 30 digits
        let cases = [
            (0.05, 90.0, 0.31131048115037878),
            (0.5, 90.0, -0.034339265446379521),
            (1.5, 90.0, -0.00012250417864013274),
            (0.3, 2.0, 0.35673714102112179),
            (0.01, 1000.0, -0.083236636042052648),
        ];
        for (d, ca, want) in cases {
            let got = tail_cosine(d, ca).unwrap();
            assert!((got - want).abs() < 1e-13, "H({d}, {ca}) = {got}, want {want}");
        }
    }

    #[test]
    fn watson_and_quadrature_agree_at_the_switch() {
        for b in [100.0, 1e4] {
            let (a, b) = (C64::new(WATSON_MIN, 0.0), C64::new(b, 0.0));
            let r = (h_watson(a, b) - h_quad(a, b)).norm() / h_quad(a, b).norm();
            assert!(r < 1e-13, "{r}");
        }
        // off the real axis, as on the vertical leg
        let (a, b) = (C64::new(45.0, 20.0), C64::new(300.0, 90.0));
        let r = (h_watson(a, b) - h_quad(a, b)).norm() / h_quad(a, b).norm();
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn zero_sine_weight_gives_exact_zero() {
        let spec = QuadratureSpec::default();
        for (alpha, chi) in [(10.0, 1.0), (300.0, 0.7), (1e3, 4.0)] {
            let (v, _) = oscillatory_double_integral_weighted(alpha, chi, &spec, 0.0).unwrap();
            assert_eq!(v, 0.0);
        }
    }
}
