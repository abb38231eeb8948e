//! Per-mode terms of the large-alpha representation of Delta.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::Result;
use crate::quadrature::{adaptive, oscillatory_double_integral_weighted, path_margin, QuadratureSpec};
use crate::specfun::airy_bracket;

/// Delta_mn x^2 / w_mn: (alpha/(2 pi^2)) I + (sqrt(alpha)/(sqrt 2 pi)) L A,
/// where A is the Airy factor of the uniform expansion at nu = alpha.
pub(crate) fn mode_shift(chi: f64, alpha: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let (i, i_err) = oscillatory_double_integral_weighted(alpha, chi, spec, 1.0)?;
    let (l, l_err) = sine_integral(chi, alpha, spec)?;
    let a = airy_bracket(alpha, (1.0 - chi) * (1.0 + chi));
    let c1 = alpha / (2.0 * PI * PI);
    let c2 = alpha.sqrt() / (SQRT_2 * PI);
    Ok((c1 * i + c2 * l * a, c1 * i_err + c2 * (l_err * a).abs()))
}

/// L = int_0^inf sin(alpha u - chi alpha sinh u) du, i.e. the kappa-integral
/// with kappa = e^u. Real axis up to u_c, then down to u_c - i pi/2; for
/// chi past pi/2 + margin the path drops straight from the origin.
pub(crate) fn sine_integral(chi: f64, alpha: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let u_c = ((FRAC_PI_2 + path_margin(alpha)) / chi).max(1.0).acosh();
    let mut pts = vec![0.0];
    let mut u: f64 = 0.0;
    while u_c > 0.0 {
        u += 2.0 * PI / (alpha * (1.0 + chi * u.cosh()) * spec.osc_panels_per_period as f64);
        if u >= u_c {
            break;
        }
        pts.push(u);
    }
    if u_c > 0.0 {
        pts.push(u_c);
    }
    let budget = spec.max_subdivisions.max(4 * pts.len());
    let (v, e) = adaptive(|u| (alpha * (u - chi * u.sinh())).sin(), &pts, spec.rel_tol, spec.abs_tol, budget)?;
    let down = |y: f64| {
        let z = Complex64::new(u_c, -y);
        (Complex64::i() * alpha * (z - chi * z.sinh())).exp() * Complex64::new(0.0, -1.0)
    };
    let decay = alpha * (chi * u_c.cosh() * 2.0 / PI - 1.0);
    let mut ypts = vec![0.0];
    let mut y = 1.0 / decay;
    while y < FRAC_PI_2 {
        ypts.push(y);
        y *= 4.0;
    }
    ypts.push(FRAC_PI_2);
    let (w, we) = adaptive(down, &ypts, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)?;
    Ok((v + w.im, e + we))
}
