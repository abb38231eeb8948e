use cavshift::quadrature::*;
use proptest::prelude::*;

#[test]
fn integrate_elementary() {
    let spec = QuadratureSpec::default();
    let (v, _) = integrate(|_| 1.0, 0.0, 1.0, &spec).unwrap();
    assert!((v - 1.0).abs() < 1e-14);
    let (v, _) = integrate(f64::sin, 0.0, std::f64::consts::PI, &spec).unwrap();
    assert!((v - 2.0).abs() < 1e-12);
    assert!(integrate(|_| 1.0, 1.0, 1.0, &spec).is_err());
}

#[test]
fn integrate_inverse_sqrt_endpoint() {
    let spec = QuadratureSpec::default();
    let a = 2.0 + 1e-12;
    let (v, _) = integrate(|w| 1.0 / (w * w - 4.0).sqrt(), a, 10.0, &spec).unwrap();
    let exact = 5f64.acosh() - (a / 2.0).acosh();
    // the sliver [2, 2 + 1e-12] carries 1e-6 of the total
    assert!((v - exact).abs() < 2e-6, "{v} vs {exact}");
    assert!((v - 2.2924316696).abs() < 2e-6);
}

#[test]
fn pv_elementary() {
    let spec = QuadratureSpec::default();
    assert!(pv_integral(|_| 1.0, 1.0, 0.0, 2.0, &spec).unwrap().abs() < 1e-10);
    let v = pv_integral(|_| 1.0, 1.0, 0.0, 3.0, &spec).unwrap();
    assert!((v - std::f64::consts::LN_2).abs() < 1e-10);
    let v = pv_integral(|w| w, 1.0, 0.0, 2.0, &spec).unwrap();
    assert!((v - 2.0).abs() < 1e-10);
    assert!(pv_integral(|w| w, 3.0, 0.0, 2.0, &spec).is_err());
}

#[test]
fn pv_stable_under_window_halving() {
    let f = |w: f64| (w * 1.7).cos() * (-w).exp();
    let spec = QuadratureSpec::default();
    let half = QuadratureSpec { pv_window: spec.pv_window / 2.0, ..spec };
    let a = pv_integral(f, 1.0, 0.0, 4.0, &spec).unwrap();
    let b = pv_integral(f, 1.0, 0.0, 4.0, &half).unwrap();
    assert!((a - b).abs() <= 10.0 * spec.rel_tol * a.abs());
}

#[test]
fn spec_validation() {
    assert!(QuadratureSpec::default().validate().is_ok());
    let bad = QuadratureSpec { pv_window: 0.6, ..Default::default() };
    assert!(bad.validate().is_err());
    let bad = QuadratureSpec { rel_tol: 0.0, ..Default::default() };
    assert!(bad.validate().is_err());
}

proptest! {
    #[test]
    fn integrate_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, p in 0.1f64..5.0, q in 0.1f64..5.0) {
        let spec = QuadratureSpec::default();
        let f = move |x: f64| (p * x).sin() + x * x;
        let g = move |x: f64| (-q * x).exp();
        let (fi, _) = integrate(f, 0.0, 2.0, &spec).unwrap();
        let (gi, _) = integrate(g, 0.0, 2.0, &spec).unwrap();
        let (hi, _) = integrate(move |x| a * f(x) + b * g(x), 0.0, 2.0, &spec).unwrap();
        let want = a * fi + b * gi;
        prop_assert!((hi - want).abs() <= spec.rel_tol * want.abs().max(1.0));
    }
}

#[test]
fn inner_integral_vanishes_at_unit_frequency() {
    let spec = QuadratureSpec::default();
    for alpha in [1.0, 37.0, 1e3] {
        assert_eq!(inner_integral(alpha, 0.8, 1.0, &spec).unwrap(), 0.0);
    }
}

#[test]
fn inner_integral_matches_direct_quadrature() {
    let spec = QuadratureSpec { rel_tol: 1e-10, max_subdivisions: 100_000, ..Default::default() };
    let (alpha, chi) = (12.0, 1.3);
    for w in [0.4, 0.9, 1.7] {
        let direct = |k: f64| w * double_integrand(alpha, chi, w, k);
        let (lo, hi, sign) = if w < 1.0 { (w, 1.0, 1.0) } else { (1.0, w, -1.0) };
        let (want, _) = integrate(direct, lo, hi, &spec).unwrap();
        let got = inner_integral(alpha, chi, w, &spec).unwrap();
        assert!((got - sign * want).abs() < 1e-9, "w = {w}: {got} vs {}", sign * want);
    }
}

#[test]
fn double_integral_stable_under_panel_doubling() {
    let spec = QuadratureSpec::default();
    let fine = QuadratureSpec { osc_panels_per_period: 2 * spec.osc_panels_per_period, ..spec };
    let a = oscillatory_double_integral(10.0, 1.0, &spec).unwrap();
    let b = oscillatory_double_integral(10.0, 1.0, &fine).unwrap();
    assert!((a - b).abs() < 1e-6, "{a} vs {b}");
}

#[test]
fn double_integral_rejects_bad_arguments() {
    let spec = QuadratureSpec::default();
    assert!(oscillatory_double_integral(0.0, 1.0, &spec).is_err());
    assert!(oscillatory_double_integral(10.0, -1.0, &spec).is_err());
    assert!(inner_integral(10.0, 1.0, 0.0, &spec).is_err());
}
