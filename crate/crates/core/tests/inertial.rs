use cavshift::specfun::bessel_j_zero;
use cavshift::*;

fn xi(n: usize) -> f64 {
    bessel_j_zero(0, n).unwrap()
}

#[test]
fn inertial_term_values() {
    assert_eq!(inertial_term(1.0).unwrap(), 1.0);
    assert!((inertial_term(0.5).unwrap() + 0.6045997881).abs() < 1e-10);
    assert!((inertial_term(2f64.sqrt()).unwrap() - 0.8813735870).abs() < 1e-10);
    assert!((inertial_term(1.0 + 1e-9).unwrap() - 1.0).abs() < 1e-8);
    assert!(inertial_term(1.0 - 1e-9).unwrap() < -1e4);
    assert!(inertial_term(0.0).is_err());
}

#[test]
fn delta0_diverges_below_first_resonance() {
    let below = delta0(&CavitySpec::on_axis(xi(1) - 1e-3, 50)).unwrap();
    let far = delta0(&CavitySpec::on_axis(xi(1) - 1e-1, 50)).unwrap();
    assert!(below.value < 0.0 && below.value < 3.0 * far.value);
    let above = delta0(&CavitySpec::on_axis(xi(1) + 1e-3, 50)).unwrap();
    assert!(above.value.is_finite());
    let (mode, term) = above.per_mode_terms[0];
    let x = xi(1) + 1e-3;
    let j1 = cavshift::specfun::bessel_j(1, mode.xi).unwrap();
    let approx = 1.0 / (std::f64::consts::PI.powi(2) * x) / (mode.xi * j1 * j1);
    assert!((term / approx - 1.0).abs() < 1e-3);
}

#[test]
fn delta0_rejects_resonance() {
    let r = delta0(&CavitySpec::on_axis(xi(2), 10));
    assert!(matches!(r, Err(Error::Resonance { .. })));
}

#[test]
fn result_value_is_sum_of_terms() {
    let r = delta0(&CavitySpec::on_axis(4.1, 64)).unwrap();
    let s: f64 = r.per_mode_terms.iter().map(|t| t.1).sum();
    assert!((r.value - s).abs() < 1e-12);
    assert_eq!(r.method, Method::ClosedForm);
}

#[test]
fn pv_oracle_single_modes() {
    let spec = QuadratureSpec::default();
    for chi in [2.0, 0.5, 1.0 + 1e-6, 1.0 - 1e-6, 17.3] {
        let (v, _) = cavshift::inertial::threshold_pv_numeric(chi, &spec).unwrap();
        // closed form: the per-mode bracket t(1/chi)/chi times 2
        let want = 2.0 * inertial_term(1.0 / chi).unwrap() / chi;
        assert!((v - want).abs() <= 1e-7 * want.abs(), "chi={chi}: {v} vs {want}");
    }
    assert!(cavshift::inertial::threshold_pv_numeric(1.0, &spec).is_err());
}

#[test]
fn pv_oracle_cutoff_doubling() {
    let spec = QuadratureSpec::default();
    let doubled = QuadratureSpec { upper_cutoff: 100.0, ..spec };
    let c = CavitySpec::on_axis(3.3, 32);
    let a = delta0_pv_oracle(&c, &spec).unwrap().value;
    let b = delta0_pv_oracle(&c, &doubled).unwrap().value;
    assert!((a - b).abs() <= 1e-6 * a.abs());
}

#[test]
fn off_axis_modes_vanish_on_axis() {
    let base = CavitySpec::on_axis(3.7, 40);
    let wide = CavitySpec { m_max: 3, ..base };
    assert_eq!(delta0(&base).unwrap().value, delta0(&wide).unwrap().value);
    let off = CavitySpec { rho_frac: 0.3, m_max: 2, ..base };
    let r = delta0(&off).unwrap();
    assert_eq!(r.per_mode_terms.len(), 40 * 5);
    let spec = QuadratureSpec::default();
    let o = delta0_pv_oracle(&off, &spec).unwrap();
    assert!((r.value - o.value).abs() <= 1e-5 * r.value.abs());
}

#[test]
fn sign_structure_near_first_resonance() {
    let x1 = xi(1);
    for k in 1..10 {
        let d = 0.01 * k as f64;
        let below = delta0(&CavitySpec::on_axis(x1 - d, 128)).unwrap().value;
        let above = delta0(&CavitySpec::on_axis(x1 + d, 128)).unwrap().value;
        assert!(below < 0.0);
        assert!(above > below);
    }
}

#[test]
fn physical_cutoff_helper() {
    // McMahon: xi_{0n} ~ (n - 1/4) pi
    let n = cavshift::inertial::physical_n_max(3.0, 1e4);
    assert!((xi(n as usize) - 3e4).abs() < std::f64::consts::PI);
}

#[test]
fn asymptotic_tail_matches_explicit_modes() {
    for x in [1.9, xi(1) + 1e-4, 6.3] {
        let lo = delta0(&CavitySpec::on_axis(x, 128)).unwrap().value;
        let hi = delta0(&CavitySpec::on_axis(x, 1024)).unwrap().value;
        let tail = inertial::delta0_tail(x, 128, 1024.0).unwrap();
        assert!(((hi - lo) - tail).abs() < 1e-5 * tail.abs(), "x = {x}: {} vs {tail}", hi - lo);
    }
    assert_eq!(inertial::delta0_tail(3.0, 50, 50.0).unwrap(), 0.0);
    assert!(inertial::delta0_tail(3.0, 50, 10.0).is_err());
}

#[test]
fn electron_cutoff_for_a_microwave_gap() {
    // omega0 = 1.2e10 rad/s puts the cutoff near 5e10 modes at x = xi_01
    let ratio = inertial::electron_mass_ratio(1.2e10);
    assert!((ratio / 6.4695e10 - 1.0).abs() < 1e-4);
    let n = inertial::physical_n_max(xi(1), ratio);
    assert!((n / (xi(1) * ratio / std::f64::consts::PI) - 1.0).abs() < 1e-9);
}
