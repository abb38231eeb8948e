//! Table I: achievable relative enhancement at a given precision of the
//! cavity radius, and its inverse.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate_point, log_grid, SweepRequest, SweepRow};
use crate::error::{Error, Result};
use crate::inertial::{electron_mass_ratio, physical_n_max, CavitySpec};
use crate::quadrature::QuadratureSpec;
use crate::specfun::bessel_j_zero;

/// (alpha, dR/R0, F) as tabulated.
pub const TABLE1: [(f64, f64, f64); 3] = [(1e5, 1e-5, 1.0), (1e7, 1e-6, 10.0), (1e9, 1e-7, 50.0)];

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Config {
    /// Modes summed explicitly; the rest of Delta_0 up to the electron-mass
    /// cutoff is added asymptotically.
    pub n_max: usize,
    /// Atomic gap in rad/s, fixing the cutoff xi_{0n}/R = m_e c / hbar.
    pub omega0: f64,
    /// |epsilon| grid density for the window maximum.
    pub points_per_decade: usize,
    /// Decades of |epsilon| below xi_01 dR/R0 covered by the window scan.
    pub decades: usize,
    pub quadrature: QuadratureSpec,
}

impl Default for Table1Config {
    fn default() -> Self {
        // A cavity of radius 6 cm tuned to the first resonance: omega0 = xi_01 c / R0,
        // about 1.2e10 rad/s.
        let xi1 = bessel_j_zero(0, 1).unwrap_or(2.404_825_557_695_773);
        Self {
            n_max: CavitySpec::DEFAULT_N_MAX,
            omega0: xi1 * SPEED_OF_LIGHT / 0.06,
            points_per_decade: 20,
            decades: 4,
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl Table1Config {
    /// Radial cutoff at detuning x.
    pub fn uv_cutoff(&self, x: f64) -> f64 {
        physical_n_max(x, electron_mass_ratio(self.omega0)).max(self.n_max as f64)
    }

    fn request(&self, x: f64) -> SweepRequest {
        SweepRequest {
            n_max: self.n_max,
            uv_cutoff: Some(self.uv_cutoff(x)),
            quadrature: self.quadrature,
            ..SweepRequest::new(super::SweepMode::SinglePoint)
        }
    }

    /// The full row at x = xi_01 + eps.
    pub(crate) fn row(&self, eps: f64, alpha: f64) -> SweepRow {
        let xi1 = bessel_j_zero(0, 1).unwrap_or(2.404_825_557_695_773);
        evaluate_point(xi1 + eps, eps, alpha, &self.request(xi1 + eps))
    }
}

/// F at x = xi_01 + eps with Delta_0 cut off at the electron mass scale.
pub fn enhancement_with_cutoff(eps: f64, alpha: f64, cfg: &Table1Config) -> Result<f64> {
    let row = cfg.row(eps, alpha);
    if row.f.is_finite() {
        Ok(row.f)
    } else if row.flags == "resonance" {
        Err(Error::Resonance { x: bessel_j_zero(0, 1)? + eps, xi: bessel_j_zero(0, 1)? })
    } else {
        Err(Error::Domain(format!("F not available at eps = {eps:e}: {}", row.flags)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub alpha: f64,
    /// dR/R0 = eps/xi_01.
    pub precision: f64,
    /// The tabulated value.
    pub f_reference: f64,
    /// F at eps = +xi_01 dR/R0.
    pub f_at: f64,
    /// F at eps = -xi_01 dR/R0.
    pub f_at_below: f64,
    /// The F of largest magnitude over |eps| <= xi_01 dR/R0, both signs.
    pub f_max: f64,
    pub eps_max: f64,
    pub uv_cutoff: f64,
}

impl Table1Row {
    /// Whether the value at +eps or the window maximum is within `factor`
    /// of the tabulated F.
    pub fn within(&self, factor: f64) -> bool {
        let ok = |f: f64| f / self.f_reference <= factor && self.f_reference / f <= factor;
        ok(self.f_at) || ok(self.f_max)
    }
}

/// Table I with the default configuration.
pub fn reproduce_table1() -> Result<Vec<Table1Row>> {
    reproduce_table1_with(&Table1Config::default())
}

pub fn reproduce_table1_with(cfg: &Table1Config) -> Result<Vec<Table1Row>> {
    let xi1 = bessel_j_zero(0, 1)?;
    let n = cfg.points_per_decade * cfg.decades + 1;
    TABLE1
        .iter()
        .map(|&(alpha, precision, f_reference)| {
            let edge = xi1 * precision;
            let lo = edge * 10f64.powi(-(cfg.decades as i32));
            let grid: Vec<f64> = log_grid(-edge, -lo, n).into_iter().chain(log_grid(lo, edge, n)).collect();
            let values: Vec<Result<f64>> =
                grid.par_iter().map(|&e| enhancement_with_cutoff(e, alpha, cfg)).collect();
            let mut best: (f64, f64) = (0.0, 0.0);
            for (e, v) in grid.iter().zip(values) {
                let v = v?;
                if v.abs() > best.1.abs() {
                    best = (*e, v);
                }
            }
            Ok(Table1Row {
                alpha,
                precision,
                f_reference,
                f_at: enhancement_with_cutoff(edge, alpha, cfg)?,
                f_at_below: enhancement_with_cutoff(-edge, alpha, cfg)?,
                f_max: best.1,
                eps_max: best.0,
                uv_cutoff: cfg.uv_cutoff(xi1 + edge),
            })
        })
        .collect()
}

/// The eps in `window` whose F is closest to `f_target`, by a log-grid scan
/// refined three times around the best point. No monotonicity is assumed.
///
/// The window must lie on one side of eps = 0 and stay 1e-12 xi_01 away
/// from it. Fails with `NotAchievable` if the closest F misses the target by
/// more than half its magnitude.
pub fn find_detuning_for_enhancement(
    alpha: f64,
    f_target: f64,
    window: (f64, f64),
    cfg: &Table1Config,
) -> Result<(f64, f64)> {
    if f_target == 0.0 || !f_target.is_finite() {
        return Err(Error::Domain(format!("target F must be nonzero and finite, got {f_target}")));
    }
    let xi1 = bessel_j_zero(0, 1)?;
    let (lo, hi) = window;
    if !(lo < hi) || (lo < 0.0 && hi > 0.0) || lo.abs().min(hi.abs()) < 1e-12 * xi1 {
        return Err(Error::Domain(format!(
            "window ({lo:e}, {hi:e}) must be ordered, on one side of 0 and at least 1e-12 xi_01 from it"
        )));
    }
    const N: usize = 41;
    let miss = |f: f64| (f - f_target).abs();
    let (mut a, mut b) = (lo, hi);
    let mut best = (f64::NAN, f64::NAN);
    for _ in 0..4 {
        let grid = log_grid(a, b, N);
        let values: Vec<Result<f64>> = grid.par_iter().map(|&e| enhancement_with_cutoff(e, alpha, cfg)).collect();
        let mut k_best = None;
        for (k, v) in values.into_iter().enumerate() {
            let Ok(v) = v else { continue };
            if best.1.is_nan() || miss(v) < miss(best.1) {
                best = (grid[k], v);
                k_best = Some(k);
            }
        }
        match k_best {
            Some(k) => {
                a = grid[k.saturating_sub(1)];
                b = grid[(k + 1).min(N - 1)];
            }
            None if best.1.is_nan() => {
                return Err(Error::Domain(format!("F could not be evaluated anywhere in ({lo:e}, {hi:e})")));
            }
            None => {
                // the previous best stays best; tighten around it
                let (e, _) = best;
                a = e - 0.5 * (e - a);
                b = e + 0.5 * (b - e);
            }
        }
    }
    let (eps, f) = best;
    if miss(f) > 0.5 * f_target.abs() {
        return Err(Error::NotAchievable { target: f_target, achieved: f, epsilon: eps });
    }
    Ok((eps, f))
}
