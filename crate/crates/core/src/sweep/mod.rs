//! Detuning and acceleration sweeps, the Table I reproduction, inverse
//! design, and tabular or plot output.

mod checks;
mod output;
mod table1;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inertial::{delta0, delta0_tail, CavitySpec, Method};
use crate::quadrature::QuadratureSpec;
use crate::rindler::{delta_minus_delta0, AccelSpec};
use crate::specfun::bessel_j_zero;

pub use checks::{oracle_equivalence, oracle_grid, OracleCheck};
pub use output::{emit_output, parse_csv, parse_json, OutputFormat, PlotOptions, YColumn, CSV_HEADER};
pub use table1::{
    enhancement_with_cutoff, find_detuning_for_enhancement, reproduce_table1, reproduce_table1_with, Table1Config,
    Table1Row, TABLE1,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Delta_0 over a linear x grid.
    Fig2Inertial,
    /// Delta - Delta_0 over a linear x grid, one series per alpha.
    Fig3Difference,
    /// F over a logarithmic grid in |epsilon|, x = xi_01 + epsilon.
    Fig4Enhancement,
    /// F at the three Table I points.
    Table1,
    /// The epsilon in the window whose F is closest to `f_target`.
    InverseDesign,
    /// One detuning, `x_min`.
    SinglePoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRequest {
    pub mode: SweepMode,
    /// Grid bounds: x for the linear modes, epsilon for the enhancement and
    /// inverse-design modes.
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub alphas: Vec<f64>,
    pub rho_frac: f64,
    pub m_max: u32,
    pub n_max: usize,
    /// Total radial cutoff for Delta_0. Modes past `n_max` are summed
    /// asymptotically; on-axis only.
    pub uv_cutoff: Option<f64>,
    pub f_target: Option<f64>,
    pub quadrature: QuadratureSpec,
    pub output_path: Option<PathBuf>,
}

impl SweepRequest {
    pub fn new(mode: SweepMode) -> Self {
        Self {
            mode,
            x_min: 1.5,
            x_max: 9.0,
            points: 500,
            alphas: vec![1e3],
            rho_frac: 0.0,
            m_max: 0,
            n_max: CavitySpec::DEFAULT_N_MAX,
            uv_cutoff: None,
            f_target: None,
            quadrature: QuadratureSpec::default(),
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        let grid = !matches!(self.mode, SweepMode::SinglePoint | SweepMode::Table1);
        if grid && !(self.x_min < self.x_max) {
            return Err(Error::Domain(format!("need x_min < x_max, got {} and {}", self.x_min, self.x_max)));
        }
        if grid && self.mode != SweepMode::InverseDesign && self.points < 2 {
            return Err(Error::Domain(format!("need at least 2 grid points, got {}", self.points)));
        }
        let accelerated = !matches!(self.mode, SweepMode::Fig2Inertial | SweepMode::Table1);
        if accelerated && self.alphas.is_empty() {
            return Err(Error::Domain("this mode needs at least one alpha".into()));
        }
        for a in &self.alphas {
            AccelSpec::new(*a)?;
        }
        if self.uv_cutoff.is_some() && self.rho_frac != 0.0 {
            return Err(Error::Domain("the asymptotic cutoff tail is only available on axis".into()));
        }
        if self.mode == SweepMode::Fig4Enhancement && self.x_min < 0.0 && self.x_max > 0.0 && self.points < 4 {
            return Err(Error::Domain("a window straddling epsilon = 0 needs at least 4 points".into()));
        }
        Ok(())
    }

    fn cavity(&self, x: f64) -> CavitySpec {
        CavitySpec { detuning_x: x, rho_frac: self.rho_frac, m_max: self.m_max, n_max: self.n_max }
    }
}

/// One output row. Failed or skipped points carry NaN values and a flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub x_or_epsilon: f64,
    pub alpha: f64,
    pub delta0: f64,
    pub delta: f64,
    pub difference: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub err: f64,
    pub method: String,
    pub flags: String,
}

impl SweepRow {
    fn failed(x_or_epsilon: f64, alpha: f64, flags: String) -> Self {
        Self {
            x_or_epsilon,
            alpha,
            delta0: f64::NAN,
            delta: f64::NAN,
            difference: f64::NAN,
            f: f64::NAN,
            err: f64::NAN,
            method: String::new(),
            flags,
        }
    }

    /// Rows computed without a per-point failure.
    pub fn is_ok(&self) -> bool {
        self.flags.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// xi_01, xi_02, xi_03, for plot markers.
    pub resonances: Vec<f64>,
}

/// The first three on-axis resonances.
pub fn resonance_markers() -> Result<Vec<f64>> {
    (1..=3).map(|n| bessel_j_zero(0, n)).collect()
}

/// Evaluates one grid point. `label` is what goes in the first column.
pub fn evaluate_point(x: f64, label: f64, alpha: f64, req: &SweepRequest) -> SweepRow {
    let cavity = req.cavity(x);
    let d0 = match delta0(&cavity) {
        Ok(r) => r.value,
        Err(Error::Resonance { .. }) => return SweepRow::failed(label, alpha, "resonance".into()),
        Err(e) => return SweepRow::failed(label, alpha, format!("error: {e}")),
    };
    let d0 = match req.uv_cutoff {
        Some(n) if n > req.n_max as f64 => match delta0_tail(x, req.n_max, n) {
            Ok(t) => d0 + t,
            Err(e) => return SweepRow::failed(label, alpha, format!("error: {e}")),
        },
        _ => d0,
    };
    let (diff, err, method) = if alpha.is_infinite() {
        (0.0, 0.0, Method::ClosedForm)
    } else {
        match delta_minus_delta0(&cavity, &AccelSpec { alpha }, &req.quadrature) {
            Ok(r) => (r.value, r.err_estimate, r.method),
            Err(e) => return SweepRow::failed(label, alpha, format!("error: {e}")),
        }
    };
    let mut flags = String::new();
    let f = if d0.abs() < 1e-14 {
        flags.push_str("degenerate_delta0");
        f64::NAN
    } else {
        diff / d0
    };
    SweepRow {
        x_or_epsilon: label,
        alpha,
        delta0: d0,
        delta: d0 + diff,
        difference: diff,
        f,
        err,
        method: method.as_str().into(),
        flags,
    }
}

/// n points spaced evenly from a to b, endpoints included.
pub(crate) fn linear_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

/// n points spaced logarithmically from a to b (same sign, nonzero).
pub(crate) fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let s = a.signum();
    let (la, lb) = (a.abs().ln(), b.abs().ln());
    linear_grid(la, lb, n).into_iter().map(|l| s * l.exp()).collect()
}

/// Epsilon grid for enhancement windows: logarithmic in |epsilon|. A window
/// straddling zero gets half its points on each side, from 1e-3 of the
/// outer bound outwards.
fn epsilon_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if lo > 0.0 || hi < 0.0 {
        return log_grid(lo, hi, n);
    }
    let below = n / 2;
    let mut g: Vec<f64> = if lo < 0.0 { log_grid(lo, 1e-3 * lo, below) } else { vec![] };
    if hi > 0.0 {
        g.extend(log_grid(1e-3 * hi, hi, n - below));
    }
    g
}

/// Runs a sweep. Rows come in ascending grid order within each alpha series,
/// series in the order of `alphas`; the result does not depend on the thread
/// count.
pub fn run_sweep(req: &SweepRequest) -> Result<SweepOutput> {
    req.validate()?;
    let resonances = resonance_markers()?;
    let xi1 = resonances[0];
    let rows = match req.mode {
        SweepMode::Fig2Inertial => linear_grid(req.x_min, req.x_max, req.points)
            .into_par_iter()
            .map(|x| evaluate_point(x, x, f64::INFINITY, req))
            .collect(),
        SweepMode::Fig3Difference | SweepMode::SinglePoint => {
            let grid = if req.mode == SweepMode::SinglePoint {
                vec![req.x_min]
            } else {
                linear_grid(req.x_min, req.x_max, req.points)
            };
            let jobs: Vec<(f64, f64)> = req.alphas.iter().flat_map(|&a| grid.iter().map(move |&x| (a, x))).collect();
            jobs.into_par_iter().map(|(a, x)| evaluate_point(x, x, a, req)).collect()
        }
        SweepMode::Fig4Enhancement => {
            let grid = epsilon_grid(req.x_min, req.x_max, req.points);
            let jobs: Vec<(f64, f64)> = req.alphas.iter().flat_map(|&a| grid.iter().map(move |&e| (a, e))).collect();
            jobs.into_par_iter().map(|(a, e)| evaluate_point(xi1 + e, e, a, req)).collect()
        }
        SweepMode::Table1 => TABLE1
            .par_iter()
            .map(|&(alpha, precision, _)| {
                let eps = xi1 * precision;
                let sub = SweepRequest { uv_cutoff: Some(table1_cutoff(req, xi1 + eps)), ..req.clone() };
                evaluate_point(xi1 + eps, eps, alpha, &sub)
            })
            .collect(),
        SweepMode::InverseDesign => {
            let target = req.f_target.ok_or_else(|| Error::Domain("inverse design needs a target F".into()))?;
            let alpha = req.alphas[0];
            let cfg = Table1Config { n_max: req.n_max, quadrature: req.quadrature, ..Table1Config::default() };
            match find_detuning_for_enhancement(alpha, target, (req.x_min, req.x_max), &cfg) {
                Ok((eps, _)) => vec![cfg.row(eps, alpha)],
                Err(Error::NotAchievable { epsilon, .. }) => {
                    let mut row = cfg.row(epsilon, alpha);
                    row.flags = "not_achievable".into();
                    vec![row]
                }
                Err(e) => return Err(e),
            }
        }
    };
    Ok(SweepOutput { rows, resonances })
}

/// The cutoff the Table I mode uses: the request's if given, else the
/// electron-mass cutoff of the default configuration.
fn table1_cutoff(req: &SweepRequest, x: f64) -> f64 {
    req.uv_cutoff.unwrap_or_else(|| Table1Config::default().uv_cutoff(x))
}
