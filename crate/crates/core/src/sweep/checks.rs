//! Checks shared by the command-line self test and the test suite.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::resonance_markers;
use crate::error::Result;
use crate::inertial::{delta0, delta0_pv_oracle, CavitySpec};
use crate::quadrature::QuadratureSpec;

/// Closed form against the principal-value quadrature at one detuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub x: f64,
    pub closed_form: f64,
    pub pv: f64,
    pub rel_diff: f64,
}

/// `n` midpoints of (1.5, 8), each moved 2e-2 upwards if it falls within
/// 1e-2 of a resonance.
pub fn oracle_grid(n: usize) -> Result<Vec<f64>> {
    let xi = resonance_markers()?;
    Ok((0..n)
        .map(|k| {
            let x = 1.5 + 6.5 * (k as f64 + 0.5) / n as f64;
            if xi.iter().any(|r| (x - r).abs() < 1e-2) {
                x + 2e-2
            } else {
                x
            }
        })
        .collect())
}

/// Delta_0 both ways on `oracle_grid(n)`.
pub fn oracle_equivalence(n: usize, n_max: usize, spec: &QuadratureSpec) -> Result<Vec<OracleCheck>> {
    oracle_grid(n)?
        .into_par_iter()
        .map(|x| {
            let cavity = CavitySpec::on_axis(x, n_max);
            let closed_form = delta0(&cavity)?.value;
            let pv = delta0_pv_oracle(&cavity, spec)?.value;
            Ok(OracleCheck { x, closed_form, pv, rel_diff: (pv - closed_form).abs() / closed_form.abs() })
        })
        .collect()
}
