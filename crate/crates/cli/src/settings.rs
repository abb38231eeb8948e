//! Run settings. Each value comes from the command line if given there, else
//! from the config file, else from the built-in default.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use cavshift::sweep::OutputFormat;
use cavshift::QuadratureSpec;

/// The figure a `sweep` reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepKind {
    /// Delta_0 against x.
    Fig2,
    /// Delta - Delta_0 against x.
    #[default]
    Fig3,
    /// F against epsilon = x - xi_01.
    Fig4,
}

impl FromStr for SweepKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig2" | "inertial" => Ok(Self::Fig2),
            "fig3" | "difference" => Ok(Self::Fig3),
            "fig4" | "enhancement" => Ok(Self::Fig4),
            other => bail!("unknown sweep mode '{other}' (fig2, fig3, fig4)"),
        }
    }
}

/// Values given explicitly, by flags or by a config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<Vec<f64>>,
    pub x: Option<f64>,
    pub eps: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub n_max: Option<usize>,
    pub rho_frac: Option<f64>,
    pub rel_tol: Option<f64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub mode: Option<SweepKind>,
    pub log_y: Option<bool>,
    pub target: Option<f64>,
}

macro_rules! first_some {
    ($hi:expr, $lo:expr, $($f:ident),*) => {
        Overrides { $($f: $hi.$f.or($lo.$f)),* }
    };
}

impl Overrides {
    /// Field by field, `self` where set, else `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        first_some!(
            self, lower, alpha, x, eps, x_min, x_max, points, n_max, rho_frac, rel_tol, format, out, mode, log_y,
            target
        )
    }

    pub fn resolve(self) -> Settings {
        let d = Settings::default();
        Settings {
            alphas: self.alpha.unwrap_or(d.alphas),
            x: self.x,
            eps: self.eps,
            x_min: self.x_min,
            x_max: self.x_max,
            points: self.points.unwrap_or(d.points),
            n_max: self.n_max.unwrap_or(d.n_max),
            rho_frac: self.rho_frac.unwrap_or(d.rho_frac),
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            format: self.format.unwrap_or(d.format),
            out: self.out,
            mode: self.mode.unwrap_or(d.mode),
            log_y: self.log_y.unwrap_or(d.log_y),
            target: self.target,
        }
    }
}

/// Resolved settings. The detuning, window and target have no global
/// default; each subcommand supplies or demands its own.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub alphas: Vec<f64>,
    pub x: Option<f64>,
    pub eps: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: usize,
    pub n_max: usize,
    pub rho_frac: f64,
    pub rel_tol: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub mode: SweepKind,
    pub log_y: bool,
    pub target: Option<f64>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            alphas: vec![1e3],
            x: None,
            eps: None,
            x_min: None,
            x_max: None,
            points: 500,
            n_max: cavshift::CavitySpec::DEFAULT_N_MAX,
            rho_frac: 0.0,
            rel_tol: QuadratureSpec::default().rel_tol,
            format: OutputFormat::Csv,
            out: None,
            mode: SweepKind::default(),
            log_y: false,
            target: None,
        }
    }
}

impl Settings {
    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec { rel_tol: self.rel_tol, ..QuadratureSpec::default() }
    }
}

fn value<T: FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| anyhow!("{key}: cannot parse '{v}': {e}"))
}

fn list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| value(key, s.trim())).collect()
}

/// Parses `key = value` lines. `#` starts a comment; keys may use `-` or
/// `_`; a key may appear once.
pub fn parse_config(text: &str) -> Result<Overrides> {
    let mut o = Overrides::default();
    let mut seen = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, v) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected `key = value`", i + 1))?;
        let key = key.trim().replace('-', "_");
        let v = v.trim().trim_matches('"');
        if seen.contains(&key) {
            bail!("line {}: '{key}' given twice", i + 1);
        }
        let at = || format!("line {}", i + 1);
        match key.as_str() {
            "alpha" => o.alpha = Some(list(&key, v).with_context(at)?),
            "x" => o.x = Some(value(&key, v).with_context(at)?),
            "eps" => o.eps = Some(value(&key, v).with_context(at)?),
            "x_min" => o.x_min = Some(value(&key, v).with_context(at)?),
            "x_max" => o.x_max = Some(value(&key, v).with_context(at)?),
            "points" => o.points = Some(value(&key, v).with_context(at)?),
            "n_max" => o.n_max = Some(value(&key, v).with_context(at)?),
            "rho_frac" => o.rho_frac = Some(value(&key, v).with_context(at)?),
            "rel_tol" => o.rel_tol = Some(value(&key, v).with_context(at)?),
            "format" => o.format = Some(value(&key, v).with_context(at)?),
            "out" => o.out = Some(PathBuf::from(v)),
            "mode" => o.mode = Some(value(&key, v).with_context(at)?),
            "log_y" => o.log_y = Some(value(&key, v).with_context(at)?),
            "target" => o.target = Some(value(&key, v).with_context(at)?),
            _ => bail!("line {}: unknown key '{key}'", i + 1),
        }
        seen.push(key);
    }
    Ok(o)
}

pub fn load_config(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in {}", path.display()))
}
