//! The `cavshift` command line.

pub mod settings;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cavshift::specfun::bessel_j_zero;
use cavshift::sweep::{
    emit_output, evaluate_point, oracle_equivalence, reproduce_table1_with, resonance_markers, run_sweep,
    OutputFormat, PlotOptions, SweepMode, SweepRequest, SweepRow, Table1Config, Table1Row, YColumn,
};
use clap::{Parser, Subcommand};
use log::{info, warn};
use rayon::prelude::*;

pub use settings::{load_config, parse_config, Overrides, Settings, SweepKind};

/// Sets the worker thread count. Nothing else is read from the environment.
pub const THREADS_ENV: &str = "CAVSHIFT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cavshift", version, about = "Level shifts of an inertial or accelerated atom in a cylindrical cavity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// More log output on stderr (-v, -vv).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shifts at one detuning, given by --x or --eps.
    Point(Args),
    /// A detuning sweep (--mode fig2, fig3 or fig4).
    Sweep(Args),
    /// F at the three tabulated precisions, with the window maxima.
    Table1(Args),
    /// The epsilon in [--x-min, --x-max] whose F is closest to --target.
    Invert(Args),
    /// Closed form against quadrature, and the Table I check.
    Selftest(Args),
}

impl Command {
    pub fn args(&self) -> &Args {
        match self {
            Command::Point(a) | Command::Sweep(a) | Command::Table1(a) | Command::Invert(a) | Command::Selftest(a) => a,
        }
    }
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Args {
    /// Inverse acceleration omega0/a; a comma-separated list, `inf` for inertial.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub alpha: Option<Vec<f64>>,
    /// Detuning R omega0.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Detuning from the first resonance, x - xi_01.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Lower grid bound: x, or epsilon for fig4 and invert.
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Radial modes summed explicitly.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Radial position of the atom as a fraction of R.
    #[arg(long)]
    pub rho_frac: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// csv, json or svg.
    #[arg(long)]
    pub format: Option<OutputFormat>,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sweep mode: fig2, fig3 or fig4.
    #[arg(long)]
    pub mode: Option<SweepKind>,
    /// Plot log10 |y| in SVG output.
    #[arg(long)]
    pub log_y: bool,
    /// Target F for invert.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<f64>,
    /// Settings file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Args {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            alpha: self.alpha.clone(),
            x: self.x,
            eps: self.eps,
            x_min: self.x_min,
            x_max: self.x_max,
            points: self.points,
            n_max: self.n_max,
            rho_frac: self.rho_frac,
            rel_tol: self.rel_tol,
            format: self.format,
            out: self.out.clone(),
            mode: self.mode,
            log_y: self.log_y.then_some(true),
            target: self.target,
        }
    }

    /// Flags over the config file over defaults.
    pub fn settings(&self) -> Result<Settings> {
        let file = match &self.config {
            Some(path) => load_config(path)?,
            None => Overrides::default(),
        };
        Ok(self.overrides().over(file).resolve())
    }
}

fn xi01() -> Result<f64> {
    Ok(bessel_j_zero(0, 1)?)
}

fn writer(s: &Settings) -> Result<Box<dyn Write>> {
    Ok(match &s.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn write_rows(rows: &[SweepRow], s: &Settings, plot: PlotOptions) -> Result<()> {
    let mut out = writer(s)?;
    emit_output(rows, s.format, &plot, &mut out)?;
    out.flush()?;
    for r in rows.iter().filter(|r| !r.is_ok()) {
        warn!("{} at {:e}, alpha {:e}", r.flags, r.x_or_epsilon, r.alpha);
    }
    Ok(())
}

fn request(mode: SweepMode, s: &Settings) -> SweepRequest {
    SweepRequest {
        alphas: s.alphas.clone(),
        points: s.points,
        rho_frac: s.rho_frac,
        // off-axis points need the angular modes
        m_max: if s.rho_frac == 0.0 { 0 } else { 8 },
        n_max: s.n_max,
        quadrature: s.quadrature(),
        output_path: s.out.clone(),
        ..SweepRequest::new(mode)
    }
}

fn point(s: &Settings) -> Result<()> {
    let (x, label) = match (s.x, s.eps) {
        (Some(x), None) => (x, x),
        (None, Some(e)) => (xi01()? + e, e),
        _ => bail!("point needs exactly one of --x and --eps"),
    };
    let req = request(SweepMode::SinglePoint, s);
    req.validate()?;
    let rows: Vec<SweepRow> = s.alphas.par_iter().map(|&a| evaluate_point(x, label, a, &req)).collect();
    write_rows(&rows, s, PlotOptions::default())
}

fn sweep(s: &Settings) -> Result<()> {
    let xi1 = xi01()?;
    let (mode, bounds, y) = match s.mode {
        SweepKind::Fig2 => (SweepMode::Fig2Inertial, (1.5, 9.0), YColumn::Delta0),
        SweepKind::Fig3 => (SweepMode::Fig3Difference, (2.2, 6.0), YColumn::Difference),
        SweepKind::Fig4 => (SweepMode::Fig4Enhancement, (-1e-2 * xi1, 1e-2 * xi1), YColumn::F),
    };
    let req = SweepRequest {
        x_min: s.x_min.unwrap_or(bounds.0),
        x_max: s.x_max.unwrap_or(bounds.1),
        ..request(mode, s)
    };
    info!("{mode:?} over ({}, {}), {} points, alpha {:?}", req.x_min, req.x_max, req.points, req.alphas);
    let out = run_sweep(&req)?;
    let markers = if s.mode == SweepKind::Fig4 { vec![0.0] } else { out.resonances.clone() };
    write_rows(&out.rows, s, PlotOptions { y, log_y: s.log_y, markers })
}

fn table1_config(s: &Settings) -> Table1Config {
    Table1Config { n_max: s.n_max, quadrature: s.quadrature(), ..Table1Config::default() }
}

const TABLE1_HEADER: &str = "alpha,precision,F_reference,F_at,F_at_below,F_max,eps_max,uv_cutoff,within_3x";

fn table1_line(r: &Table1Row) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.alpha,
        r.precision,
        r.f_reference,
        r.f_at,
        r.f_at_below,
        r.f_max,
        r.eps_max,
        r.uv_cutoff,
        r.within(3.0)
    )
}

fn table1(s: &Settings) -> Result<()> {
    let rows = reproduce_table1_with(&table1_config(s))?;
    let mut out = writer(s)?;
    match s.format {
        OutputFormat::Csv => {
            writeln!(out, "{TABLE1_HEADER}")?;
            for r in &rows {
                writeln!(out, "{}", table1_line(r))?;
            }
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
        OutputFormat::Svg => bail!("table1 output is csv or json"),
    }
    out.flush()?;
    Ok(())
}

fn invert(s: &Settings) -> Result<()> {
    let xi1 = xi01()?;
    let Some(target) = s.target else { bail!("invert needs --target") };
    if s.alphas.len() != 1 {
        bail!("invert takes a single --alpha");
    }
    let req = SweepRequest {
        x_min: s.x_min.unwrap_or(1e-8 * xi1),
        x_max: s.x_max.unwrap_or(1e-3 * xi1),
        f_target: Some(target),
        uv_cutoff: None,
        ..request(SweepMode::InverseDesign, s)
    };
    let rows = run_sweep(&req)?.rows;
    if rows.iter().any(|r| r.flags == "not_achievable") {
        warn!("F = {target} not reached in ({:e}, {:e}); the closest point is reported", req.x_min, req.x_max);
    }
    write_rows(&rows, s, PlotOptions { y: YColumn::F, log_y: s.log_y, markers: vec![] })
}

/// Prints one line per check; false if any failed.
fn selftest(s: &Settings) -> Result<bool> {
    let mut ok = true;
    let mut report = |pass: bool, what: String| {
        println!("{} {what}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    };

    let checks = oracle_equivalence(20, s.n_max, &s.quadrature())?;
    let worst = checks.iter().map(|c| c.rel_diff).fold(0.0, f64::max);
    report(worst <= 1e-5, format!("closed form vs quadrature, 20 detunings: max relative difference {worst:.2e}"));

    let xi = resonance_markers()?;
    for (n, want) in [(1, 2.404825557695773), (2, 5.520078110286311)] {
        let got = xi[n - 1];
        report((got - want).abs() <= 1e-10, format!("xi_0{n} = {got}"));
    }

    for r in reproduce_table1_with(&table1_config(s))? {
        report(
            r.within(3.0),
            format!(
                "Table I alpha = {:e}, dR/R0 = {:e}: F at precision {:.3}, window max {:.3} at eps {:.2e}, tabulated {}",
                r.alpha, r.precision, r.f_at, r.f_max, r.eps_max, r.f_reference
            ),
        );
    }
    Ok(ok)
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV} = '{v}' is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    init_threads()?;
    let s = cli.command.args().settings()?;
    match &cli.command {
        Command::Point(_) => point(&s)?,
        Command::Sweep(_) => sweep(&s)?,
        Command::Table1(_) => table1(&s)?,
        Command::Invert(_) => invert(&s)?,
        Command::Selftest(_) => {
            return Ok(if selftest(&s)? { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}
