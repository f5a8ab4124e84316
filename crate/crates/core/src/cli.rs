//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage and validation errors, 3 when a
//! numerical routine fails.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::density::{density_first_many, QuadratureConfig};
use crate::error::StableError;
use crate::fisher::{fisher_cauchy_approx, fisher_exact_cauchy, fisher_generic, FisherMatrix};
use crate::linalg::Mat4;
use crate::mle::{fit, mc_normality, FitConfig};
use crate::params::{ParamIndex, StableParams};
use crate::sampler::{sample, SampleSpec};
use crate::score::scores_at;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "STABLE_M0_THREADS";

#[derive(Debug, Parser)]
#[command(name = "stable-m0", version, about = "Alpha-stable law in the M0 parameterization")]
pub struct Cli {
    /// Emit JSON instead of CSV where both are available.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density and its first derivatives on a grid of x.
    Pdf {
        #[command(flatten)]
        params: ParamArgs,
        /// A value, a comma list, or `start:stop:step`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Log-density and scores on a grid of x.
    Score {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Fisher information matrix.
    Fisher {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Generic)]
        method: MethodArg,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Maximum-likelihood fit of one observation per line.
    Fit {
        data: PathBuf,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-7)]
        grad_tol: f64,
        /// Covariance from the observed instead of the expected information.
        #[arg(long)]
        observed_info: bool,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Random variates, one per line.
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Repeated fits on simulated data versus the normal limit.
    McNormality {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Fisher information at the Cauchy law against reference values.
    Table1 {
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Approximate information for α and β near the Cauchy law against a reference grid.
    Table2 {
        #[command(flatten)]
        quad: QuadArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Generic,
    CauchyApprox,
    Exact,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<StableParams, Failure> {
        Ok(StableParams::new(self.mu, self.sigma, self.alpha, self.beta).checked()?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub quad_abs_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub quad_rel_tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub quad_max_panels: usize,
}

impl QuadArgs {
    fn config(&self) -> Result<QuadratureConfig, Failure> {
        let cfg = QuadratureConfig {
            abs_tol: self.quad_abs_tol,
            rel_tol: self.quad_rel_tol,
            max_panels: self.quad_max_panels,
            ..QuadratureConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<StableError> for Failure {
    fn from(e: StableError) -> Self {
        Self {
            code: if e.is_validation() { EXIT_USAGE } else { EXIT_NUMERIC },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Shortest decimal with 17 significant digits, enough to round-trip any double.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses `a`, `a,b,c` or `start:stop:step` (stop inclusive up to rounding).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("not a number: {s:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect(),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if !(step > 0.0) || !(b >= a) || !a.is_finite() || !b.is_finite() {
                return Err(format!("bad range {spec:?}: need start <= stop and step > 0"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            if count > 10_000_000 {
                return Err(format!("range {spec:?} has too many points"));
            }
            Ok((0..count).map(|i| a + i as f64 * step).collect())
        }
        _ => Err(format!("bad grid {spec:?}: use a value, a comma list, or start:stop:step")),
    }
}

/// One real per line; blank lines and `#` comments are skipped and a single
/// non-numeric first line is taken as a header.
pub fn parse_data(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    let mut seen_first = false;
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            Ok(v) => return Err(format!("line {}: non-finite value {v}", k + 1)),
            Err(_) if !seen_first => {}
            Err(_) => return Err(format!("line {}: not a number: {line:?}", k + 1)),
        }
        seen_first = true;
    }
    Ok(out)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

#[derive(Serialize)]
struct FisherOut {
    method: String,
    mu: f64,
    sigma: f64,
    alpha: f64,
    beta: f64,
    matrix: Mat4,
    err_est: f64,
    approx_warning: bool,
}

fn fisher_for(p: &StableParams, method: MethodArg, cfg: &QuadratureConfig) -> Result<FisherMatrix, Failure> {
    Ok(match method {
        MethodArg::Generic => fisher_generic(p, cfg)?,
        MethodArg::CauchyApprox => fisher_cauchy_approx(p.alpha, p.beta, cfg)?.at_scale(p.sigma),
        MethodArg::Exact => {
            if p.alpha != 1.0 || p.beta != 0.0 {
                return Err(Failure::usage("--method exact requires --alpha 1 --beta 0"));
            }
            fisher_exact_cauchy().at_scale(p.sigma)
        }
    })
}

/// Reference information at the Cauchy law, keyed by parameter pair.
pub const TABLE1: [(ParamIndex, ParamIndex, f64); 10] = {
    use ParamIndex::*;
    [
        (Alpha, Alpha, 0.859),
        (Beta, Beta, 0.348),
        (Sigma, Sigma, 0.5),
        (Mu, Mu, 0.5),
        (Alpha, Beta, 0.0),
        (Alpha, Sigma, -0.135),
        (Alpha, Mu, 0.0),
        (Beta, Sigma, 0.0),
        (Beta, Mu, 0.086),
        (Sigma, Mu, 0.0),
    ]
};

pub const TABLE2_ALPHAS: [f64; 7] = [0.95, 0.99, 0.999, 1.0, 1.001, 1.01, 1.05];
pub const TABLE2_BETAS: [f64; 5] = [0.1, 0.05, 0.01, 0.001, 0.0];
/// Reference `Ĩ_αα`, rows by α and columns by β.
pub const TABLE2_AA: [[f64; 5]; 7] = [
    [1.096, 1.087, 1.084, 1.084, 1.084],
    [0.907, 0.9, 0.898, 0.897, 0.897],
    [0.872, 0.865, 0.863, 0.863, 0.863],
    [0.874, 0.864, 0.86, 0.859, 0.859],
    [0.865, 0.858, 0.855, 0.855, 0.855],
    [0.832, 0.825, 0.823, 0.823, 0.823],
    [0.71, 0.704, 0.702, 0.702, 0.702],
];
/// Reference `Ĩ_ββ`, keeping the three cells misprinted as "3.11" verbatim.
pub const TABLE2_BB: [[f64; 5]; 7] = [
    [0.392, 0.392, 0.391, 0.391, 0.391],
    [0.357, 0.356, 0.356, 0.356, 0.356],
    [0.349, 0.349, 0.349, 0.349, 0.349],
    [0.349, 0.348, 0.348, 0.348, 0.348],
    [0.348, 0.347, 0.347, 0.347, 0.347],
    [0.341, 0.34, 0.34, 0.34, 0.34],
    [0.312, 0.311, 3.11, 3.11, 3.11],
];

/// Cells printed as 3.11 whose intended value is 0.311.
pub fn is_known_erratum(printed: f64) -> bool {
    printed == 3.11
}

/// Reference value for comparison, with the misprint corrected.
pub fn table2_reference(printed: f64) -> f64 {
    if is_known_erratum(printed) {
        0.311
    } else {
        printed
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2Row {
    pub alpha: f64,
    pub beta: f64,
    pub i_aa: f64,
    pub ref_aa: f64,
    pub dev_aa: f64,
    pub i_bb: f64,
    pub ref_bb: f64,
    pub dev_bb: f64,
    pub note: String,
}

/// Tolerance against the three-digit reference values.
pub const TABLE2_TOL: f64 = 5e-3;

pub fn table2_rows(cfg: &QuadratureConfig) -> Result<Vec<Table2Row>, StableError> {
    let cells: Vec<(usize, usize)> = (0..7).flat_map(|i| (0..5).map(move |j| (i, j))).collect();
    cells
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (TABLE2_ALPHAS[i], TABLE2_BETAS[j]);
            let m = fisher_cauchy_approx(a, b, cfg)?;
            let i_aa = m.get(ParamIndex::Alpha, ParamIndex::Alpha);
            let i_bb = m.get(ParamIndex::Beta, ParamIndex::Beta);
            let ref_aa = TABLE2_AA[i][j];
            let ref_bb = table2_reference(TABLE2_BB[i][j]);
            let (dev_aa, dev_bb) = ((i_aa - ref_aa).abs(), (i_bb - ref_bb).abs());
            let mut notes = Vec::new();
            if is_known_erratum(TABLE2_BB[i][j]) {
                notes.push("KNOWN_ERRATUM(printed 3.11)");
            }
            if dev_aa > TABLE2_TOL || dev_bb > TABLE2_TOL {
                notes.push("OUT_OF_TOLERANCE");
            }
            Ok(Table2Row {
                alpha: a,
                beta: b,
                i_aa,
                ref_aa,
                dev_aa,
                i_bb,
                ref_bb,
                dev_bb,
                note: notes.join(";"),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub entry: String,
    pub reference: f64,
    pub generic: f64,
    pub cauchy_approx: f64,
    pub exact: f64,
}

pub fn table1_rows(cfg: &QuadratureConfig) -> Result<Vec<Table1Row>, StableError> {
    let g = fisher_generic(&StableParams::CAUCHY, cfg)?;
    let a = fisher_cauchy_approx(1.0, 0.0, cfg)?;
    let e = fisher_exact_cauchy();
    Ok(TABLE1
        .iter()
        .map(|&(i, j, reference)| Table1Row {
            entry: format!("I_{}_{}", i.name(), j.name()),
            reference,
            generic: g.get(i, j),
            cauchy_approx: a.get(i, j),
            exact: e.get(i, j),
        })
        .collect())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Pdf { params, x, quad } => {
            let p = params.params()?;
            let xs = parse_grid(&x).map_err(Failure::usage)?;
            let d = density_first_many(&xs, &p, &quad.config()?)?;
            if cli.json {
                let rows: Vec<_> = xs
                    .iter()
                    .zip(&d)
                    .map(|(x, v)| serde_json::json!({"x": x, "f": v.f, "f_x": v.f_x, "f_mu": v.grad.0[0], "f_sigma": v.grad.0[1], "f_alpha": v.grad.0[2], "f_beta": v.grad.0[3]}))
                    .collect();
                writeln!(out, "{}", json(&rows))?;
            } else {
                writeln!(out, "x,f,f_x,f_mu,f_sigma,f_alpha,f_beta")?;
                for (x, v) in xs.iter().zip(&d) {
                    let cols: Vec<String> = [*x, v.f, v.f_x].into_iter().chain(v.grad.0).map(fmt17).collect();
                    writeln!(out, "{}", cols.join(","))?;
                }
            }
        }
        Command::Score { params, x, quad } => {
            let p = params.params()?;
            let xs = parse_grid(&x).map_err(Failure::usage)?;
            let s = scores_at(&xs, &p.checked_interior()?, &quad.config()?)?;
            if cli.json {
                let rows: Vec<_> = xs
                    .iter()
                    .zip(&s)
                    .map(|(x, b)| serde_json::json!({"x": x, "loglik": b.loglik, "score": b.score.0, "score_x": b.score_x.0}))
                    .collect();
                writeln!(out, "{}", json(&rows))?;
            } else {
                writeln!(out, "x,loglik,l_mu,l_sigma,l_alpha,l_beta")?;
                for (x, b) in xs.iter().zip(&s) {
                    let cols: Vec<String> = [*x, b.loglik].into_iter().chain(b.score.0).map(fmt17).collect();
                    writeln!(out, "{}", cols.join(","))?;
                }
            }
        }
        Command::Fisher { params, method, quad } => {
            let p = params.params()?;
            let m = fisher_for(&p, method, &quad.config()?)?;
            let o = FisherOut {
                method: m.method.to_string(),
                mu: p.mu,
                sigma: p.sigma,
                alpha: p.alpha,
                beta: p.beta,
                matrix: m.to_array(),
                err_est: m.err_est,
                approx_warning: m.approx_warning,
            };
            writeln!(out, "{}", json(&o))?;
        }
        Command::Fit {
            data,
            max_iter,
            grad_tol,
            observed_info,
            quad,
        } => {
            let text = std::fs::read_to_string(&data).map_err(|e| Failure::usage(format!("{}: {e}", data.display())))?;
            let xs = parse_data(&text).map_err(|e| Failure::usage(format!("{}: {e}", data.display())))?;
            let cfg = FitConfig {
                max_iter,
                grad_tol,
                observed_info,
                quad: quad.config()?,
                ..FitConfig::default()
            };
            let r = fit(&xs, &cfg)?;
            writeln!(out, "{}", json(&r))?;
        }
        Command::Sample { params, n, seed } => {
            let xs = sample(&SampleSpec {
                n,
                seed,
                params: params.params()?,
            })?;
            if cli.json {
                writeln!(out, "{}", json(&xs))?;
            } else {
                for x in xs {
                    writeln!(out, "{}", fmt17(x))?;
                }
            }
        }
        Command::McNormality {
            params,
            n,
            replicates,
            seed,
            quad,
        } => {
            let cfg = FitConfig {
                quad: quad.config()?,
                ..FitConfig::default()
            };
            let r = mc_normality(&params.params()?, n, replicates, seed, &cfg)?;
            writeln!(out, "{}", json(&r))?;
        }
        Command::Table1 { quad } => {
            let rows = table1_rows(&quad.config()?)?;
            let max_dev = |f: fn(&Table1Row) -> f64| rows.iter().map(|r| (f(r) - r.reference).abs()).fold(0.0, f64::max);
            let devs = [max_dev(|r| r.generic), max_dev(|r| r.cauchy_approx), max_dev(|r| r.exact)];
            if cli.json {
                let o = serde_json::json!({"rows": rows, "max_abs_dev": {"generic": devs[0], "cauchy_approx": devs[1], "exact": devs[2]}});
                writeln!(out, "{}", json(&o))?;
            } else {
                writeln!(out, "entry,reference,generic,dev_generic,cauchy_approx,dev_cauchy_approx,exact,dev_exact")?;
                for r in &rows {
                    let v = [r.reference, r.generic, (r.generic - r.reference).abs(), r.cauchy_approx, (r.cauchy_approx - r.reference).abs(), r.exact, (r.exact - r.reference).abs()];
                    writeln!(out, "{},{}", r.entry, v.map(fmt17).join(","))?;
                }
                writeln!(out, "max_abs_dev,,,{},,{},,{}", fmt17(devs[0]), fmt17(devs[1]), fmt17(devs[2]))?;
            }
        }
        Command::Table2 { quad } => {
            let rows = table2_rows(&quad.config()?)?;
            if cli.json {
                writeln!(out, "{}", json(&rows))?;
            } else {
                writeln!(out, "alpha,beta,i_aa,ref_aa,dev_aa,i_bb,ref_bb,dev_bb,note")?;
                for r in &rows {
                    let v = [r.alpha, r.beta, r.i_aa, r.ref_aa, r.dev_aa, r.i_bb, r.ref_bb, r.dev_bb];
                    writeln!(out, "{},{}", v.map(fmt17).join(","), r.note)?;
                }
            }
        }
    }
    Ok(())
}

/// Sizes the global pool from [`THREADS_ENV`] when set.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // a pool may already exist in tests; keep it
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parses `argv` and runs the command; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
