//! Box-constrained maximum likelihood and a Monte-Carlo check of its
//! asymptotic normality.
//!
//! The optimizer works in scaled coordinates
//! `y = ((μ - m₀)/s₀, log(σ/s₀), α, β)` where `m₀` is the sample median and
//! `s₀` half the interquartile range. Both are equivariant under `a + b·x`, so
//! the optimizer path is too.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{density_first_many, pdf_many, QuadratureConfig};
use crate::error::{Result, StableError};
use crate::fisher::fisher_generic;
use crate::linalg::{spd_inverse, Mat4};
use crate::params::{ParamIndex, StableParams};
use crate::sampler::{sample, SampleSpec};
use crate::score::{scores_at, DENSITY_FLOOR};

/// Closed parameter box, ordered `(μ, σ, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitBox {
    pub lower: [f64; 4],
    pub upper: [f64; 4],
}

impl FitBox {
    /// `μ ∈ m₀ ± 10 s₀`, `σ ∈ [10⁻³ s₀, 10³ s₀]`, `α ∈ [0.2, 1.95]`, `β ∈ [-0.95, 0.95]`.
    pub fn around(m0: f64, s0: f64) -> Self {
        Self {
            lower: [m0 - 10.0 * s0, 1e-3 * s0, 0.2, -0.95],
            upper: [m0 + 10.0 * s0, 1e3 * s0, 1.95, 0.95],
        }
    }

    pub fn default_for(data: &[f64]) -> Result<Self> {
        let (m0, s0) = robust_center_scale(data)?;
        Ok(Self::around(m0, s0))
    }

    /// The box must sit inside the open parameter space.
    pub fn validate(&self) -> Result<()> {
        let lo = StableParams::new(self.lower[0], self.lower[1], self.lower[2], self.lower[3]);
        let hi = StableParams::new(self.upper[0], self.upper[1], self.upper[2], self.upper[3]);
        let ordered = (0..4).all(|i| self.lower[i] < self.upper[i]);
        if !ordered || !lo.is_interior() || !hi.is_interior() || self.upper[2] >= 2.0 {
            return Err(StableError::Domain(format!("fit box must be ordered and strictly interior: {self:?}")));
        }
        Ok(())
    }

    pub fn contains(&self, p: &StableParams) -> bool {
        let v = p.to_vec().0;
        (0..4).all(|i| v[i] >= self.lower[i] && v[i] <= self.upper[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    /// `None` uses [`FitBox::default_for`] on the data.
    pub bounds: Option<FitBox>,
    /// Skips the grid scan when set.
    pub init: Option<StableParams>,
    pub max_iter: usize,
    /// Bound on the projected gradient of the mean log-likelihood in scaled coordinates.
    pub grad_tol: f64,
    pub quad: QuadratureConfig,
    /// Use the observed information `-mean ℓ_θθ` instead of the expected one.
    pub observed_info: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            bounds: None,
            init: None,
            max_iter: 500,
            grad_tol: 1e-7,
            quad: QuadratureConfig::default(),
            observed_info: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    #[serde(flatten)]
    pub estimate: StableParams,
    /// Total log-likelihood `n·L_n(θ̂)`.
    pub loglik: f64,
    /// `I(θ̂)⁻¹/n`; absent when the information matrix is not invertible.
    pub cov: Option<Mat4>,
    pub stderr: Option<[f64; 4]>,
    pub n: usize,
    pub converged: bool,
    pub at_boundary: [bool; 4],
    pub iterations: usize,
    /// Projected gradient norm at the estimate.
    pub grad_norm: f64,
}

impl FitResult {
    /// Covariance comes from a boundary estimate, where the normal limit does not apply.
    pub fn cov_caveat(&self) -> bool {
        self.at_boundary.iter().any(|&b| b)
    }
}

/// Median and half the interquartile range. Falls back to half the range when
/// the quartiles coincide.
pub fn robust_center_scale(data: &[f64]) -> Result<(f64, f64)> {
    if data.len() < 5 {
        return Err(StableError::Data(format!("need at least 5 observations, got {}", data.len())));
    }
    if let Some(x) = data.iter().find(|x| !x.is_finite()) {
        return Err(StableError::Data(format!("non-finite observation {x}")));
    }
    let mut s = data.to_vec();
    s.sort_by(f64::total_cmp);
    let q = |p: f64| {
        let h = p * (s.len() - 1) as f64;
        let (i, fr) = (h.floor() as usize, h.fract());
        if i + 1 < s.len() {
            s[i] + fr * (s[i + 1] - s[i])
        } else {
            s[i]
        }
    };
    let m0 = q(0.5);
    let mut s0 = 0.5 * (q(0.75) - q(0.25));
    if s0 <= 0.0 {
        s0 = 0.5 * (s[s.len() - 1] - s[0]);
    }
    if !(s0 > 0.0) {
        return Err(StableError::Data("all observations are equal".into()));
    }
    Ok((m0, s0))
}

/// Mean log-density `L_n(θ)`.
pub fn loglik(data: &[f64], p: &StableParams, quad: &QuadratureConfig) -> Result<f64> {
    if data.is_empty() {
        return Err(StableError::Data("empty data".into()));
    }
    let p = p.checked_interior()?;
    let fs = pdf_many(data, &p, quad)?;
    let mut total = 0.0;
    for (&x, &f) in data.iter().zip(&fs) {
        if !(f >= DENSITY_FLOOR) {
            return Err(StableError::DensityFloor { x, value: f });
        }
        total += f.ln();
    }
    Ok(total / data.len() as f64)
}

/// Mean log-likelihood and its gradient.
fn loglik_grad(data: &[f64], p: &StableParams, quad: &QuadratureConfig) -> Result<(f64, [f64; 4])> {
    let d = density_first_many(data, p, quad)?;
    let mut l = 0.0;
    let mut g = [0.0; 4];
    for (&x, v) in data.iter().zip(&d) {
        if !(v.f >= DENSITY_FLOOR) {
            return Err(StableError::DensityFloor { x, value: v.f });
        }
        l += v.f.ln();
        for i in 0..4 {
            g[i] += v.grad.0[i] / v.f;
        }
    }
    let n = data.len() as f64;
    Ok((l / n, g.map(|v| v / n)))
}

/// Scaled coordinates and the negated objective.
struct Problem<'a> {
    data: &'a [f64],
    quad: QuadratureConfig,
    m0: f64,
    s0: f64,
    lo: [f64; 4],
    hi: [f64; 4],
}

/// Function values closer than this are treated as equal by the line search.
const NOISE: f64 = 1e-12;

impl Problem<'_> {
    fn to_params(&self, y: &[f64; 4]) -> StableParams {
        StableParams::new(self.m0 + self.s0 * y[0], self.s0 * y[1].exp(), y[2], y[3])
    }

    fn to_y(&self, p: &StableParams) -> [f64; 4] {
        self.clamp([(p.mu - self.m0) / self.s0, (p.sigma / self.s0).ln(), p.alpha, p.beta])
    }

    fn clamp(&self, y: [f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| y[i].clamp(self.lo[i], self.hi[i]))
    }

    /// `-L_n`, with points outside the support mapped to `+∞`.
    fn value(&self, y: &[f64; 4]) -> Result<f64> {
        match loglik(self.data, &self.to_params(y), &self.quad) {
            Ok(l) => Ok(-l),
            Err(StableError::DensityFloor { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    }

    /// `-L_n` and its gradient in `y`.
    fn value_grad(&self, y: &[f64; 4]) -> Result<Option<(f64, [f64; 4])>> {
        let p = self.to_params(y);
        match loglik_grad(self.data, &p, &self.quad) {
            Ok((l, g)) => Ok(Some((-l, [-self.s0 * g[0], -p.sigma * g[1], -g[2], -g[3]]))),
            Err(StableError::DensityFloor { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Gradient with components that push against an active bound removed.
    fn projected(&self, y: &[f64; 4], g: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| {
            let at_lo = y[i] <= self.lo[i] && g[i] > 0.0;
            let at_hi = y[i] >= self.hi[i] && g[i] < 0.0;
            if at_lo || at_hi {
                0.0
            } else {
                g[i]
            }
        })
    }
}

fn inf_norm(v: &[f64; 4]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn identity() -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }))
}

/// Nelder–Mead on the box, used when the quasi-Newton line search stalls.
fn nelder_mead(pr: &Problem, start: [f64; 4], f_start: f64, evals: usize) -> Result<([f64; 4], f64)> {
    let mut simplex: Vec<([f64; 4], f64)> = vec![(start, f_start)];
    for i in 0..4 {
        let mut y = start;
        let step = 0.05 * (pr.hi[i] - pr.lo[i]).min(2.0);
        y[i] = if y[i] + step <= pr.hi[i] { y[i] + step } else { y[i] - step };
        simplex.push((y, pr.value(&y)?));
    }
    let mut used = 4;
    while used < evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[4].1 - simplex[0].1;
        if spread.abs() < NOISE {
            break;
        }
        let centroid: [f64; 4] = std::array::from_fn(|i| simplex[..4].iter().map(|s| s.0[i]).sum::<f64>() / 4.0);
        let worst = simplex[4];
        let along = |t: f64| pr.clamp(std::array::from_fn(|i| centroid[i] + t * (worst.0[i] - centroid[i])));
        let yr = along(-1.0);
        let fr = pr.value(&yr)?;
        used += 1;
        if fr < simplex[0].1 {
            let ye = along(-2.0);
            let fe = pr.value(&ye)?;
            used += 1;
            simplex[4] = if fe < fr { (ye, fe) } else { (yr, fr) };
        } else if fr < simplex[3].1 {
            simplex[4] = (yr, fr);
        } else {
            let yc = along(if fr < worst.1 { -0.5 } else { 0.5 });
            let fc = pr.value(&yc)?;
            used += 1;
            if fc < worst.1.min(fr) {
                simplex[4] = (yc, fc);
            } else {
                let best = simplex[0].0;
                for s in simplex.iter_mut().skip(1) {
                    s.0 = std::array::from_fn(|i| best[i] + 0.5 * (s.0[i] - best[i]));
                    s.1 = pr.value(&s.0)?;
                }
                used += 4;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(simplex[0])
}

/// Best point of a 5×5 (α, β) scan plus `(1.5, 0)`, at the robust location and scale.
fn grid_start(pr: &Problem) -> Result<[f64; 4]> {
    let mut cands = vec![[0.0, 0.0, 1.5f64.clamp(pr.lo[2], pr.hi[2]), 0.0f64.clamp(pr.lo[3], pr.hi[3])]];
    for i in 0..5 {
        for j in 0..5 {
            let a = pr.lo[2] + (i as f64 + 0.5) / 5.0 * (pr.hi[2] - pr.lo[2]);
            let b = pr.lo[3] + (j as f64 + 0.5) / 5.0 * (pr.hi[3] - pr.lo[3]);
            cands.push([0.0, 0.0, a, b]);
        }
    }
    let mut best = None;
    for y in cands {
        let y = pr.clamp(y);
        let f = pr.value(&y)?;
        if best.is_none_or(|(_, fb)| f < fb) {
            best = Some((y, f));
        }
    }
    match best {
        Some((y, f)) if f.is_finite() => Ok(y),
        _ => Err(StableError::DegenerateFit("no starting point has positive likelihood".into())),
    }
}

struct Optimum {
    y: [f64; 4],
    f: f64,
    grad_norm: f64,
    converged: bool,
    iterations: usize,
}

/// Projected BFGS with Armijo backtracking. Falls back to Nelder–Mead after
/// two consecutive line-search failures.
fn minimize(pr: &Problem, y0: [f64; 4], max_iter: usize, grad_tol: f64) -> Result<Optimum> {
    let mut y = y0;
    let (mut f, mut g) = pr
        .value_grad(&y)?
        .ok_or_else(|| StableError::DegenerateFit("starting point has zero likelihood".into()))?;
    let mut h = identity();
    let mut failures = 0;
    let mut simplex_used = false;
    for iter in 0..max_iter {
        let pg = pr.projected(&y, &g);
        let gn = inf_norm(&pg);
        if gn < grad_tol {
            return Ok(Optimum { y, f, grad_norm: gn, converged: true, iterations: iter });
        }
        let free: [bool; 4] = std::array::from_fn(|i| pg[i] != 0.0 || g[i] == 0.0);
        let mut d: [f64; 4] = std::array::from_fn(|i| {
            if free[i] {
                -(0..4).filter(|&j| free[j]).map(|j| h[i][j] * g[j]).sum::<f64>()
            } else {
                0.0
            }
        });
        if (0..4).map(|i| d[i] * g[i]).sum::<f64>() >= 0.0 {
            h = identity();
            d = pg.map(|v| -v);
        }
        let t0 = (0.5 / inf_norm(&d)).min(1.0);
        let mut t = t0;
        let mut step = None;
        for _ in 0..40 {
            let yt = pr.clamp(std::array::from_fn(|i| y[i] + t * d[i]));
            let s: [f64; 4] = std::array::from_fn(|i| yt[i] - y[i]);
            if inf_norm(&s) == 0.0 {
                break;
            }
            let slope: f64 = (0..4).map(|i| g[i] * s[i]).sum();
            if let Some((ft, gt)) = pr.value_grad(&yt)? {
                if ft <= f + 1e-4 * slope + NOISE * (1.0 + f.abs()) {
                    step = Some((yt, ft, gt, s));
                    break;
                }
            }
            t *= 0.5;
        }
        match step {
            Some((yt, ft, gt, s)) => {
                debug_assert!(ft <= f + NOISE * (1.0 + f.abs()), "objective increased: {f} -> {ft}");
                let yk: [f64; 4] = std::array::from_fn(|i| gt[i] - g[i]);
                let sy: f64 = (0..4).map(|i| s[i] * yk[i]).sum();
                if sy > 1e-12 * inf_norm(&s) * inf_norm(&yk) && sy > 0.0 {
                    bfgs_update(&mut h, &s, &yk, sy);
                }
                y = yt;
                f = ft;
                g = gt;
                failures = 0;
            }
            None => {
                failures += 1;
                h = identity();
                if failures < 2 {
                    continue;
                }
                if simplex_used {
                    return Ok(Optimum { y, f, grad_norm: gn, converged: false, iterations: iter });
                }
                simplex_used = true;
                let (ys, fs) = nelder_mead(pr, y, f, 200)?;
                if fs < f {
                    if let Some((fv, gv)) = pr.value_grad(&ys)? {
                        y = ys;
                        f = fv;
                        g = gv;
                    }
                }
                failures = 0;
            }
        }
    }
    Err(StableError::NonConvergence { iterations: max_iter })
}

/// Inverse-Hessian BFGS update.
fn bfgs_update(h: &mut Mat4, s: &[f64; 4], y: &[f64; 4], sy: f64) {
    let rho = 1.0 / sy;
    let hy: [f64; 4] = std::array::from_fn(|i| (0..4).map(|j| h[i][j] * y[j]).sum());
    let yhy: f64 = (0..4).map(|i| y[i] * hy[i]).sum();
    for i in 0..4 {
        for j in 0..4 {
            h[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}

/// Maximizes `L_n` over the box.
pub fn fit(data: &[f64], cfg: &FitConfig) -> Result<FitResult> {
    cfg.quad.validate()?;
    if !(cfg.grad_tol > 0.0) || cfg.max_iter == 0 {
        return Err(StableError::Domain("grad_tol must be positive and max_iter at least 1".into()));
    }
    let (m0, s0) = robust_center_scale(data)?;
    let bx = cfg.bounds.unwrap_or_else(|| FitBox::around(m0, s0));
    bx.validate()?;
    let mut pr = Problem {
        data,
        quad: cfg.quad,
        m0,
        s0,
        lo: [0.0; 4],
        hi: [0.0; 4],
    };
    pr.lo = pr.to_y_unclamped(&bx.lower);
    pr.hi = pr.to_y_unclamped(&bx.upper);
    let y0 = match cfg.init {
        Some(p) => pr.to_y(&p.checked_interior()?),
        None => grid_start(&pr)?,
    };
    let opt = minimize(&pr, y0, cfg.max_iter, cfg.grad_tol)?;
    let est = pr.to_params(&opt.y);
    let n = data.len();
    let at_boundary = std::array::from_fn(|i| opt.y[i] - pr.lo[i] < 1e-6 || pr.hi[i] - opt.y[i] < 1e-6);
    let info = if cfg.observed_info {
        observed_information(data, &est, &cfg.quad)?
    } else {
        fisher_generic(&est, &cfg.quad)?.to_array()
    };
    let cov = spd_inverse(&info).map(|m| m.map(|r| r.map(|v| v / n as f64)));
    Ok(FitResult {
        estimate: est,
        loglik: -opt.f * n as f64,
        stderr: cov.map(|c| std::array::from_fn(|i| c[i][i].sqrt())),
        cov,
        n,
        converged: opt.converged,
        at_boundary,
        iterations: opt.iterations,
        grad_norm: opt.grad_norm,
    })
}

impl Problem<'_> {
    fn to_y_unclamped(&self, v: &[f64; 4]) -> [f64; 4] {
        [(v[0] - self.m0) / self.s0, (v[1] / self.s0).ln(), v[2], v[3]]
    }
}

/// `-mean ℓ_θθ` over the data.
pub fn observed_information(data: &[f64], p: &StableParams, quad: &QuadratureConfig) -> Result<Mat4> {
    let s = scores_at(data, p, quad)?;
    let n = data.len() as f64;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| -s.iter().map(|b| b.score_jac[(ParamIndex::ALL[i], ParamIndex::ALL[j])]).sum::<f64>() / n)
    }))
}

/// Summary of repeated fits on simulated data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub theta0: StableParams,
    pub n: usize,
    pub replicates: usize,
    /// Replicates whose fit returned an error.
    pub failures: usize,
    /// Successful fits with at least one coordinate on the box edge.
    pub boundary_hits: usize,
    /// `mean(θ̂) - θ₀`.
    pub mean_error: [f64; 4],
    /// Sample covariance of `√n (θ̂ - θ₀)`.
    pub sample_cov_scaled: Mat4,
    /// `I(θ₀)⁻¹`.
    pub target_cov: Mat4,
    /// Share of replicates whose 95% interval `θ̂ ± 1.96·stderr` covers θ₀.
    pub coverage_95: [f64; 4],
}

/// Seed of replicate `r`, drawn from its own stream so replicates are independent.
pub fn replicate_seed(seed: u64, r: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    rng.next_u64()
}

/// Fits `replicates` simulated data sets of size `n` drawn at `theta0`.
pub fn mc_normality(theta0: &StableParams, n: usize, replicates: usize, seed: u64, cfg: &FitConfig) -> Result<McReport> {
    let theta0 = theta0.checked_interior()?;
    if replicates < 50 {
        return Err(StableError::Domain(format!("need at least 50 replicates, got {replicates}")));
    }
    if n < 5 {
        return Err(StableError::Domain(format!("sample size {n} is below 5")));
    }
    let target = spd_inverse(&fisher_generic(&theta0, &cfg.quad)?.to_array())
        .ok_or_else(|| StableError::DegenerateFit("Fisher information at θ₀ is not positive definite".into()))?;
    let fits: Vec<Result<FitResult>> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let data = sample(&SampleSpec {
                n,
                seed: replicate_seed(seed, r),
                params: theta0,
            })?;
            fit(&data, cfg)
        })
        .collect();
    let ok: Vec<&FitResult> = fits.iter().filter_map(|f| f.as_ref().ok()).collect();
    let failures = replicates - ok.len();
    if failures * 20 > replicates {
        let first = fits.iter().find_map(|f| f.as_ref().err()).cloned();
        return Err(StableError::DegenerateFit(format!(
            "{failures} of {replicates} replicates failed; first error: {}",
            first.map(|e| e.to_string()).unwrap_or_default()
        )));
    }
    let m = ok.len() as f64;
    let t0 = theta0.to_vec().0;
    let est: Vec<[f64; 4]> = ok.iter().map(|f| f.estimate.to_vec().0).collect();
    let mean: [f64; 4] = std::array::from_fn(|i| est.iter().map(|e| e[i]).sum::<f64>() / m);
    let sample_cov_scaled = std::array::from_fn(|i| {
        std::array::from_fn(|j| n as f64 * est.iter().map(|e| (e[i] - mean[i]) * (e[j] - mean[j])).sum::<f64>() / (m - 1.0))
    });
    let coverage_95 = std::array::from_fn(|i| {
        let hits = ok
            .iter()
            .filter(|f| f.stderr.is_some_and(|s| (f.estimate.to_vec().0[i] - t0[i]).abs() <= 1.96 * s[i]))
            .count();
        hits as f64 / m
    });
    Ok(McReport {
        theta0,
        n,
        replicates,
        failures,
        boundary_hits: ok.iter().filter(|f| f.cov_caveat()).count(),
        mean_error: std::array::from_fn(|i| mean[i] - t0[i]),
        sample_cov_scaled,
        target_cov: target,
        coverage_95,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn loglik_closed_forms() {
        let q = QuadratureConfig::default();
        let c = StableParams::CAUCHY;
        assert!((loglik(&[0.0], &c, &q).unwrap() + PI.ln()).abs() < 1e-10);
        assert!((loglik(&[-1.0, 1.0], &c, &q).unwrap() + (2.0 * PI).ln()).abs() < 1e-10);
        let p = StableParams::new(0.0, 1.0, 1.3, 0.4);
        let shifted = StableParams::new(2.5, 1.0, 1.3, 0.4);
        let xs = [-1.0, 0.2, 3.0];
        let ys = xs.map(|x| x + 2.5);
        assert!((loglik(&xs, &p, &q).unwrap() - loglik(&ys, &shifted, &q).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn data_errors() {
        let cfg = FitConfig::default();
        assert!(matches!(fit(&[1.0, 2.0, 3.0], &cfg), Err(StableError::Data(_))));
        assert!(matches!(fit(&[4.0; 10], &cfg), Err(StableError::Data(_))));
        assert!(matches!(fit(&[1.0, 2.0, f64::NAN, 3.0, 4.0], &cfg), Err(StableError::Data(_))));
    }

    #[test]
    fn robust_scale_of_cauchy_quartiles() {
        let (m, s) = robust_center_scale(&[-1.0, -1.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!((m, s), (0.0, 1.0));
    }

    #[test]
    fn bfgs_update_satisfies_secant() {
        let mut h = identity();
        let s = [0.3, -0.1, 0.2, 0.05];
        let y = [1.0, 0.4, -0.2, 0.3];
        let sy: f64 = (0..4).map(|i| s[i] * y[i]).sum();
        bfgs_update(&mut h, &s, &y, sy);
        for i in 0..4 {
            let hy: f64 = (0..4).map(|j| h[i][j] * y[j]).sum();
            assert!((hy - s[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn replicate_seeds_differ() {
        assert_ne!(replicate_seed(1, 0), replicate_seed(1, 1));
        assert_eq!(replicate_seed(1, 7), replicate_seed(1, 7));
    }
}
