//! Log-likelihood of one observation and its derivatives.
//!
//! With `ℓ = log f`:
//!
//! ```text
//! ℓ_i   = f_i / f
//! ℓ'_i  = (f'_i f - f_i f') / f²
//! ℓ_ij  = (f_ij f - f_i f_j) / f²
//! ```
//!
//! all built from one [`DensityBundle`].

use rayon::prelude::*;

use crate::density::{density_bundle, density_bundles, geometric_grid, ls_slope, DensityBundle, QuadratureConfig};
use crate::error::{Result, StableError};
use crate::params::{ParamIndex, ParamVec, StableParams, SymMatrix4};

/// Densities below this are treated as numerically outside the support.
pub const DENSITY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreBundle {
    pub loglik: f64,
    pub score: ParamVec<f64>,
    pub score_x: ParamVec<f64>,
    pub score_jac: SymMatrix4<f64>,
}

impl ScoreBundle {
    /// Combines density derivatives at `x` into score quantities.
    pub fn from_density(x: f64, b: &DensityBundle) -> Result<Self> {
        let f = b.f;
        if !(f >= DENSITY_FLOOR) {
            return Err(StableError::DensityFloor { x, value: f });
        }
        let score = ParamVec(b.grad.0.map(|g| g / f));
        let lx = b.f_x / f;
        let score_x = ParamVec(std::array::from_fn(|i| b.grad_x.0[i] / f - score.0[i] * lx));
        let score_jac = SymMatrix4::from_fn(|i, j| b.hess[(i, j)] / f - score[i] * score[j]);
        Ok(Self {
            loglik: f.ln(),
            score,
            score_x,
            score_jac,
        })
    }
}

/// `ℓ`, `ℓ_θ`, `ℓ'_θ` and `ℓ_θθ` at `x`.
pub fn score_at(x: f64, p: &StableParams, cfg: &QuadratureConfig) -> Result<ScoreBundle> {
    ScoreBundle::from_density(x, &density_bundle(x, p, cfg)?)
}

/// [`score_at`] over many points.
pub fn scores_at(xs: &[f64], p: &StableParams, cfg: &QuadratureConfig) -> Result<Vec<ScoreBundle>> {
    let bundles = density_bundles(xs, p, cfg)?;
    xs.par_iter()
        .zip(bundles.par_iter())
        .map(|(&x, b)| ScoreBundle::from_density(x, b))
        .collect()
}

/// One scalar out of a [`ScoreBundle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreQuantity {
    Score(ParamIndex),
    ScoreX(ParamIndex),
    Jacobian(ParamIndex, ParamIndex),
}

impl ScoreQuantity {
    pub fn get(self, s: &ScoreBundle) -> f64 {
        match self {
            ScoreQuantity::Score(i) => s.score[i],
            ScoreQuantity::ScoreX(i) => s.score_x[i],
            ScoreQuantity::Jacobian(i, j) => s.score_jac[(i, j)],
        }
    }

    /// Known tail bound `O(|x|^p log^q |x|)` as `(p, q)`.
    pub fn tail_order(self) -> (f64, i32) {
        use ParamIndex::*;
        let key = |i: ParamIndex| match i {
            Mu => 0,
            Sigma => 1,
            Alpha => 2,
            Beta => 3,
        };
        match self {
            ScoreQuantity::Score(i) => [(-1.0, 0), (0.0, 0), (0.0, 1), (0.0, 0)][key(i)],
            // ℓ'_i = -ℓ_μi
            ScoreQuantity::ScoreX(i) => [(-2.0, 0), (-1.0, 0), (-1.0, 1), (-1.0, 0)][key(i)],
            ScoreQuantity::Jacobian(i, j) => {
                let (a, b) = if key(i) <= key(j) { (i, j) } else { (j, i) };
                match (a, b) {
                    (Mu, Mu) => (-2.0, 0),
                    (Mu, Alpha) => (-1.0, 1),
                    (Mu, _) => (-1.0, 0),
                    (Sigma, Alpha) => (0.0, 1),
                    (Sigma, _) => (0.0, 0),
                    (Alpha, Alpha) => (0.0, 2),
                    (Alpha, Beta) => (0.0, 1),
                    _ => (0.0, 0),
                }
            }
        }
    }
}

/// Result of [`score_tail_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct TailProbe {
    pub xs: Vec<f64>,
    /// `ℓ(x) / (|x|^p log^q |x|)` with `(p, q)` the known tail order.
    pub statistic: Vec<f64>,
    /// Least-squares slope of the statistic against `log |x|`.
    pub slope: f64,
    pub sup: f64,
}

/// Normalizes a score quantity by its known tail order along `x_grid` and
/// reports its trend; a bounded quantity has slope near 0.
pub fn score_tail_probe(p: &StableParams, which: ScoreQuantity, x_grid: &[f64], cfg: &QuadratureConfig) -> Result<TailProbe> {
    if x_grid.len() < 3 || x_grid.iter().any(|x| !(x.abs() > 1.0)) {
        return Err(StableError::Domain("tail probe needs at least 3 points with |x| > 1".into()));
    }
    let (pw, lq) = which.tail_order();
    let scores = scores_at(x_grid, p, cfg)?;
    let mut lx = Vec::with_capacity(x_grid.len());
    let mut stat = Vec::with_capacity(x_grid.len());
    for (x, s) in x_grid.iter().zip(&scores) {
        let ax = x.abs();
        let l = ax.ln();
        lx.push(l);
        stat.push(which.get(s) / (ax.powf(pw) * l.powi(lq)));
    }
    Ok(TailProbe {
        xs: x_grid.to_vec(),
        slope: ls_slope(&lx, &stat),
        sup: stat.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        statistic: stat,
    })
}

/// Geometric grid of `n` points on `[lo, hi]`, convenient for tail probes.
pub fn tail_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    geometric_grid(lo, hi, n)
}
