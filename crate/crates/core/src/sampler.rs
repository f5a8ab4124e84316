//! Stable variates in the M0 parameterization.
//!
//! The Chambers–Mallows–Stuck transform produces the standard member in the
//! `S1` form, whose cumulant for `α ≠ 1` is `-t^α (1 - iβ tan(πα/2))`. The M0
//! cumulant differs by the drift `-iβ tan(πα/2) t`, so `X₀ = X₁ - β tan(πα/2)`.
//! At `α = 1` both forms coincide. M0 is a location-scale family, hence
//! `X = μ + σ X₀` for every α.
//!
//! Near α = 1 the shift cancels against the S1 variate, which grows like
//! `1/|α - 1|`; inside `|α - 1| < BRIDGE` the standard variate is interpolated
//! between α = 1 and `1 ± BRIDGE` using the same uniforms.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, StableError};
use crate::params::{tan_half_pi_alpha, StableParams};

const BRIDGE: f64 = 1e-4;
/// Variates per RNG stream; blocks are generated independently.
const BLOCK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub n: usize,
    pub seed: u64,
    pub params: StableParams,
}

/// Standard M0 variate from `V ~ U(-π/2, π/2)` and `W ~ Exp(1)`, no bridging.
fn cms_direct(alpha: f64, beta: f64, v: f64, w: f64) -> f64 {
    if alpha == 1.0 {
        let a = FRAC_PI_2 + beta * v;
        return FRAC_2_PI * (a * v.tan() - beta * (FRAC_PI_2 * w * v.cos() / a).ln());
    }
    let tau = tan_half_pi_alpha(alpha);
    let bt = beta * tau;
    let b = bt.atan() / alpha;
    let s = (1.0 + bt * bt).powf(0.5 / alpha);
    let avb = alpha * (v + b);
    let x1 = s * avb.sin() / v.cos().powf(1.0 / alpha) * ((v - avb).cos() / w).powf((1.0 - alpha) / alpha);
    x1 - bt
}

/// Standard M0 variate, continuous in α.
pub(crate) fn standard_variate(alpha: f64, beta: f64, v: f64, w: f64) -> f64 {
    let h = alpha - 1.0;
    if h != 0.0 && h.abs() < BRIDGE {
        let edge = 1.0 + BRIDGE.copysign(h);
        let x1 = cms_direct(1.0, beta, v, w);
        let xe = cms_direct(edge, beta, v, w);
        return x1 + (h.abs() / BRIDGE) * (xe - x1);
    }
    cms_direct(alpha, beta, v, w)
}

fn draw(rng: &mut ChaCha8Rng, p: &StableParams) -> f64 {
    let u: f64 = loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            break u;
        }
    };
    let v = PI * (u - 0.5);
    let w = -(1.0 - rng.random::<f64>()).ln();
    p.mu + p.sigma * standard_variate(p.alpha, p.beta, v, w)
}

/// `n` i.i.d. variates. Output depends only on `spec`, not on thread count.
pub fn sample(spec: &SampleSpec) -> Result<Vec<f64>> {
    let p = spec.params.checked()?;
    if spec.n == 0 {
        return Err(StableError::Domain("sample size must be at least 1".into()));
    }
    let blocks = spec.n.div_ceil(BLOCK);
    let chunks: Vec<Vec<f64>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(b as u64);
            let len = BLOCK.min(spec.n - b * BLOCK);
            (0..len).map(|_| draw(&mut rng, &p)).collect()
        })
        .collect();
    Ok(chunks.concat())
}
