//! Fisher information of the M0 law.
//!
//! Three routes: the defining integral `∫ f_i f_j / f dx` ([`fisher_generic`]),
//! the single-integral approximation around the Cauchy law
//! ([`fisher_cauchy_approx`]), and closed-form constants at the Cauchy point
//! ([`fisher_exact_cauchy`]).

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::chf::{chf_grad, chf_grad_tderiv};
use crate::density::{QuadratureConfig, StdDensity, FIRST};
use crate::error::{Result, StableError};
use crate::linalg::{cholesky, spd_inverse, Mat4};
use crate::params::{ParamIndex, StableParams, SymMatrix4};
use crate::quadrature::{self, Tolerance};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FisherMethod {
    Generic,
    CauchyApprox,
    ExactCauchy,
}

impl std::fmt::Display for FisherMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FisherMethod::Generic => "generic",
            FisherMethod::CauchyApprox => "cauchy-approx",
            FisherMethod::ExactCauchy => "exact-cauchy",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherMatrix {
    pub entries: SymMatrix4<f64>,
    pub method: FisherMethod,
    pub err_est: f64,
    /// Set when the Cauchy approximation is used far from `(α, β) = (1, 0)`.
    pub approx_warning: bool,
}

impl FisherMatrix {
    pub fn get(&self, i: ParamIndex, j: ParamIndex) -> f64 {
        self.entries[(i, j)]
    }

    pub fn to_array(&self) -> Mat4 {
        self.entries.to_array()
    }

    pub fn is_positive_definite(&self) -> bool {
        cholesky(&self.to_array()).is_some()
    }

    pub fn inverse(&self) -> Option<Mat4> {
        spd_inverse(&self.to_array())
    }

    /// Information at scale σ from the one at σ = 1; μ and σ rows pick up `1/σ` each.
    pub fn at_scale(&self, sigma: f64) -> FisherMatrix {
        let k = |i: ParamIndex| matches!(i, ParamIndex::Mu | ParamIndex::Sigma) as i32;
        FisherMatrix {
            entries: SymMatrix4::from_fn(|i, j| self.entries[(i, j)] / sigma.powi(k(i) + k(j))),
            ..*self
        }
    }
}

/// Upper-triangle pairs in row-major order.
const PAIRS: [(usize, usize); 10] = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

fn from_pairs(v: &[f64]) -> SymMatrix4<f64> {
    let mut m = SymMatrix4::from_fn(|_, _| 0.0);
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        m.set(ParamIndex::ALL[i], ParamIndex::ALL[j], v[k]);
    }
    m
}

/// Half-width of the central x-interval integrated on unit panels.
const CORE: f64 = 12.0;

/// `∫ f_i f_j / f dx` by quadrature over x, with density derivatives by
/// inversion. Computed for the standard member and rescaled by σ.
pub fn fisher_generic(p: &StableParams, cfg: &QuadratureConfig) -> Result<FisherMatrix> {
    cfg.validate()?;
    let p = p.checked_interior()?;
    let sd = StdDensity::new(p.alpha, p.beta, FIRST, *cfg);
    let failure: RefCell<Option<StableError>> = RefCell::new(None);
    let integrand = |x: f64, out: &mut [f64]| {
        out.iter_mut().for_each(|o| *o = 0.0);
        if failure.borrow().is_some() {
            return;
        }
        let v = match sd.eval(x) {
            Ok(v) => v,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                return;
            }
        };
        let (g, gx) = (v[crate::density::Comp::G], v[crate::density::Comp::Gx]);
        if g <= 0.0 {
            return;
        }
        let d = [-gx, -(g + x * gx), v[crate::density::Comp::Ga], v[crate::density::Comp::Gb]];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            out[k] = d[i] * d[j] / g;
        }
    };
    let tol = Tolerance {
        abs: 100.0 * cfg.abs_tol,
        rel: 10.0 * cfg.rel_tol,
    };
    let mut total = [0.0; 10];
    let mut err = 0.0f64;
    let mut run = |f: &mut dyn FnMut(f64, &mut [f64]), breaks: Vec<f64>, what: &str| -> Result<()> {
        let r = quadrature::integrate(f, 10, &breaks, tol, cfg.max_panels);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        let r = r.map_err(|r| StableError::Quadrature {
            what: format!("Fisher information, {what}"),
            err_est: r.max_err(),
        })?;
        for k in 0..10 {
            total[k] += r.value[k];
        }
        err = err.max(r.max_err());
        Ok(())
    };
    let core: Vec<f64> = (0..=(2.0 * CORE) as usize).map(|i| -CORE + i as f64).collect();
    run(&mut |x, out| integrand(x, out), core, "core")?;
    // tails through x = ±CORE e^s; the integrand decays like e^{-αs}
    let s_max = (40.0 / p.alpha).min(690.0 - CORE.ln());
    let tail: Vec<f64> = (0..=s_max.ceil() as usize).map(|i| (i as f64).min(s_max)).collect();
    for sign in [1.0, -1.0] {
        run(
            &mut |s, out| {
                let x = sign * CORE * s.exp();
                integrand(x, out);
                out.iter_mut().for_each(|o| *o *= x.abs());
            },
            tail.clone(),
            "tail",
        )?;
    }
    Ok(FisherMatrix {
        entries: from_pairs(&total),
        method: FisherMethod::Generic,
        err_est: err,
        approx_warning: false,
    }
    .at_scale(p.sigma))
}

/// Single-integral approximation valid near the Cauchy law:
///
/// ```text
/// Ĩ_ij = ∫₀^∞ Re[ conj φ_i(t) φ_j(t) + conj φ'_i(t) φ'_j(t) ] dt
/// ```
///
/// with `φ_i`, `φ'_i` at `(0, 1, α, β)`. The error is `O(|α-1|) + O(|β|)`.
pub fn fisher_cauchy_approx(alpha: f64, beta: f64, cfg: &QuadratureConfig) -> Result<FisherMatrix> {
    cfg.validate()?;
    let p = StableParams::standard(alpha, beta).checked_interior()?;
    let failure: RefCell<Option<StableError>> = RefCell::new(None);
    let mut f = |t: f64, out: &mut [f64]| {
        let r = chf_grad(t, &p).and_then(|g| Ok((g, chf_grad_tderiv(t, &p)?)));
        match r {
            Ok((g, d)) => {
                for (k, &(i, j)) in PAIRS.iter().enumerate() {
                    out[k] = (g.0[i].conj() * g.0[j] + d.0[i].conj() * d.0[j]).re;
                }
            }
            Err(e) => {
                out.iter_mut().for_each(|o| *o = 0.0);
                failure.borrow_mut().get_or_insert(e);
            }
        }
    };
    let r_end = 45f64.powf(1.0 / alpha);
    let mut breaks = vec![0.0];
    let mut x = 1e-6;
    while x < 1.0 {
        breaks.push(x);
        x *= 2.0;
    }
    let mut x = 1.0;
    while x < r_end {
        breaks.push(x);
        x += 1.0;
    }
    breaks.push(r_end);
    let r = quadrature::integrate(&mut f, 10, &breaks, cfg.tolerance(), cfg.max_panels);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let r = r.map_err(|r| StableError::Quadrature {
        what: "Cauchy-approximate Fisher information".into(),
        err_est: r.max_err(),
    })?;
    Ok(FisherMatrix {
        entries: from_pairs(&r.value),
        method: FisherMethod::CauchyApprox,
        err_est: r.max_err(),
        approx_warning: (alpha - 1.0).abs() + beta.abs() > 0.1,
    })
}

/// Closed-form information of the standard Cauchy law.
pub fn fisher_exact_cauchy() -> FisherMatrix {
    use ParamIndex::*;
    let g = EULER_GAMMA + std::f64::consts::LN_2 - 1.0;
    let i_aa = 0.5 * (PI * PI / 6.0 + g * g);
    let i_sa = 0.5 * (1.0 - EULER_GAMMA - std::f64::consts::LN_2);
    let mut m = SymMatrix4::from_fn(|_, _| 0.0);
    m.set(Mu, Mu, 0.5);
    m.set(Sigma, Sigma, 0.5);
    m.set(Alpha, Alpha, i_aa);
    m.set(Sigma, Alpha, i_sa);
    m.set(Beta, Beta, 4.0 / (PI * PI) * i_aa);
    m.set(Mu, Beta, -2.0 / PI * i_sa);
    FisherMatrix {
        entries: m,
        method: FisherMethod::ExactCauchy,
        err_est: 0.0,
        approx_warning: false,
    }
}
