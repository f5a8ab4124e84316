//! Characteristic function of the M0 law, its cumulant, and derivatives.
//!
//! For `t > 0` and the standard member `(0, 1, α, β)` the cumulant is
//!
//! ```text
//! ψ₀(t) = -t^α + iβ t G(α, log t),   G(α, L) = tan(πα/2) (e^{(α-1)L} - 1)
//! ```
//!
//! and the general law follows from `ψ(t) = ψ₀(σt) + iμt` together with
//! Hermitian symmetry `ψ(-t) = conj ψ(t)`. `G` is evaluated through the
//! factorization in [`crate::special`], so the same expressions serve
//! α = 1 and its neighbourhood without a removable singularity. At α = 1
//! exactly the closed-form limits are used directly.
//!
//! The standard kernel also accepts complex `t` in the right half plane;
//! the density module uses this to integrate along rotated rays.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, FRAC_PI_3, PI};

use num_complex::Complex64;

use crate::error::{Result, StableError};
use crate::params::{ParamIndex, ParamVec, StableParams, SymMatrix4};
use crate::special::{exprel, xcot_with_derivs};

pub type ComplexValue = Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// The four first derivatives `ψ_θi(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantGradient(pub ParamVec<Complex64>);

impl std::ops::Index<ParamIndex> for CumulantGradient {
    type Output = Complex64;
    fn index(&self, i: ParamIndex) -> &Complex64 {
        &self.0[i]
    }
}

/// Symmetric table of `ψ_θiθj(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantHessian(pub SymMatrix4<Complex64>);

impl std::ops::Index<(ParamIndex, ParamIndex)> for CumulantHessian {
    type Output = Complex64;
    fn index(&self, ij: (ParamIndex, ParamIndex)) -> &Complex64 {
        &self.0[ij]
    }
}

/// How many derivatives the standard kernel has to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Order {
    Value,
    First,
    Second,
}

/// α-only factors of `G = P(α) · L · exprel((α-1)L)` where `P = (α-1) tan(πα/2)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AlphaFactors {
    pub alpha: f64,
    pub h: f64,
    /// `P`, `dP/dα`, `d²P/dα²`
    pub p: [f64; 3],
}

impl AlphaFactors {
    pub fn new(alpha: f64) -> Self {
        let h = alpha - 1.0;
        if h == 0.0 {
            return Self {
                alpha,
                h,
                p: [-FRAC_2_PI, 0.0, FRAC_PI_3],
            };
        }
        let (q, dq, d2q) = xcot_with_derivs(FRAC_PI_2 * h);
        Self {
            alpha,
            h,
            p: [-q / FRAC_PI_2, -dq, -FRAC_PI_2 * d2q],
        }
    }
}

/// Standard-member cumulant pieces at a single `t` (right half plane).
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct StdCumulant {
    /// ψ₀
    pub psi: Complex64,
    /// ∂t ψ₀
    pub dt: Complex64,
    /// ∂t² ψ₀
    pub dtt: Complex64,
    /// ∂α ψ₀
    pub a: Complex64,
    /// ∂β ψ₀
    pub b: Complex64,
    pub aa: Complex64,
    pub ab: Complex64,
    /// ∂t∂α ψ₀
    pub ta: Complex64,
    /// ∂t∂β ψ₀
    pub tb: Complex64,
}

/// `G` and its partial derivatives in `(α, L)`.
#[derive(Debug, Clone, Copy, Default)]
struct GTerms {
    g: Complex64,
    g_l: Complex64,
    g_ll: Complex64,
    g_h: Complex64,
    g_hl: Complex64,
    g_hh: Complex64,
}

fn g_terms(log_t: Complex64, af: &AlphaFactors, order: Order) -> GTerms {
    let l = log_t;
    let [p0, p1, p2] = af.p;
    if af.h == 0.0 {
        // closed-form limits at α = 1
        let l2 = l * l;
        return GTerms {
            g: -FRAC_2_PI * l,
            g_l: Complex64::new(-FRAC_2_PI, 0.0),
            g_ll: ZERO,
            g_h: -l2 / PI,
            g_hl: -FRAC_2_PI * l,
            g_hh: FRAC_PI_3 * l - l2 * l * (FRAC_2_PI / 3.0),
        };
    }
    let ex_order = match order {
        Order::Value => 0,
        Order::First => 1,
        Order::Second => 2,
    };
    let ex = exprel(af.h * l, ex_order);
    let q = l * ex.e0;
    let mut out = GTerms {
        g: p0 * q,
        ..GTerms::default()
    };
    if order >= Order::First {
        let q_h = l * l * ex.e1;
        out.g_l = p0 * ex.exp;
        out.g_h = p1 * q + p0 * q_h;
        if order >= Order::Second {
            let q_hh = l * l * l * ex.e2;
            out.g_ll = p0 * af.h * ex.exp;
            out.g_hl = (p1 + p0 * l) * ex.exp;
            out.g_hh = p2 * q + 2.0 * p1 * q_h + p0 * q_hh;
        }
    }
    out
}

/// Standard cumulant and derivatives at `t` with `Re t > 0` (principal branch).
pub(crate) fn std_cumulant(t: Complex64, beta: f64, af: &AlphaFactors, order: Order) -> StdCumulant {
    let alpha = af.alpha;
    let l = t.ln();
    let t_alpha = (alpha * l).exp();
    let gt = g_terms(l, af, order);
    let ib = I * beta;
    let mut out = StdCumulant {
        psi: -t_alpha + ib * t * gt.g,
        b: I * t * gt.g,
        ..StdCumulant::default()
    };
    if order >= Order::First {
        let t_am1 = t_alpha / t;
        out.dt = -alpha * t_am1 + ib * (gt.g + gt.g_l);
        out.a = -t_alpha * l + ib * t * gt.g_h;
        if order >= Order::Second {
            out.dtt = (-alpha * af.h * t_am1 + ib * (gt.g_l + gt.g_ll)) / t;
            out.aa = -t_alpha * l * l + ib * t * gt.g_hh;
            out.ab = I * t * gt.g_h;
            out.ta = -t_am1 * (1.0 + alpha * l) + ib * (gt.g_h + gt.g_hl);
            out.tb = I * (gt.g + gt.g_l);
        }
    }
    out
}

fn check(p: &StableParams) -> Result<()> {
    p.checked().map(|_| ())
}

/// Evaluates the standard kernel at `σ|t|` and returns it with the sign of `t`.
fn kernel_at(t: f64, p: &StableParams, order: Order) -> (StdCumulant, f64) {
    let af = AlphaFactors::new(p.alpha);
    let s = p.sigma * t.abs();
    (std_cumulant(Complex64::new(s, 0.0), p.beta, &af, order), t.signum())
}

/// Cumulant `ψ(t) = log φ(t)`.
pub fn cumulant(t: f64, p: &StableParams) -> Result<Complex64> {
    check(p)?;
    if t == 0.0 {
        return Ok(ZERO);
    }
    let (k, sign) = kernel_at(t, p, Order::Value);
    let psi = if sign > 0.0 { k.psi } else { k.psi.conj() };
    Ok(psi + I * (p.mu * t))
}

/// Characteristic function `φ(t) = E e^{itX}`.
pub fn chf(t: f64, p: &StableParams) -> Result<Complex64> {
    Ok(cumulant(t, p)?.exp())
}

fn conj_if(v: Complex64, negative: bool) -> Complex64 {
    if negative {
        v.conj()
    } else {
        v
    }
}

/// `ψ_θi(t)` for all four parameters.
pub fn cumulant_grad(t: f64, p: &StableParams) -> Result<CumulantGradient> {
    check(p)?;
    let mut g = ParamVec([ZERO; 4]);
    g[ParamIndex::Mu] = Complex64::new(0.0, t);
    if t == 0.0 {
        return Ok(CumulantGradient(g));
    }
    let (k, sign) = kernel_at(t, p, Order::First);
    let neg = sign < 0.0;
    let at = t.abs();
    g[ParamIndex::Sigma] = conj_if(at * k.dt, neg);
    g[ParamIndex::Alpha] = conj_if(k.a, neg);
    g[ParamIndex::Beta] = conj_if(k.b, neg);
    Ok(CumulantGradient(g))
}

/// `ψ_θiθj(t)`. The μ row and `ψ_ββ` are identically zero.
pub fn cumulant_hess(t: f64, p: &StableParams) -> Result<CumulantHessian> {
    check(p)?;
    let mut h = SymMatrix4::from_fn(|_, _| ZERO);
    if t == 0.0 {
        return Ok(CumulantHessian(h));
    }
    let (k, sign) = kernel_at(t, p, Order::Second);
    let neg = sign < 0.0;
    let at = t.abs();
    use ParamIndex::*;
    h.set(Sigma, Sigma, conj_if(at * at * k.dtt, neg));
    h.set(Sigma, Alpha, conj_if(at * k.ta, neg));
    h.set(Sigma, Beta, conj_if(at * k.tb, neg));
    h.set(Alpha, Alpha, conj_if(k.aa, neg));
    h.set(Alpha, Beta, conj_if(k.ab, neg));
    Ok(CumulantHessian(h))
}

/// `φ_θi = ψ_θi φ`.
pub fn chf_grad(t: f64, p: &StableParams) -> Result<ParamVec<Complex64>> {
    let phi = chf(t, p)?;
    let g = cumulant_grad(t, p)?;
    Ok(ParamVec(g.0 .0.map(|v| v * phi)))
}

/// `φ_θiθj = (ψ_θiθj + ψ_θi ψ_θj) φ`.
pub fn chf_hess(t: f64, p: &StableParams) -> Result<SymMatrix4<Complex64>> {
    let phi = chf(t, p)?;
    let g = cumulant_grad(t, p)?;
    let h = cumulant_hess(t, p)?;
    Ok(SymMatrix4::from_fn(|i, j| (h[(i, j)] + g[i] * g[j]) * phi))
}

/// `d/dt φ_θi(t)` for each parameter.
///
/// Several entries contain `log|t|` factors whose t-derivative is unbounded
/// at the origin, so `t = 0` is rejected; integrators never sample it.
pub fn chf_grad_tderiv(t: f64, p: &StableParams) -> Result<ParamVec<Complex64>> {
    check(p)?;
    if t == 0.0 {
        return Err(StableError::Domain(
            "t-derivative of the parameter gradient is singular at t = 0".into(),
        ));
    }
    let (k, sign) = kernel_at(t, p, Order::Second);
    let at = t.abs();
    let sigma = p.sigma;
    // everything below is for |t| and μ = 0; symmetry and location follow
    let phi0 = k.psi.exp();
    let dpsi = sigma * k.dt;
    let grad = [Complex64::new(0.0, at), at * k.dt, k.a, k.b];
    let dgrad = [I, k.dt + sigma * at * k.dtt, sigma * k.ta, sigma * k.tb];
    let mut base = [ZERO; 4];
    let mut out = ParamVec([ZERO; 4]);
    for i in 0..4 {
        base[i] = grad[i] * phi0;
        out.0[i] = (dgrad[i] + grad[i] * dpsi) * phi0;
    }
    if sign < 0.0 {
        // φ_θi(-t) = conj φ_θi(t)  ⇒  φ'_θi(-t) = -conj φ'_θi(t)
        for i in 0..4 {
            base[i] = base[i].conj();
            out.0[i] = -out.0[i].conj();
        }
    }
    // φ_θi(t; μ) = e^{iμt} φ_θi(t; 0) for every i, including μ itself
    if p.mu != 0.0 {
        let rot = Complex64::new(0.0, p.mu * t).exp();
        for i in 0..4 {
            out.0[i] = rot * (out.0[i] + I * p.mu * base[i]);
        }
    }
    Ok(out)
}
