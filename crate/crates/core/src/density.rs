//! Density of the M0 law and its x- and parameter-derivatives by Fourier
//! inversion.
//!
//! Everything is computed for the standard member `(0, 1, α, β)` at
//! `z = (x - μ)/σ` and mapped back with the location-scale identity
//! `f(x; θ) = g(z; α, β)/σ`. Each standard quantity is an integral
//!
//! ```text
//! (1/π) Re ∫₀^∞ e^{-itz} φ₀(t) w(t) dt
//! ```
//!
//! with a polynomial weight `w` in `t`, `ψ_α`, `ψ_β`. Near the mode the
//! integral runs along the real axis on a node table shared by all `z` in
//! the window. Further out the path is rotated into the lower half plane,
//! `t = r e^{-iφ}`, where `e^{-itz}` decays instead of oscillating. The angle
//! is accepted only if the integrand stays bounded on the ray and both the
//! closing arc and the discarded tails are negligible, so the rotated
//! integral equals the real-axis one by Cauchy's theorem.

use std::f64::consts::{FRAC_1_PI, FRAC_PI_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chf::{std_cumulant, AlphaFactors, Order, StdCumulant};
use crate::error::{Result, StableError};
use crate::params::{ParamIndex, ParamVec, StableParams, SymMatrix4};
use crate::quadrature::{self, Tolerance, GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES};

/// Accuracy settings shared by every inversion integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    /// Rotate the integration path away from the real axis for large |z|.
    pub oscillation_accel: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_panels: 2000,
            oscillation_accel: true,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_panels >= 8;
        if ok && self.abs_tol.is_finite() && self.rel_tol.is_finite() {
            Ok(())
        } else {
            Err(StableError::Domain(format!(
                "quadrature config needs positive tolerances and max_panels >= 8, got {self:?}"
            )))
        }
    }

    pub(crate) fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: self.abs_tol,
            rel: self.rel_tol,
        }
    }
}

/// Density with all first and second derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityBundle {
    pub f: f64,
    pub f_x: f64,
    pub f_xx: f64,
    pub grad: ParamVec<f64>,
    pub grad_x: ParamVec<f64>,
    pub hess: SymMatrix4<f64>,
    pub err_est: f64,
}

/// Density and its first derivatives, the inner-loop quantity of the optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityFirst {
    pub f: f64,
    pub f_x: f64,
    pub grad: ParamVec<f64>,
    pub err_est: f64,
}

/// Selects one scalar out of a [`DensityBundle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityQuantity {
    F,
    Fx,
    Fxx,
    Grad(ParamIndex),
    GradX(ParamIndex),
    Hess(ParamIndex, ParamIndex),
}

impl DensityBundle {
    pub fn get(&self, which: DensityQuantity) -> f64 {
        match which {
            DensityQuantity::F => self.f,
            DensityQuantity::Fx => self.f_x,
            DensityQuantity::Fxx => self.f_xx,
            DensityQuantity::Grad(i) => self.grad[i],
            DensityQuantity::GradX(i) => self.grad_x[i],
            DensityQuantity::Hess(i, j) => self.hess[(i, j)],
        }
    }
}

/// Standard-member integrals, named by the derivatives they represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Comp {
    G,
    Gx,
    Ga,
    Gb,
    Gxx,
    Gxa,
    Gxb,
    Gaa,
    Gab,
    Gbb,
}

use Comp::*;

pub(crate) const VALUE: &[Comp] = &[G];
pub(crate) const FIRST: &[Comp] = &[G, Gx, Ga, Gb];
pub(crate) const FULL: &[Comp] = &[G, Gx, Ga, Gb, Gxx, Gxa, Gxb, Gaa, Gab, Gbb];
const X_DERIVS: &[Comp] = &[Gx, Gxx];
const GRAD_X: &[Comp] = &[Gx, Gxx, Gxa, Gxb];

impl Comp {
    fn order(self) -> Order {
        match self {
            G | Gx | Gxx | Gb | Gxb | Gbb => Order::Value,
            Ga | Gxa => Order::First,
            Gaa | Gab => Order::Second,
        }
    }

    /// Sign picked up under `g(z; β) = g(-z; -β)`: one flip per x or β derivative.
    fn reflect_sign(self) -> f64 {
        match self {
            Gx | Gb | Gxa | Gab => -1.0,
            _ => 1.0,
        }
    }
}

/// Values of the requested components; entries not requested stay zero.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct StdValues {
    v: [f64; 10],
    pub err: f64,
}

impl std::ops::Index<Comp> for StdValues {
    type Output = f64;
    fn index(&self, c: Comp) -> &f64 {
        &self.v[c as usize]
    }
}

/// `w(t)` for each requested component, given the kernel at `t`.
fn weights(t: Complex64, k: &StdCumulant, comps: &[Comp], out: &mut [Complex64]) {
    let mit = Complex64::new(t.im, -t.re);
    for (o, c) in out.iter_mut().zip(comps) {
        *o = match c {
            G => Complex64::new(1.0, 0.0),
            Gx => mit,
            Ga => k.a,
            Gb => k.b,
            Gxx => mit * mit,
            Gxa => mit * k.a,
            Gxb => mit * k.b,
            Gaa => k.aa + k.a * k.a,
            Gab => k.ab + k.a * k.b,
            Gbb => k.b * k.b,
        };
    }
}

/// Real-axis cut-off: `e^{-t^α}` is below `e^{-REAL_CUT}` past it.
const REAL_CUT: f64 = 50.0;
/// Rotated paths are truncated where the integrand drops below `e^{-RAY_CUT}`.
const RAY_CUT: f64 = 70.0;
/// Largest log-magnitude tolerated on a ray before cancellation is a concern.
const RAY_MAX_GROWTH: f64 = 2.0;
const RAY_ANGLES: [f64; 4] = [0.8 * FRAC_PI_2, 0.5 * FRAC_PI_2, 0.25 * FRAC_PI_2, 0.1 * FRAC_PI_2];
const ARC_POINTS: usize = 16;
/// The shared table covers `|z| ≤ Z_TABLE_MAX` unless its panel budget is smaller.
const Z_TABLE_MAX: f64 = 3.0;
const TABLE_PANEL_BUDGET: f64 = 120.0;

struct Table {
    nodes: Vec<f64>,
    kw: Vec<f64>,
    gw: Vec<f64>,
    /// `φ₀(t_j) w_c(t_j)`, node-major.
    vals: Vec<Complex64>,
    abs_int: Vec<f64>,
    breaks: Vec<f64>,
}

struct RayProfile {
    r: Vec<f64>,
    /// `Re ψ₀(r e^{-iφ})` per grid radius, one column per candidate angle.
    re_psi: Vec<[f64; 4]>,
}

/// Inversion integrals for one standard member `(α, β)`, reusable across `z`.
pub(crate) struct StdDensity {
    af: AlphaFactors,
    beta: f64,
    comps: &'static [Comp],
    order: Order,
    cfg: QuadratureConfig,
    r_real: f64,
    /// Half-width of the table window; negative disables the table.
    z_table: f64,
    omega: f64,
    table: OnceLock<std::result::Result<Table, StableError>>,
    rays: [OnceLock<RayProfile>; 2],
}

/// Breakpoints on `[0, r_end]`: geometric near the origin, then capped by the
/// oscillation half-period `π/z_max`.
fn real_breaks(r_end: f64, z_max: f64) -> Vec<f64> {
    let cap = if z_max > 0.0 { PI / z_max } else { f64::INFINITY };
    let mut x = 1e-3f64.min(0.5 * r_end);
    let mut b = vec![0.0, x];
    while x < r_end {
        x = (x + x.min(cap)).min(r_end);
        b.push(x);
    }
    b
}

impl StdDensity {
    pub fn new(alpha: f64, beta: f64, comps: &'static [Comp], cfg: QuadratureConfig) -> Self {
        let order = comps.iter().map(|c| c.order()).max().unwrap_or(Order::Value);
        let af = AlphaFactors::new(alpha);
        let r_real = REAL_CUT.powf(1.0 / alpha);
        // the kernel's own phase advances like ω t far out (ω = βτ for α < 1)
        let omega = std_cumulant(Complex64::new(r_real, 0.0), beta, &af, Order::First).dt.im.abs();
        let z_table = Z_TABLE_MAX.min(TABLE_PANEL_BUDGET * PI / r_real - omega);
        Self {
            af,
            beta,
            comps,
            order,
            cfg,
            r_real,
            z_table,
            omega,
            table: OnceLock::new(),
            rays: [OnceLock::new(), OnceLock::new()],
        }
    }

    pub fn eval(&self, z: f64) -> Result<StdValues> {
        if !z.is_finite() {
            return Err(StableError::Domain(format!("non-finite abscissa {z}")));
        }
        let mut out = self.eval_raw(z)?;
        let g = out.v[G as usize];
        if self.comps.contains(&G) && g < 0.0 {
            // zero is inside the noise band: far light tails of skewed members
            if g > -self.cfg.abs_tol.max(out.err) {
                out.v[G as usize] = 0.0;
            } else {
                return Err(StableError::Quadrature {
                    what: format!("negative density {g:.3e} at z = {z}"),
                    err_est: out.err,
                });
            }
        }
        Ok(out)
    }

    fn eval_raw(&self, z: f64) -> Result<StdValues> {
        if z.abs() <= self.z_table {
            return self.eval_table(z);
        }
        if self.cfg.oscillation_accel {
            // rotate towards decay of e^{-itz} first, then try the mirror image
            let refl = z < 0.0;
            for r in [refl, !refl] {
                let zr = if r { -z } else { z };
                if let Some(v) = self.eval_ray(zr, r)? {
                    return Ok(v);
                }
            }
        }
        self.eval_real(z, None)
    }

    fn pack(&self, vals: &[f64], errs: &[f64], reflected: bool) -> StdValues {
        let mut out = StdValues::default();
        for (i, &c) in self.comps.iter().enumerate() {
            let s = if reflected { c.reflect_sign() } else { 1.0 };
            out.v[c as usize] = s * vals[i];
            out.err = out.err.max(errs[i]);
        }
        out
    }

    fn quad_error(what: String, r: &quadrature::Integral) -> StableError {
        StableError::Quadrature {
            what,
            err_est: r.max_err(),
        }
    }

    /// Adaptive real-axis integral at a single `z`.
    fn eval_real(&self, z: f64, init: Option<&[f64]>) -> Result<StdValues> {
        let breaks = match init {
            Some(b) => b.to_vec(),
            None => real_breaks(self.r_real, z.abs() + self.omega),
        };
        if breaks.len() > self.cfg.max_panels {
            return Err(StableError::Quadrature {
                what: format!("real-axis inversion at z = {z} needs {} panels", breaks.len() - 1),
                err_est: f64::INFINITY,
            });
        }
        let n = self.comps.len();
        let mut w = [Complex64::new(0.0, 0.0); 10];
        let mut f = |t: f64, out: &mut [f64]| {
            let tc = Complex64::new(t, 0.0);
            let k = std_cumulant(tc, self.beta, &self.af, self.order);
            let e = Complex64::new(k.psi.re, k.psi.im - t * z).exp() * FRAC_1_PI;
            weights(tc, &k, self.comps, &mut w[..n]);
            for c in 0..n {
                out[c] = (e * w[c]).re;
            }
        };
        match quadrature::integrate(&mut f, n, &breaks, self.cfg.tolerance(), self.cfg.max_panels) {
            Ok(r) => Ok(self.pack(&r.value, &r.err, false)),
            Err(r) => Err(Self::quad_error(format!("real-axis inversion at z = {z}"), &r)),
        }
    }

    fn build_table(&self) -> Result<Table> {
        let zt = self.z_table;
        let zs = [0.0, zt, -zt];
        let n = self.comps.len();
        let breaks = real_breaks(self.r_real, zt + self.omega);
        let mut w = [Complex64::new(0.0, 0.0); 10];
        let mut f = |t: f64, out: &mut [f64]| {
            let tc = Complex64::new(t, 0.0);
            let k = std_cumulant(tc, self.beta, &self.af, self.order);
            weights(tc, &k, self.comps, &mut w[..n]);
            for (m, &z) in zs.iter().enumerate() {
                let e = Complex64::new(k.psi.re, k.psi.im - t * z).exp() * FRAC_1_PI;
                for c in 0..n {
                    out[m * n + c] = (e * w[c]).re;
                }
            }
        };
        let tol = Tolerance {
            abs: 0.1 * self.cfg.abs_tol,
            rel: 0.1 * self.cfg.rel_tol,
        };
        let r = quadrature::integrate(&mut f, zs.len() * n, &breaks, tol, self.cfg.max_panels)
            .map_err(|r| Self::quad_error("real-axis node table".into(), &r))?;
        let np = r.panels.len();
        let mut table = Table {
            nodes: Vec::with_capacity(15 * np),
            kw: Vec::with_capacity(15 * np),
            gw: Vec::with_capacity(15 * np),
            vals: Vec::with_capacity(15 * np * n),
            abs_int: vec![0.0; n],
            breaks: Vec::with_capacity(np + 1),
        };
        table.breaks.push(r.panels[0].0);
        for &(a, b) in &r.panels {
            table.breaks.push(b);
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            for j in 0..15 {
                let t = c + h * NODES[j];
                let tc = Complex64::new(t, 0.0);
                let k = std_cumulant(tc, self.beta, &self.af, self.order);
                let phi = k.psi.exp() * FRAC_1_PI;
                weights(tc, &k, self.comps, &mut w[..n]);
                table.nodes.push(t);
                table.kw.push(h * KRONROD_WEIGHTS[j]);
                table.gw.push(h * GAUSS_WEIGHTS[j]);
                for (ci, wc) in w[..n].iter().enumerate() {
                    let v = phi * wc;
                    table.abs_int[ci] += h * KRONROD_WEIGHTS[j] * v.norm();
                    table.vals.push(v);
                }
            }
        }
        Ok(table)
    }

    fn eval_table(&self, z: f64) -> Result<StdValues> {
        let table = match self.table.get_or_init(|| self.build_table()) {
            Ok(t) => t,
            Err(e) => return Err(e.clone()),
        };
        let n = self.comps.len();
        let mut val = [0.0; 10];
        let mut err = [0.0; 10];
        for p in 0..table.nodes.len() / 15 {
            let mut k = [0.0; 10];
            let mut g = [0.0; 10];
            for j in p * 15..(p + 1) * 15 {
                let (s, c) = (table.nodes[j] * z).sin_cos();
                let (kw, gw) = (table.kw[j], table.gw[j]);
                let row = &table.vals[j * n..(j + 1) * n];
                for (ci, v) in row.iter().enumerate() {
                    let re = c * v.re + s * v.im;
                    k[ci] += kw * re;
                    g[ci] += gw * re;
                }
            }
            for ci in 0..n {
                val[ci] += k[ci];
                err[ci] += (k[ci] - g[ci]).abs();
            }
        }
        let floor = 50.0 * f64::EPSILON;
        let ok = (0..n).all(|ci| {
            let tol = self
                .cfg
                .abs_tol
                .max(self.cfg.rel_tol * val[ci].abs())
                .max(floor * table.abs_int[ci]);
            err[ci] <= tol
        });
        if ok {
            Ok(self.pack(&val[..n], &err[..n], false))
        } else {
            self.eval_real(z, Some(&table.breaks))
        }
    }

    fn build_ray(&self, beta: f64) -> RayProfile {
        let r_top = 1e4 * RAY_CUT.powf(1.0 / self.af.alpha);
        let mut r = Vec::new();
        let mut re_psi = Vec::new();
        let mut k = 0;
        loop {
            let rk = 1e-8 * 10f64.powf(k as f64 / 10.0);
            let mut row = [0.0; 4];
            for (m, &phi) in RAY_ANGLES.iter().enumerate() {
                let t = Complex64::from_polar(rk, -phi);
                row[m] = std_cumulant(t, beta, &self.af, Order::Value).psi.re;
            }
            r.push(rk);
            re_psi.push(row);
            if rk >= r_top {
                break;
            }
            k += 1;
        }
        RayProfile { r, re_psi }
    }

    /// Picks the steepest admissible downward angle; returns it with the
    /// truncation radius of the ray.
    fn select_ray(&self, prof: &RayProfile, z: f64, beta: f64) -> Option<(f64, f64)> {
        let r_cut = RAY_CUT.powf(1.0 / self.af.alpha);
        'angles: for (m, &phi) in RAY_ANGLES.iter().enumerate() {
            let s = phi.sin();
            let e = |k: usize| prof.re_psi[k][m] - z * prof.r[k] * s;
            let last = prof.r.len() - 1;
            if !(e(last) < -RAY_CUT) {
                continue;
            }
            let kstar = (0..=last).rev().find(|&k| !(e(k) < -RAY_CUT));
            let r_end = match kstar {
                Some(k) => prof.r[k + 1],
                None => prof.r[0],
            };
            for k in 0..=kstar.unwrap_or(0) {
                if !(e(k) <= RAY_MAX_GROWTH) {
                    continue 'angles;
                }
            }
            let r_c = r_end.max(r_cut);
            for j in 1..ARC_POINTS {
                let th = phi * j as f64 / ARC_POINTS as f64;
                let t = Complex64::from_polar(r_c, -th);
                let re = std_cumulant(t, beta, &self.af, Order::Value).psi.re - z * r_c * th.sin();
                if !(re < -RAY_CUT) {
                    continue 'angles;
                }
            }
            return Some((phi, r_end));
        }
        None
    }

    /// Integral along the ray rotated downwards. With `reflected` the `-β`
    /// member is integrated at the mirrored abscissa `z`.
    fn eval_ray(&self, z: f64, reflected: bool) -> Result<Option<StdValues>> {
        let beta = if reflected { -self.beta } else { self.beta };
        let prof = self.rays[reflected as usize].get_or_init(|| self.build_ray(beta));
        let Some((phi, r_end)) = self.select_ray(prof, z, beta) else {
            return Ok(None);
        };
        let rot = Complex64::from_polar(1.0, -phi);
        let mut x = (0.05 / z.abs().max(1.0)).min(0.5 * r_end);
        let mut breaks = vec![0.0, x];
        while x < r_end {
            x = (2.0 * x).min(r_end);
            breaks.push(x);
        }
        let n = self.comps.len();
        let mut w = [Complex64::new(0.0, 0.0); 10];
        let iz = Complex64::new(0.0, z);
        let mut f = |r: f64, out: &mut [f64]| {
            let t = rot * r;
            let k = std_cumulant(t, beta, &self.af, self.order);
            let e = (k.psi - iz * t).exp() * rot * FRAC_1_PI;
            weights(t, &k, self.comps, &mut w[..n]);
            for c in 0..n {
                out[c] = (e * w[c]).re;
            }
        };
        match quadrature::integrate(&mut f, n, &breaks, self.cfg.tolerance(), self.cfg.max_panels) {
            Ok(r) => Ok(Some(self.pack(&r.value, &r.err, reflected))),
            Err(r) => Err(Self::quad_error(format!("rotated inversion at z = {}", if reflected { -z } else { z }), &r)),
        }
    }
}

fn prepare(p: &StableParams, cfg: &QuadratureConfig, interior: bool) -> Result<()> {
    cfg.validate()?;
    if interior {
        p.checked_interior()?;
    } else {
        p.checked()?;
    }
    Ok(())
}

fn standard_values(x: f64, p: &StableParams, comps: &'static [Comp], cfg: &QuadratureConfig) -> Result<(f64, StdValues)> {
    let z = (x - p.mu) / p.sigma;
    let sd = StdDensity::new(p.alpha, p.beta, comps, *cfg);
    Ok((z, sd.eval(z)?))
}

/// Density `f(x; θ)`.
pub fn pdf(x: f64, p: &StableParams, cfg: &QuadratureConfig) -> Result<f64> {
    prepare(p, cfg, false)?;
    let (_, v) = standard_values(x, p, VALUE, cfg)?;
    Ok(v[G] / p.sigma)
}

/// Density at many points, sharing the quadrature set-up.
pub fn pdf_many(xs: &[f64], p: &StableParams, cfg: &QuadratureConfig) -> Result<Vec<f64>> {
    prepare(p, cfg, false)?;
    let sd = StdDensity::new(p.alpha, p.beta, VALUE, *cfg);
    xs.par_iter()
        .map(|&x| Ok(sd.eval((x - p.mu) / p.sigma)?[G] / p.sigma))
        .collect()
}

/// `(f'(x), f''(x))`.
pub fn pdf_x_deriv(x: f64, p: &StableParams, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    prepare(p, cfg, false)?;
    let (_, v) = standard_values(x, p, X_DERIVS, cfg)?;
    let s2 = p.sigma * p.sigma;
    Ok((v[Gx] / s2, v[Gxx] / (s2 * p.sigma)))
}

fn first_from(z: f64, sigma: f64, v: &StdValues) -> DensityFirst {
    let s2 = sigma * sigma;
    DensityFirst {
        f: v[G] / sigma,
        f_x: v[Gx] / s2,
        grad: ParamVec([
            -v[Gx] / s2,
            -(v[G] + z * v[Gx]) / s2,
            v[Ga] / sigma,
            v[Gb] / sigma,
        ]),
        err_est: v.err / sigma,
    }
}

/// Parameter gradient `f_θ(x)`.
pub fn pdf_grad(x: f64, p: &StableParams, cfg: &QuadratureConfig) -> Result<ParamVec<f64>> {
    prepare(p, cfg, true)?;
    let (z, v) = standard_values(x, p, FIRST, cfg)?;
    Ok(first_from(z, p.sigma, &v).grad)
}

/// Mixed derivatives `∂x f_θ(x)`.
pub fn pdf_grad_x(x: f64, p: &StableParams, cfg: &QuadratureConfig) -> Result<ParamVec<f64>> {
    prepare(p, cfg, true)?;
    let (z, v) = standard_values(x, p, GRAD_X, cfg)?;
    let s2 = p.sigma * p.sigma;
    let s3 = s2 * p.sigma;
    Ok(ParamVec([
        -v[Gxx] / s3,
        -(2.0 * v[Gx] + z * v[Gxx]) / s3,
        v[Gxa] / s2,
        v[Gxb] / s2,
    ]))
}

fn bundle_from(z: f64, sigma: f64, v: &StdValues) -> DensityBundle {
    use ParamIndex::*;
    let s = sigma;
    let s2 = s * s;
    let s3 = s2 * s;
    let first = first_from(z, s, v);
    let mut hess = SymMatrix4::from_fn(|_, _| 0.0);
    hess.set(Mu, Mu, v[Gxx] / s3);
    hess.set(Mu, Sigma, (2.0 * v[Gx] + z * v[Gxx]) / s3);
    hess.set(Mu, Alpha, -v[Gxa] / s2);
    hess.set(Mu, Beta, -v[Gxb] / s2);
    hess.set(Sigma, Sigma, (2.0 * v[G] + 4.0 * z * v[Gx] + z * z * v[Gxx]) / s3);
    hess.set(Sigma, Alpha, -(v[Ga] + z * v[Gxa]) / s2);
    hess.set(Sigma, Beta, -(v[Gb] + z * v[Gxb]) / s2);
    hess.set(Alpha, Alpha, v[Gaa] / s);
    hess.set(Alpha, Beta, v[Gab] / s);
    hess.set(Beta, Beta, v[Gbb] / s);
    DensityBundle {
        f: first.f,
        f_x: first.f_x,
        f_xx: v[Gxx] / s3,
        grad: first.grad,
        grad_x: ParamVec([
            -v[Gxx] / s3,
            -(2.0 * v[Gx] + z * v[Gxx]) / s3,
            v[Gxa] / s2,
            v[Gxb] / s2,
        ]),
        hess,
        err_est: first.err_est,
    }
}

/// Parameter Hessian `f_θθ(x)`.
pub fn pdf_hess(x: f64, p: &StableParams, cfg: &QuadratureConfig) -> Result<SymMatrix4<f64>> {
    Ok(density_bundle(x, p, cfg)?.hess)
}

/// Every derivative at once from a single pass over the panels.
pub fn density_bundle(x: f64, p: &StableParams, cfg: &QuadratureConfig) -> Result<DensityBundle> {
    prepare(p, cfg, true)?;
    let (z, v) = standard_values(x, p, FULL, cfg)?;
    Ok(bundle_from(z, p.sigma, &v))
}

/// [`density_bundle`] over many points.
pub fn density_bundles(xs: &[f64], p: &StableParams, cfg: &QuadratureConfig) -> Result<Vec<DensityBundle>> {
    prepare(p, cfg, true)?;
    let sd = StdDensity::new(p.alpha, p.beta, FULL, *cfg);
    xs.par_iter()
        .map(|&x| {
            let z = (x - p.mu) / p.sigma;
            Ok(bundle_from(z, p.sigma, &sd.eval(z)?))
        })
        .collect()
}

/// Density and first derivatives over many points.
pub fn density_first_many(xs: &[f64], p: &StableParams, cfg: &QuadratureConfig) -> Result<Vec<DensityFirst>> {
    prepare(p, cfg, true)?;
    let sd = StdDensity::new(p.alpha, p.beta, FIRST, *cfg);
    xs.par_iter()
        .map(|&x| {
            let z = (x - p.mu) / p.sigma;
            Ok(first_from(z, p.sigma, &sd.eval(z)?))
        })
        .collect()
}

/// Least-squares slope of `ys` against `xs`.
pub(crate) fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Geometric grid of `n` points on `[lo, hi]`.
pub(crate) fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| lo * (ratio * i as f64).exp()).collect()
}

/// Log-log slope of `|which|` over a geometric grid on `[x_lo, x_hi]`.
pub fn tail_slope(p: &StableParams, which: DensityQuantity, x_lo: f64, x_hi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(x_lo > 0.0 && x_hi > x_lo) {
        return Err(StableError::Domain(format!("tail grid needs 0 < x_lo < x_hi, got [{x_lo}, {x_hi}]")));
    }
    let xs = geometric_grid(x_lo, x_hi, 16);
    let bundles = density_bundles(&xs, p, cfg)?;
    let mut lx = Vec::with_capacity(xs.len());
    let mut ly = Vec::with_capacity(xs.len());
    for (x, b) in xs.iter().zip(&bundles) {
        let v = b.get(which).abs();
        if !(v > 0.0 && v.is_finite()) {
            return Err(StableError::DegenerateFit(format!("{which:?} underflows at x = {x}")));
        }
        lx.push(x.ln());
        ly.push(v.ln());
    }
    Ok(ls_slope(&lx, &ly))
}
