//! Parameter vector of the M0 stable law and conversions to Zolotarev's (B) form.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Result, StableError};

/// Index of a parameter inside `θ = (μ, σ, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamIndex {
    Mu = 0,
    Sigma = 1,
    Alpha = 2,
    Beta = 3,
}

impl ParamIndex {
    pub const ALL: [ParamIndex; 4] = [
        ParamIndex::Mu,
        ParamIndex::Sigma,
        ParamIndex::Alpha,
        ParamIndex::Beta,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            ParamIndex::Mu => "mu",
            ParamIndex::Sigma => "sigma",
            ParamIndex::Alpha => "alpha",
            ParamIndex::Beta => "beta",
        }
    }
}

impl fmt::Display for ParamIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Four-vector indexed by [`ParamIndex`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ParamVec<T>(pub [T; 4]);

impl<T> Index<ParamIndex> for ParamVec<T> {
    type Output = T;
    fn index(&self, i: ParamIndex) -> &T {
        &self.0[i.index()]
    }
}

impl<T> IndexMut<ParamIndex> for ParamVec<T> {
    fn index_mut(&mut self, i: ParamIndex) -> &mut T {
        &mut self.0[i.index()]
    }
}

/// Symmetric 4×4 table indexed by pairs of [`ParamIndex`].
///
/// Only one storage slot exists per unordered pair, so `m[(i, j)]` and
/// `m[(j, i)]` are the same value bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymMatrix4<T> {
    packed: [T; 10],
}

impl<T: Copy> SymMatrix4<T> {
    fn slot(i: usize, j: usize) -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        // row-major upper triangle
        a * 4 - a * (a + 1) / 2 + b
    }

    pub fn from_fn(mut f: impl FnMut(ParamIndex, ParamIndex) -> T) -> Self {
        let mut packed = [f(ParamIndex::Mu, ParamIndex::Mu); 10];
        for i in ParamIndex::ALL {
            for j in ParamIndex::ALL {
                if i <= j {
                    packed[Self::slot(i.index(), j.index())] = f(i, j);
                }
            }
        }
        Self { packed }
    }

    pub fn get(&self, i: ParamIndex, j: ParamIndex) -> T {
        self.packed[Self::slot(i.index(), j.index())]
    }

    pub fn set(&mut self, i: ParamIndex, j: ParamIndex, v: T) {
        self.packed[Self::slot(i.index(), j.index())] = v;
    }

    pub fn to_array(&self) -> [[T; 4]; 4] {
        let mut out = [[self.packed[0]; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.packed[Self::slot(i, j)];
            }
        }
        out
    }
}

impl<T: Copy> Index<(ParamIndex, ParamIndex)> for SymMatrix4<T> {
    type Output = T;
    fn index(&self, (i, j): (ParamIndex, ParamIndex)) -> &T {
        &self.packed[Self::slot(i.index(), j.index())]
    }
}

/// Parameters `θ = (μ, σ, α, β)` of the continuous (M0) stable law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub mu: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Outcome of [`StableParams::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    pub interior: bool,
}

impl StableParams {
    pub const CAUCHY: StableParams = StableParams {
        mu: 0.0,
        sigma: 1.0,
        alpha: 1.0,
        beta: 0.0,
    };

    pub fn new(mu: f64, sigma: f64, alpha: f64, beta: f64) -> Self {
        Self {
            mu,
            sigma,
            alpha,
            beta,
        }
    }

    /// Standard member `(0, 1, α, β)`.
    pub fn standard(alpha: f64, beta: f64) -> Self {
        Self::new(0.0, 1.0, alpha, beta)
    }

    pub fn validate(&self) -> Validity {
        let valid = self.mu.is_finite()
            && self.sigma.is_finite()
            && self.sigma > 0.0
            && self.alpha > 0.0
            && self.alpha <= 2.0
            && (-1.0..=1.0).contains(&self.beta);
        let interior = valid && self.alpha < 2.0 && self.beta > -1.0 && self.beta < 1.0;
        Validity { valid, interior }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    pub fn is_interior(&self) -> bool {
        self.validate().interior
    }

    /// Returns `self` or a domain error naming the offending field.
    pub fn checked(self) -> Result<Self> {
        if self.is_valid() {
            Ok(self)
        } else {
            Err(StableError::Domain(format!(
                "invalid stable parameters {self} (need sigma > 0, 0 < alpha <= 2, -1 <= beta <= 1)"
            )))
        }
    }

    pub fn checked_interior(self) -> Result<Self> {
        if self.is_interior() {
            Ok(self)
        } else {
            Err(StableError::Domain(format!(
                "parameters {self} are not interior (need 0 < alpha < 2, -1 < beta < 1)"
            )))
        }
    }

    pub fn to_vec(&self) -> ParamVec<f64> {
        ParamVec([self.mu, self.sigma, self.alpha, self.beta])
    }

    pub fn from_vec(v: &ParamVec<f64>) -> Self {
        Self::new(v.0[0], v.0[1], v.0[2], v.0[3])
    }

    pub fn get(&self, i: ParamIndex) -> f64 {
        self.to_vec()[i]
    }

    pub fn with(&self, i: ParamIndex, value: f64) -> Self {
        let mut v = self.to_vec();
        v[i] = value;
        Self::from_vec(&v)
    }
}

impl fmt::Display for StableParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(mu={}, sigma={}, alpha={}, beta={})",
            self.mu, self.sigma, self.alpha, self.beta
        )
    }
}

/// `tan(πα/2)`.
///
/// Near the pole at α = 1 the value is formed as `-1/tan(π(α-1)/2)`, which
/// keeps full relative precision. Returns ±∞ only at α = 1 exactly.
pub fn tan_half_pi_alpha(alpha: f64) -> f64 {
    let h = alpha - 1.0;
    if h.abs() < 0.25 {
        -1.0 / (FRAC_PI_2 * h).tan()
    } else if alpha == 2.0 {
        0.0
    } else {
        (FRAC_PI_2 * alpha).tan()
    }
}

fn require_alpha_ne_one(alpha: f64, what: &str) -> Result<()> {
    if alpha == 1.0 {
        Err(StableError::Domain(format!(
            "{what} is undefined at alpha = 1 (the (B) form is discontinuous there)"
        )))
    } else if !(alpha > 0.0 && alpha <= 2.0) {
        Err(StableError::Domain(format!("{what}: alpha = {alpha} outside (0, 2]")))
    } else {
        Ok(())
    }
}

/// `K(α) = α - 1 + sign(1 - α)`.
pub fn k_alpha(alpha: f64) -> Result<f64> {
    require_alpha_ne_one(alpha, "K(alpha)")?;
    Ok(alpha - 1.0 + (1.0 - alpha).signum())
}

/// Skewness of the (B) form: `β_B = arctan(β tan(πα/2)) / (π K(α) / 2)`.
pub fn beta_to_beta_b(alpha: f64, beta: f64) -> Result<f64> {
    require_alpha_ne_one(alpha, "beta_B")?;
    if !(-1.0..=1.0).contains(&beta) {
        return Err(StableError::Domain(format!("beta = {beta} outside [-1, 1]")));
    }
    let k = k_alpha(alpha)?;
    Ok((beta * tan_half_pi_alpha(alpha)).atan() / (PI * k / 2.0))
}

/// `γ_{α,β} = (1 + β² tan²(πα/2))^(-1/(2α))`.
pub fn scale_gamma(alpha: f64, beta: f64) -> Result<f64> {
    require_alpha_ne_one(alpha, "gamma_{alpha,beta}")?;
    let bt = beta * tan_half_pi_alpha(alpha);
    // ln(1 + b²) without overflow when |b| is huge
    let log_base = if bt.abs() > 1e150 {
        2.0 * bt.abs().ln()
    } else {
        (bt * bt).ln_1p()
    };
    Ok((-log_base / (2.0 * alpha)).exp())
}

/// `x* = (γ_{α,β}/σ)(x - μ + σβ tan(πα/2))`, the (B)-form argument matching `x`.
pub fn x_star(x: f64, p: &StableParams) -> Result<f64> {
    require_alpha_ne_one(p.alpha, "x*")?;
    let g = scale_gamma(p.alpha, p.beta)?;
    Ok(g / p.sigma * (x - p.mu + p.sigma * p.beta * tan_half_pi_alpha(p.alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validate_examples() {
        let v = StableParams::CAUCHY.validate();
        assert!(v.valid && v.interior);
        let v = StableParams::new(0.0, 1.0, 2.0, 0.0).validate();
        assert!(v.valid && !v.interior);
        let v = StableParams::new(0.0, -1.0, 1.5, 0.0).validate();
        assert!(!v.valid && !v.interior);
        assert!(!StableParams::new(0.0, 1.0, 0.0, 0.0).is_valid());
        assert!(!StableParams::new(0.0, 1.0, 1.0, 1.5).is_valid());
        assert!(StableParams::new(0.0, 1.0, 1.0, 1.0).is_valid());
        assert!(!StableParams::new(0.0, 1.0, 1.0, 1.0).is_interior());
        assert!(!StableParams::new(f64::NAN, 1.0, 1.0, 0.0).is_valid());
    }

    #[test]
    fn k_alpha_values() {
        assert_eq!(k_alpha(0.5).unwrap(), 0.5);
        assert_eq!(k_alpha(1.5).unwrap(), -0.5);
        assert!((k_alpha(1.0 - 1e-12).unwrap() - 1.0).abs() < 1e-11);
        assert!((k_alpha(1.0 + 1e-12).unwrap() + 1.0).abs() < 1e-11);
        assert!(k_alpha(1.0).is_err());
    }

    #[test]
    fn beta_b_examples() {
        assert_eq!(beta_to_beta_b(1.5, 0.0).unwrap(), 0.0);
        assert!((beta_to_beta_b(0.5, 1.0).unwrap() - 1.0).abs() < 1e-15);
        // K(1.3) < 0 and tan(0.65π) < 0, so the ratio is positive
        let b = beta_to_beta_b(1.3, 0.5).unwrap();
        let expected = (0.5 * (0.65 * PI).tan()).atan() / (PI * -0.7 / 2.0);
        assert!((b - expected).abs() < 1e-14);
        assert!(b > 0.0 && b < 1.0);
        assert!(beta_to_beta_b(1.0, 0.3).is_err());
    }

    #[test]
    fn scale_gamma_examples() {
        assert_eq!(scale_gamma(1.5, 0.0).unwrap(), 1.0);
        assert!((scale_gamma(0.5, 0.5).unwrap() - 0.8).abs() < 1e-15);
        assert!(scale_gamma(1.0, 0.5).is_err());
    }

    #[test]
    fn x_star_examples() {
        let p = StableParams::new(2.5, 1.0, 1.5, 0.0);
        assert_eq!(x_star(2.5, &p).unwrap(), 0.0);
        let p = StableParams::new(1.0, 2.0, 1.5, 0.0);
        assert!((x_star(3.0, &p).unwrap() - 1.0).abs() < 1e-15);
        assert!(x_star(0.0, &StableParams::CAUCHY).is_err());
    }

    #[test]
    fn tan_near_pole_matches_direct() {
        for &a in &[0.8, 0.9, 0.99, 1.01, 1.1, 1.2, 1.3, 0.5, 1.7] {
            let direct = (FRAC_PI_2 * a).tan();
            assert!((tan_half_pi_alpha(a) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        }
        assert_eq!(tan_half_pi_alpha(2.0), 0.0);
    }

    #[test]
    fn sym_matrix_is_shared_storage() {
        let m = SymMatrix4::from_fn(|i, j| (i.index() * 10 + j.index()) as f64);
        for i in ParamIndex::ALL {
            for j in ParamIndex::ALL {
                assert_eq!(m[(i, j)].to_bits(), m[(j, i)].to_bits());
            }
        }
        assert_eq!(m.get(ParamIndex::Sigma, ParamIndex::Beta), 13.0);
    }

    fn alpha_ne_one() -> impl Strategy<Value = f64> {
        prop_oneof![0.05f64..0.999, 1.001f64..2.0]
    }

    proptest! {
        #[test]
        fn beta_b_is_odd_and_bounded(a in alpha_ne_one(), b in -1.0f64..=1.0) {
            let pos = beta_to_beta_b(a, b).unwrap();
            let neg = beta_to_beta_b(a, -b).unwrap();
            prop_assert!((pos + neg).abs() <= 1e-14);
            prop_assert!((-1.0 - 1e-14..=1.0 + 1e-14).contains(&pos));
        }

        #[test]
        fn beta_b_is_monotone(a in alpha_ne_one(), b in -0.99f64..0.99) {
            let lo = beta_to_beta_b(a, b).unwrap();
            let hi = beta_to_beta_b(a, b + 0.01).unwrap();
            prop_assert!(hi > lo);
        }

        #[test]
        fn scale_gamma_in_unit_interval(a in alpha_ne_one(), b in -1.0f64..=1.0) {
            let g = scale_gamma(a, b).unwrap();
            prop_assert!(g > 0.0 && g <= 1.0);
            prop_assert_eq!(scale_gamma(a, 0.0).unwrap(), 1.0);
        }

        #[test]
        fn x_star_is_increasing(a in alpha_ne_one(), b in -0.9f64..0.9,
                                x in -50.0f64..50.0, dx in 1e-6f64..10.0) {
            let p = StableParams::new(0.3, 1.7, a, b);
            prop_assert!(x_star(x + dx, &p).unwrap() > x_star(x, &p).unwrap());
        }
    }
}
