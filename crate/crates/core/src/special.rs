//! Cancellation-free building blocks for the cumulant near α = 1.
//!
//! The M0 cumulant contains `tan(πα/2) (|t|^(α-1) - 1)`, a product of a
//! pole and a zero at α = 1. Writing `h = α - 1`, `L = log|t|` it factors as
//!
//! ```text
//! tan(πα/2) (e^{hL} - 1) = [h tan(πα/2)] · [L · exprel(hL)]
//!                        = -(q(πh/2) / (π/2)) · L · exprel(hL)
//! ```
//!
//! with `q(x) = x cot x` and `exprel(y) = (e^y - 1)/y`. Both factors are
//! entire (or analytic on |x| < π) and are evaluated here from power series
//! where the closed forms would cancel, so every α-derivative of the product
//! is a plain product rule with no removable singularity left.

use std::sync::OnceLock;

use num_complex::Complex64;

const XCOT_TERMS: usize = 36;

/// Coefficients `a_n = 2 ζ(2n) / π^(2n)` of `x cot x = 1 - Σ a_n x^(2n)`.
fn xcot_coefficients() -> &'static [f64; XCOT_TERMS] {
    static COEFFS: OnceLock<[f64; XCOT_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let mut a = [0.0; XCOT_TERMS];
        // exact rational values for the leading terms
        a[0] = 1.0 / 3.0;
        a[1] = 1.0 / 45.0;
        a[2] = 2.0 / 945.0;
        a[3] = 1.0 / 4725.0;
        a[4] = 2.0 / 93555.0;
        let mut inv_pi_pow = 1.0 / pi2.powi(6);
        for (n, slot) in a.iter_mut().enumerate().skip(5) {
            let two_n = 2 * (n as i32 + 1);
            // ζ(2n) for 2n ≥ 12 by direct summation plus integral tail
            let mut zeta = 0.0;
            for k in (1..=40).rev() {
                zeta += (k as f64).powi(-two_n);
            }
            zeta += 40.5f64.powi(1 - two_n) / f64::from(two_n - 1);
            *slot = 2.0 * zeta * inv_pi_pow;
            inv_pi_pow /= pi2;
        }
        a
    })
}

/// `q(x) = x cot x` with its first two derivatives, for `|x| ≤ π/2`.
///
/// The series converges geometrically with ratio `(x/π)² ≤ 1/4` on the
/// whole range used by the cumulant, so no closed form is needed.
pub fn xcot_with_derivs(x: f64) -> (f64, f64, f64) {
    let a = xcot_coefficients();
    let w = x * x;
    // r(w) = Σ a_n w^(n-1) so that q = 1 - w r(w)
    let mut r = 0.0;
    let mut dr_dw = 0.0;
    let mut d2r_dw2 = 0.0;
    for (i, &an) in a.iter().enumerate().rev() {
        let m = i as f64;
        r = r * w + an;
        if i >= 1 {
            dr_dw = dr_dw * w + m * an;
        }
        if i >= 2 {
            d2r_dw2 = d2r_dw2 * w + m * (m - 1.0) * an;
        }
    }
    let q = 1.0 - w * r;
    let dq_dw = -(r + w * dr_dw);
    let d2q_dw2 = -(2.0 * dr_dw + w * d2r_dw2);
    let dq = 2.0 * x * dq_dw;
    let d2q = 2.0 * dq_dw + 4.0 * w * d2q_dw2;
    (q, dq, d2q)
}

const EXPREL_TERMS: usize = 24;

/// `exprel(y) = (e^y - 1)/y` and its first two derivatives, plus `e^y`.
#[derive(Debug, Clone, Copy)]
pub struct Exprel {
    pub exp: Complex64,
    pub e0: Complex64,
    pub e1: Complex64,
    pub e2: Complex64,
}

fn inverse_factorials() -> &'static [f64; EXPREL_TERMS + 3] {
    static INV: OnceLock<[f64; EXPREL_TERMS + 3]> = OnceLock::new();
    INV.get_or_init(|| {
        let mut inv = [1.0f64; EXPREL_TERMS + 3];
        for k in 1..inv.len() {
            inv[k] = inv[k - 1] / k as f64;
        }
        inv
    })
}

/// Evaluates [`Exprel`] up to derivative order `order` (0, 1 or 2); higher
/// entries are left as zero.
pub fn exprel(y: Complex64, order: u8) -> Exprel {
    let exp = y.exp();
    let zero = Complex64::new(0.0, 0.0);
    if y.norm_sqr() < 1.0 {
        // coefficients: 1/(k+1)!, (k+1)/(k+2)!, (k+1)(k+2)/(k+3)!
        let inv_fact = inverse_factorials();
        let mut e0 = zero;
        let mut e1 = zero;
        let mut e2 = zero;
        for k in (0..EXPREL_TERMS).rev() {
            let kf = k as f64;
            e0 = e0 * y + inv_fact[k + 1];
            if order >= 1 {
                e1 = e1 * y + (kf + 1.0) * inv_fact[k + 2];
            }
            if order >= 2 {
                e2 = e2 * y + (kf + 1.0) * (kf + 2.0) * inv_fact[k + 3];
            }
        }
        Exprel { exp, e0, e1, e2 }
    } else {
        let e0 = (exp - 1.0) / y;
        let e1 = if order >= 1 { (exp - e0) / y } else { zero };
        let e2 = if order >= 2 { (exp - 2.0 * e1) / y } else { zero };
        Exprel { exp, e0, e1, e2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn xcot_matches_closed_form_away_from_zero() {
        for &x in &[0.3f64, 0.7, 1.0, 1.3, 1.5, -0.9] {
            let (q, dq, d2q) = xcot_with_derivs(x);
            let c = x.cos() / x.sin();
            let csc2 = 1.0 / (x.sin() * x.sin());
            assert!(close(q, x * c, 1e-14), "q({x})");
            assert!(close(dq, c - x * csc2, 1e-13), "q'({x})");
            let exact2 = -2.0 * csc2 + 2.0 * x * csc2 * c;
            assert!(close(d2q, exact2, 1e-12), "q''({x}) {d2q} vs {exact2}");
        }
    }

    #[test]
    fn xcot_at_zero_and_pole_edge() {
        let (q, dq, d2q) = xcot_with_derivs(0.0);
        assert_eq!(q, 1.0);
        assert_eq!(dq, 0.0);
        assert!(close(d2q, -2.0 / 3.0, 1e-15));
        let (q, _, _) = xcot_with_derivs(std::f64::consts::FRAC_PI_2);
        assert!(q.abs() < 1e-15);
    }

    #[test]
    fn exprel_series_and_closed_form_agree() {
        for &(re, im) in &[(0.99, 0.0), (-0.7, 0.7), (0.5, -0.8), (1e-9, 0.0), (0.0, 0.0)] {
            let y = Complex64::new(re, im);
            let s = exprel(y, 2);
            // high-order reference via a long direct Taylor sum
            let mut e0 = Complex64::new(0.0, 0.0);
            let mut e1 = Complex64::new(0.0, 0.0);
            let mut e2 = Complex64::new(0.0, 0.0);
            let mut pow = Complex64::new(1.0, 0.0);
            let mut fact = 1.0f64;
            for k in 0..60 {
                let kf = k as f64;
                fact *= kf + 1.0; // (k+1)!
                e0 += pow / fact;
                e1 += pow * (kf + 1.0) / (fact * (kf + 2.0));
                e2 += pow * (kf + 1.0) * (kf + 2.0) / (fact * (kf + 2.0) * (kf + 3.0));
                pow *= y;
            }
            assert!((s.e0 - e0).norm() < 1e-15);
            assert!((s.e1 - e1).norm() < 1e-15);
            assert!((s.e2 - e2).norm() < 1e-15);
        }
        // closed-form branch
        let y = Complex64::new(-3.0, 2.0);
        let s = exprel(y, 2);
        assert!((s.e0 * y - (y.exp() - 1.0)).norm() < 1e-14);
    }
}
