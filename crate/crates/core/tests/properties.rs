use proptest::prelude::*;
use stable_m0::chf::chf;
use stable_m0::density::{pdf, QuadratureConfig};
use stable_m0::mle::loglik;
use stable_m0::score::score_at;
use stable_m0::StableParams;

fn interior() -> impl Strategy<Value = StableParams> {
    (-3.0..3.0f64, 0.2..4.0f64, 0.4..1.99f64, -0.99..0.99f64).prop_map(|(m, s, a, b)| StableParams::new(m, s, a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection(p in interior(), z in -8.0..8.0f64) {
        let cfg = QuadratureConfig::default();
        let x = p.mu + p.sigma * z;
        let f = pdf(x, &p, &cfg).unwrap();
        let g = pdf(2.0 * p.mu - x, &StableParams { beta: -p.beta, ..p }, &cfg).unwrap();
        prop_assert!((f - g).abs() < 1e-10 + 1e-8 * f);
        prop_assert!(f >= 0.0);
    }

    #[test]
    fn location_scale(p in interior(), z in -8.0..8.0f64) {
        let cfg = QuadratureConfig::default();
        let f = pdf(p.mu + p.sigma * z, &p, &cfg).unwrap();
        let g = pdf(z, &StableParams::standard(p.alpha, p.beta), &cfg).unwrap() / p.sigma;
        prop_assert!((f - g).abs() <= 1e-12 * g.max(1e-300) + 1e-300);
    }

    #[test]
    fn chf_is_hermitian_and_bounded(p in interior(), t in 0.01..20.0f64) {
        let a = chf(t, &p).unwrap();
        let b = chf(-t, &p).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-14);
        prop_assert!(a.norm() <= 1.0);
    }

    #[test]
    fn scores_match_shift(p in interior(), x in -10.0..10.0f64, c in -5.0..5.0f64) {
        let cfg = QuadratureConfig::default();
        let a = score_at(x, &p, &cfg).unwrap();
        let b = score_at(x + c, &StableParams { mu: p.mu + c, ..p }, &cfg).unwrap();
        prop_assert!((a.loglik - b.loglik).abs() < 1e-9);
        for i in 0..4 {
            prop_assert!((a.score.0[i] - b.score.0[i]).abs() < 1e-6 * (1.0 + a.score.0[i].abs()));
        }
        // ℓ_μ = -∂x ℓ
        let h = 1e-4 * p.sigma;
        let fd = (score_at(x - h, &p, &cfg).unwrap().loglik - score_at(x + h, &p, &cfg).unwrap().loglik) / (2.0 * h);
        prop_assert!((a.score.0[0] - fd).abs() < 1e-5 * (1.0 + fd.abs()) / p.sigma);
    }
}

#[test]
fn loglik_of_shifted_data() {
    let cfg = QuadratureConfig::default();
    let p = StableParams::standard(1.0, 0.6);
    let xs = [-4.0, -0.3, 0.0, 2.2, 15.0];
    let ys = xs.map(|x| x + 7.0);
    let l0 = loglik(&xs, &p, &cfg).unwrap();
    let l1 = loglik(&ys, &StableParams { mu: 7.0, ..p }, &cfg).unwrap();
    assert!((l0 - l1).abs() < 1e-10);
}
