use stable_m0::chf::chf;
use stable_m0::mle::{fit, loglik, FitConfig};
use stable_m0::sampler::{sample, SampleSpec};
use stable_m0::StableParams;

fn draws(p: StableParams, n: usize, seed: u64) -> Vec<f64> {
    sample(&SampleSpec { n, seed, params: p }).unwrap()
}

#[test]
fn cauchy_fit_within_three_standard_errors() {
    let r = fit(&draws(StableParams::CAUCHY, 2000, 7), &FitConfig::default()).unwrap();
    assert!(r.converged && !r.cov_caveat());
    assert!(r.grad_norm < 1e-7);
    let se = r.stderr.unwrap();
    let est = r.estimate.to_vec().0;
    for (i, truth) in [0.0, 1.0, 1.0, 0.0].iter().enumerate() {
        assert!((est[i] - truth).abs() < 3.0 * se[i], "coordinate {i}: {} ± {}", est[i], se[i]);
    }
    // stderr(α) from the information at the Cauchy law
    assert!((se[2] - (0.5f64 / (0.5 * 0.859 - 0.135 * 0.135) / 2000.0).sqrt()).abs() < 0.005);
}

#[test]
fn fit_is_location_scale_equivariant() {
    for p in [StableParams::standard(1.4, -0.3), StableParams::standard(1.0, 0.5)] {
        let x0 = draws(p, 400, 5);
        let (a, b) = (3.0, 2.5);
        let x1: Vec<f64> = x0.iter().map(|x| a + b * x).collect();
        let cfg = FitConfig::default();
        let r0 = fit(&x0, &cfg).unwrap().estimate;
        let r1 = fit(&x1, &cfg).unwrap().estimate;
        assert!((r1.mu - (a + b * r0.mu)).abs() < 1e-5 * b, "{r0} {r1}");
        assert!((r1.sigma - b * r0.sigma).abs() < 1e-5 * b);
        assert!((r1.alpha - r0.alpha).abs() < 1e-5);
        assert!((r1.beta - r0.beta).abs() < 1e-5);
    }
}

#[test]
fn estimate_maximizes_likelihood_locally() {
    let xs = draws(StableParams::new(1.0, 2.0, 1.6, 0.4), 300, 9);
    let cfg = FitConfig::default();
    let r = fit(&xs, &cfg).unwrap();
    let best = loglik(&xs, &r.estimate, &cfg.quad).unwrap();
    assert!((best * 300.0 - r.loglik).abs() < 1e-8 * r.loglik.abs());
    for i in stable_m0::ParamIndex::ALL {
        for d in [-1e-3, 1e-3] {
            let q = r.estimate.with(i, r.estimate.get(i) + d);
            assert!(loglik(&xs, &q, &cfg.quad).unwrap() <= best + 1e-12);
        }
    }
}

#[test]
fn observed_and_expected_information_agree_roughly() {
    let xs = draws(StableParams::standard(1.3, 0.3), 3000, 12);
    let e = fit(&xs, &FitConfig::default()).unwrap();
    let o = fit(&xs, &FitConfig { observed_info: true, ..FitConfig::default() }).unwrap();
    let (se, so) = (e.stderr.unwrap(), o.stderr.unwrap());
    for i in 0..4 {
        assert!((se[i] / so[i] - 1.0).abs() < 0.2, "{se:?} vs {so:?}");
    }
}

#[test]
fn box_and_init_are_respected() {
    let xs = draws(StableParams::standard(1.9, 0.0), 200, 3);
    let bounds = stable_m0::mle::FitBox {
        lower: [-5.0, 0.1, 0.5, -0.5],
        upper: [5.0, 10.0, 1.5, 0.5],
    };
    let r = fit(
        &xs,
        &FitConfig {
            bounds: Some(bounds),
            init: Some(StableParams::standard(1.2, 0.0)),
            ..FitConfig::default()
        },
    )
    .unwrap();
    assert!(bounds.contains(&r.estimate));
    assert!(r.at_boundary[2], "α should sit on its upper edge: {}", r.estimate);
    assert!(r.cov_caveat());
}

#[test]
fn distinct_parameters_have_distinct_chf() {
    let grid = [StableParams::CAUCHY, StableParams::standard(1.0, 0.5), StableParams::standard(1.001, 0.5), StableParams::new(0.0, 1.01, 1.0, 0.0), StableParams::new(0.01, 1.0, 1.0, 0.0)];
    for (i, p) in grid.iter().enumerate() {
        for q in &grid[i + 1..] {
            let gap = [0.5, 1.0, 2.0, 4.0].iter().map(|&t| (chf(t, p).unwrap() - chf(t, q).unwrap()).norm()).fold(0.0, f64::max);
            assert!(gap > 1e-5, "{p} and {q} alias: {gap}");
        }
    }
}
