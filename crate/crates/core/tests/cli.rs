use serde_json::Value;
use stable_m0::cli::{run, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE};
use stable_m0::mle::FitResult;
use stable_m0::sampler::{sample, SampleSpec};
use stable_m0::StableParams;

fn exec(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("stable-m0").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn pdf_at_cauchy_center() {
    let (code, out, _) = exec(&["pdf", "--alpha", "1", "--beta", "0", "--x", "0"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,f,f_x,f_mu,f_sigma,f_alpha,f_beta");
    let f: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((f - std::f64::consts::FRAC_1_PI).abs() < 1e-10);
}

#[test]
fn pdf_range_and_json() {
    let (code, out, _) = exec(&["--json", "pdf", "--alpha", "1.5", "--beta", "-0.3", "--x=-1:1:0.5"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v[0]["x"], -1.0);
}

#[test]
fn exit_codes() {
    assert_eq!(exec(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(exec(&["pdf", "--alpha", "2.5", "--x", "0"]).0, EXIT_USAGE);
    assert_eq!(exec(&["pdf", "--alpha", "1", "--x", "zero"]).0, EXIT_USAGE);
    assert_eq!(exec(&["fisher", "--alpha", "1.2", "--method", "exact"]).0, EXIT_USAGE);
    assert_eq!(exec(&["fit", "/nonexistent/data.csv"]).0, EXIT_USAGE);
    let (code, _, err) = exec(&[
        "pdf", "--alpha", "0.3", "--beta", "0.9", "--x", "1e5", "--quad-max-panels", "8", "--quad-abs-tol", "1e-300", "--quad-rel-tol", "1e-300",
    ]);
    assert_eq!(code, EXIT_NUMERIC, "{err}");
    assert_eq!(exec(&["--help"]).0, EXIT_OK);
}

#[test]
fn fisher_json_has_method_tag() {
    let (code, out, _) = exec(&["fisher", "--alpha", "1", "--beta", "0", "--method", "cauchy-approx"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["method"], "cauchy-approx");
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn table1_reports_deviations() {
    let (code, out, _) = exec(&["table1"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("I_alpha_alpha,"));
    let max: f64 = lines[11].split(',').nth(3).unwrap().parse().unwrap();
    assert!(max < 2e-3);
}

#[test]
fn table2_flags_misprints() {
    let (code, out, _) = exec(&["table2"]);
    assert_eq!(code, EXIT_OK);
    let flagged: Vec<&str> = out.lines().filter(|l| l.contains("KNOWN_ERRATUM")).collect();
    assert_eq!(flagged.len(), 3);
    for l in flagged {
        let alpha: f64 = l.split(',').next().unwrap().parse().unwrap();
        assert_eq!(alpha, 1.05);
    }
}

#[test]
fn sample_is_deterministic_and_lossless() {
    let args = ["sample", "--alpha", "1.2", "--beta", "0.4", "--n", "50", "--seed", "11"];
    let (code, a, _) = exec(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, exec(&args).1);
    let parsed: Vec<f64> = a.lines().map(|l| l.parse().unwrap()).collect();
    let direct = sample(&SampleSpec {
        n: 50,
        seed: 11,
        params: StableParams::standard(1.2, 0.4),
    })
    .unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn fit_cauchy_file_and_round_trip() {
    let xs = sample(&SampleSpec {
        n: 2000,
        seed: 7,
        params: StableParams::CAUCHY,
    })
    .unwrap();
    let dir = std::env::temp_dir().join(format!("stable-m0-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cauchy.csv");
    let body: String = std::iter::once("value\n# simulated\n".to_string()).chain(xs.iter().map(|x| format!("{x:.17e}\n"))).collect();
    std::fs::write(&path, body).unwrap();
    let (code, out, err) = exec(&["fit", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, EXIT_OK, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    for key in ["mu", "sigma", "alpha", "beta", "cov", "stderr", "loglik", "n", "converged", "at_boundary"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let alpha = v["alpha"].as_f64().unwrap();
    assert!((0.9..=1.1).contains(&alpha), "{alpha}");
    let r: FitResult = serde_json::from_str(&out).unwrap();
    let again: FitResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, again);
    assert_eq!(r.n, 2000);
}
