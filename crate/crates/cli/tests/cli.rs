use std::f64::consts::PI;
use std::fs;
use std::process::Command;

use proptest::prelude::*;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mbm(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mbm").chain(args.iter().copied());
    let code = mbm_cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = mbm(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    r.stdout
}

/// Rows of a CSV as numbers, header checked.
fn numeric_rows(csv: &str, header: &str) -> Vec<Vec<f64>> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(header));
    lines
        .map(|l| l.split(',').filter_map(|f| f.parse().ok()).collect())
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn besselpoly_rows() {
    let r = mbm(&["besselpoly", "--n", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "2,1,3,3\n");
    assert!(r.stderr.contains("(x^2 + 3x + 3)"), "{}", r.stderr);
    assert_eq!(ok(&["besselpoly", "--n", "-1"]), "-1,1\n");
    assert_eq!(mbm(&["besselpoly", "--n", "34"]).code, 2);
    assert_eq!(mbm(&["besselpoly", "--n", "-2"]).code, 2);
}

#[test]
fn analytic_inertial_example() {
    let out = ok(&[
        "analytic", "--model", "inertial", "--dim", "2", "--lambda", "1", "--radius", "1",
        "--mean-speed", "1", "--tmin", "0", "--tmax", "1", "--points", "2",
    ]);
    let rows = numeric_rows(&out, "t,survival,hazard,provenance");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], (-PI).exp());
    assert!(rel(rows[1][1], (-PI - 2.0).exp()) < 1e-15);
    assert_eq!(rows[1][2], 2.0);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",closed-form")));
}

#[test]
fn analytic_brownian_columns() {
    let out = ok(&[
        "analytic", "--model", "brownian", "--dim", "3", "--lambda", "1", "--radius", "1",
        "--tmax", "1", "--points", "3",
    ]);
    let rows = numeric_rows(&out, "t,survival,hazard,provenance");
    assert_eq!(rows[0][2], f64::INFINITY);
    let expect = 2.0 * (2.0 * PI).sqrt() + 2.0 * PI;
    assert!(rel(rows[2][2], expect) < 1e-14);
}

#[test]
fn domain_errors_exit_two() {
    for args in [
        &["analytic", "--model", "brownian", "--dim", "0", "--lambda", "1", "--radius", "1", "--tmax", "1"][..],
        &["analytic", "--model", "brownian", "--dim", "3", "--lambda", "-1", "--radius", "1", "--tmax", "1"],
        &["analytic", "--model", "brownian", "--dim", "2", "--lambda", "1", "--radius", "1", "--tmax", "1"],
        &["analytic", "--model", "inertial", "--dim", "2", "--lambda", "1", "--radius", "1", "--tmax", "1"],
        &["analytic", "--model", "brownian", "--dim", "3", "--lambda", "1", "--radius", "1", "--tmax", "1", "--bogus"],
        &["asymptote", "--dim", "1", "--lambda", "1", "--radius", "1", "--tmin", "1", "--tmax", "2"],
        &["simulate", "--model", "inertial", "--dim", "2", "--lambda", "1", "--radius", "1", "--mean-speed", "1", "--tmax", "1"],
        &["simulate", "--model", "brownian", "--dim", "2", "--lambda", "1", "--radius", "1", "--tmax", "1", "--seed", "1"],
        &["invert", "--dim", "3", "--t", "-1"],
        &["nonsense"],
        &[],
    ] {
        let r = mbm(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(!r.stderr.is_empty());
        assert!(r.stdout.is_empty(), "{args:?} wrote {}", r.stdout);
    }
}

#[test]
fn even_dimension_needs_flag() {
    let out = ok(&[
        "analytic", "--model", "brownian", "--dim", "2", "--lambda", "1", "--radius", "1",
        "--tmax", "1", "--points", "3", "--even-numeric",
    ]);
    assert!(out.lines().skip(2).all(|l| l.ends_with(",laplace-inverted")), "{out}");
}

#[test]
fn invert_columns() {
    let out = ok(&["invert", "--dim", "3", "--t", "0.5,2"]);
    let rows = numeric_rows(&out, "t,V1_d_numeric,V1_d_closed,rel_err");
    for row in &rows {
        assert!(row[3] < 1e-6);
    }
    let out = ok(&["invert", "--dim", "4", "--t", "1"]);
    assert_eq!(numeric_rows(&out, "t,V1_d_numeric")[0].len(), 2);
}

#[test]
fn asymptote_is_linear_for_three_dims() {
    let out = ok(&["asymptote", "--dim", "3", "--lambda", "2", "--radius", "1", "--tmin", "1", "--tmax", "3", "--points", "3"]);
    for row in numeric_rows(&out, "t,log_survival_asymptotic") {
        // lambda omega_3 d(d-2)/2 R t = 2 * 4pi/3 * 3/2 * t
        assert!(rel(row[1], -4.0 * PI * row[0]) < 1e-15);
    }
}

#[test]
fn expectation_outputs() {
    let out = ok(&["expectation", "--model", "brownian", "--dim", "1", "--lambda", "1", "--radius", "0"]);
    let row = &numeric_rows(&out, "expected_detection_time,abs_err,provenance")[0];
    assert!(rel(row[0], PI / 4.0) < 1e-15);
    let out = ok(&[
        "expectation", "--model", "inertial", "--dim", "2", "--lambda", "1", "--radius", "1",
        "--mean-speed", "1",
    ]);
    let row = &numeric_rows(&out, "expected_detection_time,abs_err,provenance")[0];
    assert!(rel(row[0], (-PI).exp() / 2.0) < 1e-15);
    let out = ok(&[
        "expectation", "--model", "inertial", "--dim", "3", "--lambda", "0.01", "--radius", "1",
        "--mean-speed", "1", "--fit-radii", "0.05,0.1,0.2",
    ]);
    let header = "exponent,exponent_stderr,exponent_ci_low,exponent_ci_high,prefactor,prefactor_ci_low,prefactor_ci_high";
    let row = &numeric_rows(&out, header)[0];
    assert!((row[0] - 2.0).abs() < 0.01);
    assert!(row[2] <= row[0] && row[0] <= row[3]);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# inertial example\nmodel = inertial\ndim = 2\nlambda = 5\nradius = 1\nmean-speed = 1\ntmax = 1\npoints = 2\n",
    )
    .unwrap();
    let out = ok(&["analytic", "--config", cfg.to_str().unwrap(), "--lambda", "1"]);
    let rows = numeric_rows(&out, "t,survival,hazard,provenance");
    assert_eq!(rows[0][1], (-PI).exp());

    fs::write(&cfg, "speed = 3\n").unwrap();
    assert_eq!(mbm(&["analytic", "--config", cfg.to_str().unwrap()]).code, 2);
    assert_eq!(mbm(&["analytic", "--config", "/nonexistent/file"]).code, 2);
}

#[test]
fn simulate_writes_file_and_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("sim{threads}.csv"));
        let r = mbm(&[
            "simulate", "--model", "brownian", "--dim", "3", "--lambda", "0.3", "--radius", "1",
            "--tmax", "1", "--dt", "1e-3", "--trials", "500", "--eps", "1e-4", "--seed", "17",
            "--points", "11", "--threads", threads, "-o", path.to_str().unwrap(),
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.is_empty());
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs.pop().unwrap()).unwrap();
    let rows = numeric_rows(&text, "t,survival,stderr,n_censored");
    assert_eq!(rows.len(), 11);
    assert!(rows.windows(2).all(|w| w[1][1] <= w[0][1]));
}

#[test]
fn heavy_tail_warns() {
    let r = mbm(&[
        "simulate", "--model", "inertial", "--dim", "1", "--lambda", "1", "--radius", "0.5",
        "--speed-law", "pareto:0.8,1", "--tmax", "1", "--trials", "200", "--window", "16",
        "--seed", "3", "--points", "3",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stderr.contains("heavy-tailed"));
}

fn write_curve(path: &std::path::Path, values: &[f64], se: Option<f64>) {
    let mut text = String::from(if se.is_some() { "t,survival,stderr,n_censored\n" } else { "t,survival\n" });
    for (i, v) in values.iter().enumerate() {
        match se {
            Some(s) => text.push_str(&format!("{i},{v},{s},0\n")),
            None => text.push_str(&format!("{i},{v}\n")),
        }
    }
    fs::write(path, text).unwrap();
}

#[test]
fn compare_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let emp = dir.path().join("emp.csv");
    let an = dir.path().join("an.csv");
    let values: Vec<f64> = (0..20).map(|i| 0.5 * (-0.1 * i as f64).exp()).collect();
    write_curve(&emp, &values, Some(0.005));
    write_curve(&an, &values, None);
    let out = ok(&["compare", "--empirical", emp.to_str().unwrap(), "--analytic", an.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["frac_gt3", "max_abs_diff", "max_z", "pass"]);
    assert_eq!(json["max_abs_diff"], 0.0);
    assert_eq!(json["pass"], true);

    let shifted: Vec<f64> = values.iter().map(|v| v - 0.05).collect();
    write_curve(&an, &shifted, None);
    let out = ok(&["compare", "--empirical", emp.to_str().unwrap(), "--analytic", an.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["pass"], false);

    write_curve(&an, &values[..10], None);
    let r = mbm(&["compare", "--empirical", emp.to_str().unwrap(), "--analytic", an.to_str().unwrap()]);
    assert_eq!(r.code, 2);
}

#[test]
fn help_documents_units() {
    for sub in ["analytic", "simulate", "expectation", "asymptote", "invert"] {
        let out = ok(&[sub, "--help"]);
        assert!(out.contains("per unit volume") && out.contains("variance t"), "{sub}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mbm");
    let out = Command::new(bin).args(["besselpoly", "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3,1,6,15,15\n");
    let out = Command::new(bin).args(["invert", "--dim", "0", "--t", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

proptest! {
    #[test]
    fn analytic_csv_round_trips(lambda in 0.05f64..3.0, r in 0.1f64..2.0, tmax in 0.1f64..5.0) {
        let out = ok(&[
            "analytic", "--model", "brownian", "--dim", "3", "--lambda", &lambda.to_string(),
            "--radius", &r.to_string(), "--tmax", &tmax.to_string(), "--points", "5",
        ]);
        let spec = mbm_core::ModelSpec::brownian(3, lambda, r).unwrap();
        for row in numeric_rows(&out, "t,survival,hazard,provenance") {
            let s = mbm_core::survival(&spec, row[0], mbm_core::EvenDim::Reject).unwrap().value;
            prop_assert_eq!(row[1], s);
        }
    }
}
