use std::collections::HashMap;

use crate::{execute, Execution};

type Output = Execution;

fn run(args: &[&str]) -> Output {
    execute(std::iter::once("rumor-inspect").chain(args.iter().copied()))
}

fn rows(out: &Output) -> Vec<HashMap<String, String>> {
    let text = &out.stdout;
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    csv::Reader::from_reader(body.as_bytes())
        .deserialize()
        .map(|r| r.unwrap())
        .collect()
}

fn f(row: &HashMap<String, String>, col: &str) -> f64 {
    row[col].parse().unwrap()
}

fn comment(out: &Output, key: &str) -> serde_json::Value {
    let text = &out.stdout;
    let prefix = format!("# {key}: ");
    let line = text
        .lines()
        .find(|l| l.starts_with(&prefix))
        .expect("comment line");
    serde_json::from_str(&line[prefix.len()..]).unwrap()
}

#[test]
fn steady_examples() {
    let out = run(&["steady", "--lambda", "2", "--x", "0.3", "--alpha", "1"]);
    assert_eq!(out.code, 0);
    let r = &rows(&out)[0];
    assert_eq!(f(r, "theta0"), 0.5);
    assert_eq!(f(r, "theta1"), 0.0);

    let out = run(&["steady", "--lambda", "0.5", "--x", "0.3", "--alpha", "0.5"]);
    let r = &rows(&out)[0];
    for c in [
        "theta0",
        "theta1",
        "theta",
        "rho_00_a",
        "rho_10_a",
        "rho_00_na",
        "rho_11_na",
    ] {
        assert_eq!(f(r, c), 0.0, "{c}");
    }

    let out = run(&["steady", "--lambda", "2", "--x", "0.3", "--alpha", "0.2"]);
    let r = &rows(&out)[0];
    assert!((f(r, "theta0") - 0.071_952_829_836_920_95).abs() < 1e-9);
    assert!((f(r, "theta1") - 0.06).abs() < 1e-12);
    assert_eq!(r["eradicated"], "false");
}

#[test]
fn rates_give_the_same_point_as_lambda() {
    let a = run(&["steady", "--lambda", "2", "--x", "0.3", "--alpha", "0.2"]);
    let b = run(&[
        "steady", "--nu", "1", "--k", "1", "--delta", "0.5", "--x", "0.3", "--alpha", "0.2",
    ]);
    assert_eq!(rows(&a)[0]["theta0"], rows(&b)[0]["theta0"]);
}

#[test]
fn metadata_precedes_header() {
    let out = run(&[
        "steady", "--lambda", "2", "--x", "0.3", "--alpha0", "0.1", "--alpha1", "0.4",
    ]);
    let text = &out.stdout;
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# tool: rumor-inspect-cli "));
    let config = comment(&out, "config");
    assert_eq!(config["command"], "steady");
    assert_eq!(config["alpha0"], 0.1);
    assert!(lines.nth(1).unwrap().starts_with("lambda,x,alpha0,alpha1,theta0"));
}

#[test]
fn json_mirrors_csv() {
    let csv = run(&["steady", "--lambda", "3", "--x", "0.4", "--alpha", "0.3"]);
    let json = run(&[
        "steady", "--lambda", "3", "--x", "0.4", "--alpha", "0.3", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    let row = &rows(&csv)[0];
    let obj = doc["rows"][0].as_object().unwrap();
    assert_eq!(obj.len(), row.len());
    for (k, v) in obj {
        match v {
            serde_json::Value::Number(n) => assert_eq!(n.as_f64().unwrap(), f(row, k), "{k}"),
            serde_json::Value::Bool(b) => assert_eq!(b.to_string(), row[k.as_str()]),
            other => panic!("{k}: {other}"),
        }
    }
}

#[test]
fn numbers_round_trip_exactly() {
    let out = run(&["steady", "--lambda", "2", "--x", "0.3", "--alpha", "0.2"]);
    let r = &rows(&out)[0];
    let p = rumor_inspect::ModelParams::from_lambda(2.0, 0.3).unwrap();
    let a = rumor_inspect::Allocation::uniform(0.2).unwrap();
    let ss = rumor_inspect::full_steady_state(&p, &a, &Default::default()).unwrap();
    assert_eq!(f(r, "theta0"), ss.theta0);
    assert_eq!(f(r, "rho_00_na"), ss.rho_00_na);
}

#[test]
fn configuration_errors_exit_2() {
    let cases: [&[&str]; 10] = [
        &["steady", "--lambda", "2", "--x", "0.3"],
        &[
            "steady", "--lambda", "2", "--nu", "1", "--k", "1", "--delta", "0.5", "--x", "0.3", "--alpha",
            "0.1",
        ],
        &["steady", "--lambda", "2", "--x", "1.5", "--alpha", "0.1"],
        &[
            "steady", "--lambda", "2", "--x", "0.3", "--alpha", "0.1", "--alpha0", "0.2", "--alpha1", "0.1",
        ],
        &["steady", "--x", "0.3", "--alpha", "0.1"],
        &[
            "sweep", "--axis", "alpha", "--lambda", "2", "--x", "0.3", "--steps", "1",
        ],
        &[
            "sweep", "--axis", "x", "--lambda", "2", "--alpha", "0.2", "--stop", "1.2",
        ],
        &["sweep", "--axis", "A", "--lambda", "2", "--x", "0.3"],
        &[
            "optimize",
            "--objective",
            "truth",
            "--lambda",
            "2",
            "--x",
            "0.3",
            "--A",
            "-1",
        ],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn numerical_failures_exit_3() {
    let out = run(&[
        "dynamics", "--lambda", "2", "--x", "0.3", "--alpha", "0.2", "--t-max", "5",
    ]);
    assert_eq!(out.code, 3);
    assert_eq!(comment(&out, "summary")["termination"], "horizon");

    let out = run(&[
        "steady", "--lambda", "2", "--x", "0.3", "--alpha", "0.2", "--tol", "0",
    ]);
    assert_eq!(out.code, 2);
}

#[test]
fn dynamics_examples() {
    let out = run(&[
        "dynamics", "--lambda", "2", "--x", "0.3", "--alpha", "0.2", "--starts", "8",
    ]);
    assert_eq!(out.code, 0);
    let stability = comment(&out, "stability");
    assert_eq!(stability["passed"], true);
    assert!(stability["max_distance_to_analytic"].as_f64().unwrap() < 1e-6);
    let traj = rows(&out);
    assert_eq!(f(&traj[0], "t"), 0.0);
    let last = traj.last().unwrap();
    assert!((f(last, "theta1") - 0.06).abs() < 1e-6);

    let out = run(&["dynamics", "--lambda", "2", "--x", "0.3", "--alpha", "1"]);
    assert_eq!(out.code, 0);
    assert!((comment(&out, "summary")["theta0"].as_f64().unwrap() - 0.5).abs() < 1e-6);

    let out = run(&[
        "dynamics", "--lambda", "2", "--x", "0.3", "--alpha", "0.2", "--init", "0",
    ]);
    assert_eq!(out.code, 0);
    assert!(rows(&out)
        .iter()
        .all(|r| f(r, "r00a") == 0.0 && f(r, "r11na") == 0.0));
}

#[test]
fn optimize_examples() {
    let out = run(&[
        "optimize",
        "--objective",
        "truth",
        "--lambda",
        "2",
        "--x",
        "0.3",
        "--A",
        "0.2857142857",
    ]);
    assert_eq!(out.code, 0);
    let r = &rows(&out)[0];
    assert_eq!(r["slack"], "true");
    assert_eq!(r["rumor_eradicated"], "false");
    let t = comment(&out, "thresholds");
    assert!(t["A_lower"].as_f64().unwrap() < t["A_upper"].as_f64().unwrap());

    let out = run(&[
        "optimize",
        "--objective",
        "rumor-min",
        "--lambda",
        "2",
        "--x",
        "0.3",
        "--A",
        "0.5",
    ]);
    let r = &rows(&out)[0];
    assert!((f(r, "budget_spent") - 2.0 / 7.0).abs() < 1e-12);
    assert_eq!(r["rumor_eradicated"], "true");

    let out = run(&[
        "optimize",
        "--objective",
        "platform",
        "--lambda",
        "2",
        "--x",
        "0.3",
        "--A",
        "1",
    ]);
    assert!((f(&rows(&out)[0], "alpha0") - 1.0).abs() < 1e-9);
}

#[test]
fn lambda_sweep_matches_standard_sis() {
    let out = run(&[
        "sweep", "--axis", "lambda", "--x", "0.3", "--alpha", "1", "--start", "1", "--stop", "6", "--steps",
        "11",
    ]);
    assert_eq!(out.code, 0);
    let rows = rows(&out);
    assert_eq!(rows.len(), 11);
    assert_eq!(f(&rows[10], "lambda"), 6.0);
    for r in &rows {
        assert!((f(r, "theta0") - (1.0 - 1.0 / f(r, "lambda"))).abs() < 1e-12);
    }
}

#[test]
fn sweep_rows_keep_axis_order_across_jobs() {
    let args = [
        "sweep", "--axis", "x", "--lambda", "3", "--alpha", "0.2", "--steps", "41",
    ];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let four = run(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    let xs: Vec<f64> = rows(&one).iter().map(|r| f(r, "x")).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(xs[0], 0.0);
    assert_eq!(xs[40], 1.0);
}

#[test]
fn thresholds_bundle() {
    let out = run(&["thresholds", "--lambda", "2", "--x", "0.3", "--format", "json"]);
    assert_eq!(out.code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let r = &doc["rows"][0];
    assert!((r["lambda_bar"].as_f64().unwrap() - (2.0 + (4.0f64 / 7.0).sqrt())).abs() < 1e-12);
    assert!((r["eradication_lambda_lo"].as_f64().unwrap() - 1.2).abs() < 1e-12);
    assert!(r["A_tilde"].as_f64().unwrap() > r["A_upper"].as_f64().unwrap());

    let out = run(&["thresholds", "--lambda", "2", "--x", "1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(doc["rows"][0]["lambda_bar"].is_null());
}

#[test]
fn out_writes_the_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("point.json");
    let p = path.to_str().unwrap();
    let out = run(&[
        "steady", "--lambda", "2", "--x", "0.3", "--alpha", "0.2", "--format", "json", "--out", p,
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let p = rumor_inspect::ModelParams::from_lambda(2.0, 0.3).unwrap();
    let a = rumor_inspect::Allocation::uniform(0.2).unwrap();
    let ss = rumor_inspect::full_steady_state(&p, &a, &Default::default()).unwrap();
    assert_eq!(doc["rows"][0]["theta1"].as_f64().unwrap(), ss.theta1);
    assert!(doc["config"].get("out").is_none());
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("sweep"));
}
