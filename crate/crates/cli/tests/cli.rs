use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hullforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullforge"))
        .args(args)
        .env_remove("HULLFORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn construct_to(path: &Path, args: &[&str]) {
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = hullforge(&all);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn construct_writes_certified_object() {
    let out = hullforge(&["construct", "--theorem", "t3.5", "--q", "5", "--n", "5", "--k", "2", "--ell", "1"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certificate"]["dim"], 1);
    assert_eq!(v["certificate"]["kind"], "hermitian");
    assert_eq!(v["k"], 2);
}

#[test]
fn full_field_code_has_length_q_squared_plus_one() {
    let out = hullforge(&["construct", "--theorem", "t3.11", "--q", "5", "--ell", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["a"].as_array().unwrap().len() + 1, 26);
    assert_eq!(v["extended"], true);
}

#[test]
fn invalid_parameters_exit_2() {
    let out = hullforge(&["construct", "--theorem", "t3.5", "--q", "5", "--n", "9", "--k", "2", "--ell", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("n <= q"), "{}", stderr(&out));

    let out = hullforge(&[
        "construct",
        "--theorem",
        "t3.9",
        "--q",
        "5",
        "--nprime",
        "6",
        "--t",
        "1",
        "--k",
        "2",
        "--ell",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("precondition"));

    let out = hullforge(&["construct", "--theorem", "t3.6i", "--q", "4", "--k", "1", "--ell", "0"]);
    assert_eq!(code(&out), 2, "missing shape parameters");
}

#[test]
fn round_trip_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--theorem", "t3.3i", "--q", "9", "--r", "3", "--z", "1", "--t", "2", "--k", "3", "--ell", "1"],
        &["--theorem", "t3.4", "--q", "13", "--n", "5", "--k", "2", "--ell", "1"],
        &["--theorem", "t3.6ii", "--q", "4", "--r", "4", "--z", "1", "--t", "3", "--k", "2", "--ell", "1"],
        &["--theorem", "t3.10", "--q", "5", "--nprime", "6", "--t", "2", "--k", "2", "--ell", "1"],
        &["--theorem", "t3.11", "--q", "3", "--ell", "2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("code{i}.json"));
        construct_to(&path, args);
        let out = hullforge(&["verify", "--in", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        assert!(String::from_utf8_lossy(&out.stdout).contains("certificate ok"));
    }
}

#[test]
fn oracle_agrees_on_small_instances() {
    let dir = tempfile::tempdir().unwrap();
    for ell in 0..=2 {
        let path = dir.path().join(format!("c{ell}.json"));
        let ell = ell.to_string();
        construct_to(&path, &["--theorem", "t3.5", "--q", "5", "--n", "5", "--k", "2", "--ell", &ell]);
        let out = hullforge(&["verify", "--in", path.to_str().unwrap(), "--oracle", "--strict"]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(text.matches(": ok").count(), 3, "{text}");
    }
}

#[test]
fn tampered_multiplier_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    construct_to(&path, &["--theorem", "t3.5", "--q", "5", "--n", "5", "--k", "2", "--ell", "1"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let old = v["v"][1].as_u64().unwrap();
    v["v"][1] = Value::from(if old == 3 { 4 } else { 3 });
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = hullforge(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["v"][1] = Value::from(old);
    v["certificate"]["dim"] = Value::from(2);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = hullforge(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn budget_env_controls_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    construct_to(&path, &["--theorem", "t3.5", "--q", "5", "--n", "5", "--k", "2", "--ell", "1"]);
    let p = path.to_str().unwrap();
    let run = |budget: &str, strict: bool| {
        let mut args = vec!["verify", "--in", p, "--oracle"];
        if strict {
            args.push("--strict");
        }
        Command::new(env!("CARGO_BIN_EXE_hullforge")).args(&args).env("HULLFORGE_BUDGET", budget).output().unwrap()
    };
    assert_eq!(code(&run("enum=10,minor=3,hull=10", true)), 4);
    let lax = run("enum=10,minor=3,hull=10", false);
    assert_eq!(code(&lax), 0);
    assert!(String::from_utf8_lossy(&lax.stdout).contains("skipped"));
    assert_eq!(code(&run("enum=1000", true)), 0);
    assert_eq!(code(&run("speed=3", false)), 2);
}

#[test]
fn table1_fixture_matches() {
    let out = hullforge(&[
        "table",
        "--family",
        "t4.8i",
        "--q",
        "9",
        "--t",
        "8",
        "--r",
        "9",
        "--z",
        "1",
        "--paper-fixture",
        "table1",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("20/20 rows match"), "{}", stderr(&out));
    let csv = String::from_utf8_lossy(&out.stdout);
    assert_eq!(csv.lines().next(), Some("k,ell,n,kappa,d,c,q"));
    assert!(csv.lines().any(|l| l == "3,1,72,68,4,2,9"));
    assert_eq!(csv.lines().count(), 21);
}

#[test]
fn table2_fixture_matches() {
    let out = hullforge(&[
        "table",
        "--family",
        "t4.9i",
        "--q",
        "11",
        "--t",
        "8",
        "--nprime",
        "12",
        "--paper-fixture",
        "table2",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("26/26 rows match"), "{}", stderr(&out));
}

#[test]
fn table3_fixture_q7_matches() {
    let out = hullforge(&["table", "--family", "t4.10", "--q", "7", "--paper-fixture", "table3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("6/6 rows match"), "{}", stderr(&out));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);
    assert_eq!(rows[0]["params"]["n"], 50);
}

#[test]
fn fixture_diff_is_reported() {
    let out = hullforge(&["table", "--paper-fixture", "table3", "--q", "13", "--format", "markdown"]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("0/12 rows match"), "{err}");
    assert!(err.contains("computed [[170,145,14;1]]_13"), "{err}");
}

#[test]
fn table_rejects_bad_requests() {
    let out = hullforge(&["table", "--family", "t4.6", "--q", "5", "--paper-fixture", "table1"]);
    assert_eq!(code(&out), 2);
    let out = hullforge(&["table", "--family", "t4.8i", "--q", "9"]);
    assert_eq!(code(&out), 2, "missing shape parameters");
    let out = hullforge(&["table", "--family", "t4.6", "--q", "6", "--n", "5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn table_window_and_formats() {
    let out = hullforge(&["table", "--family", "t4.6", "--q", "5", "--n", "5", "--k-max", "2", "--ell-min", "0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = String::from_utf8_lossy(&out.stdout);
    let pairs: Vec<(String, String)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].to_string())
        })
        .collect();
    let want: Vec<(String, String)> =
        [(1, 0), (2, 0), (2, 1)].iter().map(|(k, l)| (k.to_string(), l.to_string())).collect();
    assert_eq!(pairs, want);
}
