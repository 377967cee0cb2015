use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermilie")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn tmp(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fermilie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn closure_presets() {
    let v = json(&["closure", "--preset", "w-family", "-d", "3"]);
    assert_eq!(v["report"]["dim"], 15);
    assert_eq!(v["report"]["structure"], "su(4)");
    let v = json(&["closure", "--preset", "fully-controllable", "-d", "4", "--oracle"]);
    assert_eq!(v["report"]["dim"], 126);
    assert_eq!(v["report"]["structure"], "2 su(8)");
    assert_eq!(v["oracle"]["pass"], true);
}

#[test]
fn closure_from_file_and_expect_dim() {
    let ops = r#"{"generators":[
        {"rep":"majorana","n":2,"terms":[{"m":[1,2],"c":[1,1]}]},
        {"rep":"majorana","n":2,"terms":[{"m":[2,3],"c":[1,1]}]}]}"#;
    let p = tmp("ops.json", ops);
    let v = json(&["closure", p.to_str().unwrap()]);
    assert_eq!(v["report"]["dim"], 3);
    let out = run(&["closure", p.to_str().unwrap(), "--expect-dim", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let f = json(&["closure", p.to_str().unwrap(), "--field", "float"]);
    assert_eq!(f["report"]["dim"], 3);
}

#[test]
fn input_errors_exit_2() {
    let p = tmp("bad.json", "{not json");
    let out = run(&["closure", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["closure", "--preset", "nope", "-d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["witness", "-d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["table", "fermi-ti", "--range", "x"]).status.code(), Some(2));
    assert_eq!(run(&["closure", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn tables_diff() {
    for (kind, range) in [("fermi-ti", "1..4"), ("spin-ti", "1..4"), ("ti-quadratic", "2..8")] {
        let out = run(&["table", kind, "--range", range, "--diff"]);
        assert!(out.status.success(), "{kind}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(!String::from_utf8_lossy(&out.stdout).contains("MISMATCH"));
    }
    let v = json(&["table", "spin-ti", "--range", "4"]);
    let cell = v["cells"].as_array().unwrap().iter().find(|c| c["M"] == 2).unwrap().clone();
    assert_eq!(cell["dim"], 57);
    assert_eq!(cell["structure"], "su(6) + su(4) + 2 su(2) + u(1)");
}

#[test]
fn table_csv() {
    let out = run(&["table", "fermi-ti", "--range", "2..3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("size,M,dim,structure,expected,matches"));
    assert_eq!(lines.next(), Some("2,2,2,\"2 u(1)\",\"2 u(1)\",true"));
}

#[test]
fn witness_odd_and_even() {
    let v = json(&["witness", "-d", "7"]);
    assert_eq!(v["verdict"], true);
    assert!(v["trace"][0].as_f64().unwrap().abs() > 1.0);
    let nn = v["nn_traces"].as_array().unwrap();
    assert_eq!(nn.len(), 6);
    assert!(nn.iter().all(|t| t["exact_zero"] == true));
    let text = String::from_utf8(run(&["witness", "-d", "7"]).stdout).unwrap();
    assert!(text.contains("verdict: h_o outside t^f_2"));
    let v = json(&["witness", "-d", "6", "--oracle"]);
    assert!((v["normalized"].as_f64().unwrap() - 0.875).abs() < 1e-12);
    assert_eq!(v["oracle"]["pass"], true);
}

#[test]
fn gap_scan_rows_within_bound() {
    let out = run(&["gap-scan", "-M", "3", "-d", "50,100,200", "--seed", "1", "--count", "20", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 61);
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (gap, bound): (f64, f64) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        assert!(gap <= bound * (1.0 + 1e-12), "{line}");
    }
    let v = json(&["gap-scan", "-M", "3", "-d", "6", "--count", "3", "--oracle"]);
    assert_eq!(v["oracle"]["pass"], true);
}

#[test]
fn quasifree_orbit_from_files() {
    let g1 = json(&["quasifree", "random", "-d", "3", "--seed", "2"]);
    let g2 = json(&["quasifree", "random", "-d", "3", "--seed", "5"]);
    let p1 = tmp("g1.json", &g1.to_string());
    let p2 = tmp("g2.json", &g2.to_string());
    let v = json(&["quasifree", "orbit", p1.to_str().unwrap(), p2.to_str().unwrap(), "--oracle"]);
    assert_eq!(v["same_orbit"], true);
    assert_eq!(v["singular_values"][0].as_array().unwrap().len(), 3);
    assert_eq!(v["oracle"]["pass"], true);
    let small = tmp("small.json", "[[0,0.5],[-0.5,0]]");
    let v = json(&["quasifree", "canonical", small.to_str().unwrap()]);
    assert_eq!(v["pure"], false);
    assert_eq!(run(&["quasifree", "orbit", p1.to_str().unwrap(), small.to_str().unwrap()]).status.code(), Some(2));
    let mixed = tmp(
        "mixed.json",
        "[[0,0.5,0,0,0,0],[-0.5,0,0,0,0,0],[0,0,0,1,0,0],[0,0,-1,0,0,0],[0,0,0,0,0,1],[0,0,0,0,-1,0]]",
    );
    let v = json(&["quasifree", "orbit", p1.to_str().unwrap(), mixed.to_str().unwrap()]);
    assert_eq!(v["same_orbit"], false);
    let not_skew = tmp("ns.json", "[[1,0],[0,1]]");
    assert_eq!(run(&["quasifree", "canonical", not_skew.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn quasifree_controllability() {
    let v = json(&["quasifree", "controllable", "--preset", "w123", "-d", "4"]);
    assert_eq!(v["pure"]["controllable"], true);
    assert_eq!(v["tensor_square"]["commutant_dim"], 3);
    let v = json(&["quasifree", "controllable", "--preset", "w12", "-d", "4"]);
    assert_eq!(v["pure"]["controllable"], false);
    assert_eq!(v["pure"]["closure_dim"], 16);
}

#[test]
fn ti_commands() {
    let g = json(&["ti", "random", "-d", "5", "--seed", "3"]);
    let p = tmp("ti.json", &g.to_string());
    let v = json(&["ti", "invariants", p.to_str().unwrap()]);
    for x in v["invariants"].as_array().unwrap() {
        let x = x.as_f64().unwrap();
        assert!([-2.0, 0.0, 2.0].iter().any(|c| (x - c).abs() < 1e-8));
    }
    let v = json(&["ti", "orbit", p.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(v["same_orbit"], true);
    let v = json(&["ti", "structure", "-d", "6", "--rsym", "--field", "float", "--oracle"]);
    assert_eq!(v["matches"], true);
    assert_eq!(v["oracle"]["skipped"], Value::Null);
}

#[test]
fn particle_number_commands() {
    let verdict = |fam: &str, n: &str| json(&["particle-number", "controllable", "--family", fam, "-d", "4", "-n", n])["transitive"].clone();
    assert_eq!(verdict("u", "2"), true);
    assert_eq!(verdict("sp", "1"), true);
    assert_eq!(verdict("sp", "2"), false);
    let v = json(&["particle-number", "structure", "-d", "3", "--oracle"]);
    assert_eq!(v["matches"], true);
    assert_eq!(v["oracle"]["pass"], true);
}

#[test]
fn crosscheck_command() {
    let v = json(&["crosscheck", "closure:w123", "-d", "3"]);
    assert_eq!(v["pass"], true);
    assert_eq!(run(&["crosscheck", "nonsense", "-d", "3"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["gap-scan", "-d", "50", "--count", "5", "--seed", "7", "--format", "csv"][..],
        &["quasifree", "random", "-d", "4", "--seed", "11", "--format", "json"][..],
        &["closure", "--preset", "w123", "-d", "3", "--format", "json"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
