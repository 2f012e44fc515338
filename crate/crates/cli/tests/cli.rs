use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hydralab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydralab"))
        .args(args)
        .env_remove("HYDRALAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = hydralab(&all);
    (serde_json::from_slice(&out.stdout).expect("json output"), out.status.code().unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn family_file(dir: &TempDir, name: &str, family: &[&str]) -> PathBuf {
    let mut args = vec!["family"];
    args.extend_from_slice(family);
    let out = hydralab(&args);
    assert!(out.status.success(), "{family:?}");
    write(dir, name, &stdout(&out))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exact_on_three_legged_spider() {
    let dir = TempDir::new().unwrap();
    let t3 = family_file(&dir, "t3.txt", &["Tk", "3"]);
    let out = hydralab(&["exact", s(&t3)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "hydra number: 8"));
}

#[test]
fn certificate_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    let b2 = family_file(&dir, "b2.txt", &["B", "2"]);
    let cert = dir.path().join("b2.json");
    let out = hydralab(&["exact", s(&b2), "--certificate-out", s(&cert)]);
    assert_eq!(out.status.code(), Some(0));
    let out = hydralab(&["verify", s(&cert), s(&b2)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("represents: yes"));
}

#[test]
fn failed_verification_exits_one() {
    let dir = TempDir::new().unwrap();
    let p4 = family_file(&dir, "p4.txt", &["path", "4"]);
    let cert = write(&dir, "bad.json", r#"{"n": 4, "arcs": [[0, 1, 2], [1, 2, 3]]}"#);
    let (doc, code) = json(&["verify", s(&cert), s(&p4)]);
    assert_eq!(code, 1);
    assert_eq!(doc["ok"], false);
    assert!(!doc["violations"].as_array().unwrap().is_empty());
}

#[test]
fn constructions_pass_verify() {
    let dir = TempDir::new().unwrap();
    let graphs = [
        family_file(&dir, "b3.txt", &["B", "3"]),
        family_file(&dir, "c7.txt", &["cycle", "7"]),
        family_file(&dir, "g2.txt", &["Gk", "2"]),
        family_file(&dir, "turan.txt", &["turan", "7", "3"]),
        family_file(&dir, "rand.txt", &["--seed", "7", "random", "12", "6"]),
    ];
    for g in &graphs {
        for method in ["auto", "path-cover"] {
            let cert = dir.path().join("c.json");
            let out = hydralab(&["construct", s(g), "--method", method, "--certificate-out", s(&cert)]);
            assert_eq!(out.status.code(), Some(0), "{} {method}", g.display());
            assert_eq!(hydralab(&["verify", s(&cert), s(g)]).status.code(), Some(0));
        }
    }
    // A star's line graph is complete, so it has a Hamiltonian cycle; a path's does not.
    let star = family_file(&dir, "star.txt", &["star", "4"]);
    assert_eq!(hydralab(&["construct", s(&star), "--method", "line-ham"]).status.code(), Some(0));
    let path = family_file(&dir, "p5.txt", &["path", "5"]);
    assert_eq!(hydralab(&["construct", s(&path), "--method", "line-ham"]).status.code(), Some(1));
}

#[test]
fn exact_lies_within_bounds() {
    let dir = TempDir::new().unwrap();
    let mut graphs = vec![
        family_file(&dir, "b3.txt", &["B", "3"]),
        family_file(&dir, "spider.txt", &["spider", "2,2,1,1"]),
        family_file(&dir, "cat.txt", &["caterpillar", "2,0,3"]),
        family_file(&dir, "forbidden.txt", &["forbidden-caterpillar"]),
    ];
    for seed in 0..6 {
        graphs.push(family_file(&dir, &format!("r{seed}.txt"), &["--seed", &seed.to_string(), "random", "7", "3"]));
    }
    for g in &graphs {
        let (b, code) = json(&["bounds", s(g)]);
        assert_eq!(code, 0);
        let (e, code) = json(&["exact", s(g)]);
        assert_eq!(code, 0);
        let (lo, hi, v) = (b["lower"].as_u64().unwrap(), b["upper"].as_u64().unwrap(), e["value"].as_u64().unwrap());
        assert!(lo <= v && v <= hi, "{}: {lo} <= {v} <= {hi}", g.display());
    }
}

#[test]
fn components_of_two_triangles() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tt.txt", "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    let (doc, code) = json(&["experiment", "components", s(&g)]);
    assert_eq!(code, 0);
    assert_eq!(doc["whole"], 8);
    assert_eq!(doc["sum_plus_count"], 8);
    assert_eq!(doc["relation"], "equal");
}

#[test]
fn every_report_carries_the_schema() {
    let dir = TempDir::new().unwrap();
    let g = family_file(&dir, "p4.txt", &["path", "4"]);
    let runs: [&[&str]; 5] = [
        &["exact", s(&g)],
        &["bounds", s(&g), "--p-strategy", "exhaustive"],
        &["family", "star", "3"],
        &["fkn", "5", "3"],
        &["experiment", "edge-add", s(&g)],
    ];
    for args in runs {
        let (doc, _) = json(args);
        assert_eq!(doc["schema"], "hydralab/v1", "{args:?}");
    }
    let (doc, code) = json(&["exact", "/nonexistent/graph.txt"]);
    assert_eq!((code, doc["schema"].as_str()), (2, Some("hydralab/v1")));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3 2\n0 1\n0 1\n");
    assert_eq!(hydralab(&["exact", s(&bad)]).status.code(), Some(2));
    assert_eq!(hydralab(&["exact"]).status.code(), Some(2));
    assert_eq!(hydralab(&["closure", s(&bad), "x"]).status.code(), Some(2));
}

#[test]
fn search_limits_exit_three() {
    let dir = TempDir::new().unwrap();
    let b4 = family_file(&dir, "b4.txt", &["B", "4"]);
    let (doc, code) = json(&["exact", s(&b4), "--limit-nodes", "1"]);
    assert_eq!(code, 3);
    assert_eq!(doc["exact"], false);
    assert!(doc["lower"].as_u64().unwrap() <= doc["upper"].as_u64().unwrap());
    let big = family_file(&dir, "b6.txt", &["B", "6"]);
    assert_eq!(hydralab(&["exact", s(&big)]).status.code(), Some(3));
}

#[test]
fn capped_and_single_headed_modes() {
    let dir = TempDir::new().unwrap();
    let t3 = family_file(&dir, "t3.txt", &["Tk", "3"]);
    let (doc, code) = json(&["exact", s(&t3), "--single-headed"]);
    assert_eq!((code, &doc["single_headed"]), (0, &Value::Bool(false)));
    let p3 = family_file(&dir, "p3.txt", &["path", "3"]);
    let (doc, code) = json(&["exact", s(&p3), "--caps", "0=0,1=0,2=0"]);
    assert_eq!(code, 1, "{doc}");
    let (doc, code) = json(&["exact", s(&t3), "--all-optima"]);
    assert_eq!(code, 0);
    assert_eq!(doc["value"], 8);
    assert!(!doc["optima"].as_array().unwrap().is_empty());
}

#[test]
fn horn_check_and_minimize() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.horn", "a & b -> c\na & c -> b\nb & c -> a\n# comment\n");
    let (doc, code) = json(&["horn", "check", s(&phi)]);
    assert_eq!((code, &doc["hydra"]), (0, &Value::Bool(true)));
    let (doc, code) = json(&["horn", "minimize", s(&phi)]);
    assert_eq!(code, 0);
    assert_eq!(doc["clauses"].as_array().unwrap().len(), 3);
    let not_hydra = write(&dir, "psi.horn", "a & b -> c\nc & d -> a\n");
    assert_eq!(hydralab(&["horn", "check", s(&not_hydra)]).status.code(), Some(1));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = TempDir::new().unwrap();
    let g = family_file(&dir, "r.txt", &["--seed", "3", "random", "8", "4"]);
    let one = stdout(&hydralab(&["exact", s(&g), "--threads", "1"]));
    let four = stdout(&hydralab(&["exact", s(&g), "--threads", "4"]));
    let by_env = Command::new(env!("CARGO_BIN_EXE_hydralab"))
        .args(["exact", s(&g)])
        .env("HYDRALAB_THREADS", "2")
        .output()
        .unwrap();
    let strip = |t: &str| t.lines().filter(|l| !l.starts_with("nodes:")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&one), strip(&four));
    assert_eq!(strip(&one), strip(&stdout(&by_env)));
}

#[test]
fn random_family_follows_the_seed() {
    let a = stdout(&hydralab(&["--seed", "11", "family", "random", "9", "4"]));
    let b = stdout(&hydralab(&["family", "random", "9", "4", "--seed", "11"]));
    assert_eq!(a, b);
    assert!(a.starts_with("9 12"));
}
