use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use torus_hardcore::{BipartiteGraph, Parity, Rational, TorusGraph};
use torus_hardcore_cli::report::report_json;
use torus_hardcore_cli::ExperimentReport;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-hardcore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = cli(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn rational(v: &Value) -> &str {
    v["rational"].as_str().unwrap()
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Class masses by filtering all 2^N subsets.
fn brute_force_masses(g: &TorusGraph, lambda: &Rational) -> [Rational; 3] {
    let n = g.len();
    let mut weights = [q("0"), q("0"), q("0")];
    for mask in 0u64..1 << n {
        let independent = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .all(|v| g.neighbors(v).into_iter().all(|u| mask >> u & 1 == 0));
        if !independent {
            continue;
        }
        let (mut e, mut o) = (0i64, 0i64);
        for v in (0..n).filter(|&v| mask >> v & 1 == 1) {
            match g.parity(v) {
                Parity::Even => e += 1,
                Parity::Odd => o += 1,
            }
        }
        let slot = match e.cmp(&o) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => 2,
        };
        let mut w = q("1");
        for _ in 0..e + o {
            w *= lambda.clone();
        }
        weights[slot] += w;
    }
    let z: Rational = weights.iter().cloned().sum();
    weights.map(|w| w / z.clone())
}

#[test]
fn exact_on_four_cycle() {
    let r = json(&["exact", "--L", "4", "--d", "1", "--lambda", "1"]);
    let res = &r["results"];
    assert_eq!(res["numStates"], 7);
    assert_eq!(rational(&res["Z"]), "7");
    assert_eq!(rational(&res["classMass"]["balanced"]), "1/7");
    assert_eq!(rational(&res["classMass"]["evenHeavy"]), "3/7");
    assert_eq!(rational(&res["classMass"]["oddHeavy"]), "3/7");
    assert_eq!(res["mixingTime"]["tau"], 6);
    let bound = &res["conductanceBounds"][0];
    assert_eq!(rational(&bound["bound"]), "3/8");
    assert!(bound["ratio"].as_f64().unwrap() >= 1.0);
}

#[test]
fn exact_masses_on_small_torus_match_brute_force() {
    let g = TorusGraph::new(4, 2).unwrap();
    for lambda in ["1/2", "1", "2"] {
        let r = json(&["exact", "--L", "4", "--d", "2", "--lambda", lambda]);
        let mass = &r["results"]["classMass"];
        let [b, e, o] = brute_force_masses(&g, &q(lambda));
        assert_eq!(q(rational(&mass["balanced"])), b, "lambda {lambda}");
        assert_eq!(q(rational(&mass["evenHeavy"])), e);
        assert_eq!(q(rational(&mass["oddHeavy"])), o);
        assert_eq!(r["results"]["numStates"], 743);
    }
}

#[test]
fn mixing_reports_bound_and_ratio() {
    let r = json(&["mixing", "--L", "4", "--d", "1"]);
    let c = &r["results"]["conductance"];
    assert_eq!(rational(&c["bound"]), "3/8");
    assert_eq!(c["ratio"].as_f64().unwrap(), 6.0 / 0.375);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["exact", "--L", "3"]).status.code(), Some(2));
    assert_eq!(cli(&["exact", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(cli(&["exact", "--lambda", "x"]).status.code(), Some(2));
    assert_eq!(cli(&["cutsets"]).status.code(), Some(2));
    assert_eq!(
        cli(&["exact", "--L", "8", "--d", "2"]).status.code(),
        Some(3)
    );
    assert_eq!(
        cli(&["exact", "--L", "4", "--d", "1"]).status.code(),
        Some(0)
    );
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = cli(&[
        "exact",
        "--L",
        "4",
        "--d",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: ExperimentReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report_json(&report), text);
    let again: ExperimentReport = serde_json::from_str(&report_json(&report)).unwrap();
    assert_eq!(again, report);
}

#[test]
fn csv_trajectory_has_fixed_header_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = cli(&[
        "sample",
        "--steps",
        "1000",
        "--replicas",
        "2",
        "--record-every",
        "100",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,size,countE,countO,class"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        let (size, e, o): (usize, usize, usize) = (
            cols[1].parse().unwrap(),
            cols[2].parse().unwrap(),
            cols[3].parse().unwrap(),
        );
        assert_eq!(size, e + o);
    }
    let sidecar: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("traj.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["results"]["burnIn"], 444);
}

#[test]
fn missing_directory_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("absent").join("r.json");
    let out = cli(&[
        "exact",
        "--L",
        "4",
        "--d",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(path.to_str().unwrap()), "{err}");
}

fn without_clock(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wallClock");
    v
}

#[test]
fn seeded_runs_are_reproducible_across_pool_sizes() {
    let base = [
        "sample",
        "--steps",
        "5000",
        "--replicas",
        "6",
        "--seed",
        "9",
    ];
    let a = json(&[&base[..], &["--workers", "1"]].concat());
    let b = json(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(a["results"], b["results"]);
    let c = json(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(without_clock(b), without_clock(c));
    let other = json(&[
        "sample",
        "--steps",
        "5000",
        "--replicas",
        "6",
        "--seed",
        "10",
    ]);
    assert_ne!(a["results"], other["results"]);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small cycle\nL = 6\nd = 1\nlambda = 1\n").unwrap();
    let from_file = json(&["exact", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file["config"]["L"], 6);
    let overridden = json(&["exact", "--config", cfg.to_str().unwrap(), "--L", "4"]);
    assert_eq!(overridden["config"]["L"], 4);
    assert_eq!(overridden["results"]["numStates"], 7);
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(
        cli(&["exact", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn escape_flags_censored_runs() {
    let r = json(&[
        "escape",
        "--L",
        "8",
        "--lambda",
        "4",
        "--replicas",
        "3",
        "--steps",
        "10",
    ]);
    let res = &r["results"];
    assert_eq!(res["censored"], 3);
    assert!(res["median"].is_null());
    for h in res["replicas"].as_array().unwrap() {
        assert_eq!(h["censored"], true);
        assert!(h["hittingTime"].is_null());
    }
    let fast = json(&[
        "escape",
        "--lambda",
        "0.1",
        "--replicas",
        "8",
        "--steps",
        "100000",
    ]);
    assert_eq!(fast["results"]["censored"], 0);
    let slow = json(&[
        "escape",
        "--lambda",
        "4",
        "--replicas",
        "8",
        "--steps",
        "100000",
    ]);
    assert!(fast["results"]["median"].as_u64() < slow["results"]["median"].as_u64());
}

#[test]
fn peierls_sample_feeds_cutsets() {
    let r = json(&["peierls", "--L", "8", "--lambda", "1"]);
    let cutsets = r["results"]["cutsets"].as_array().unwrap();
    assert!(!cutsets.is_empty());
    for c in cutsets {
        assert_eq!(c["fallback"], false);
        assert_eq!(rational(&c["flowSumExact"]), "1");
        let (size, we, wo) = (
            c["size"].as_u64().unwrap(),
            c["wE"].as_u64().unwrap(),
            c["wO"].as_u64().unwrap(),
        );
        assert_eq!(size, 4 * (wo - we));
    }
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("state.json");
    std::fs::write(&input, r["results"]["sample"].to_string()).unwrap();
    let family = json(&["cutsets", "--input", input.to_str().unwrap()]);
    let listed = family["results"]["cutsets"].as_array().unwrap();
    assert_eq!(listed.len(), cutsets.len());
    for (a, b) in listed.iter().zip(cutsets) {
        assert_eq!(a["size"], b["size"]);
        assert_eq!(a["propertiesHold"], true);
        assert_eq!(a["sizeIdentity"], true);
    }
}

#[test]
fn cutsets_rejects_bad_records() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    // Vertices 0 and 1 are adjacent.
    std::fs::write(&input, r#"{"L":4,"d":2,"bits":"0300"}"#).unwrap();
    assert_eq!(
        cli(&["cutsets", "--input", input.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::write(&input, "not json").unwrap();
    assert_eq!(
        cli(&["cutsets", "--input", input.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert!(!Path::new("/definitely/missing.json").exists());
    assert_eq!(
        cli(&["cutsets", "--input", "/definitely/missing.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn isoperimetry_and_flowcheck_counts() {
    let iso = json(&["isoperimetry", "--samples", "500", "--seed", "3"]);
    assert_eq!(iso["results"]["edgeFailures"], 0);
    let flow = json(&[
        "flowcheck",
        "--L",
        "6",
        "--lambda",
        "1/3",
        "--replicas",
        "5",
    ]);
    let res = &flow["results"];
    assert_eq!(res["checked"], res["equalToOne"]);
    assert!(res["failures"].as_array().unwrap().is_empty());
}
