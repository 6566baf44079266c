use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn edsolve(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_edsolve"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_wall_time(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("wall_time_ms");
    }
    v
}

#[test]
fn solve_p3_with_eds1() {
    let out = edsolve(&["solve", "--alg", "eds1", "--k", "1"], "0 1\n1 2\n");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["decision"], true);
    assert_eq!(v["size"], 1);
    assert_eq!(v["witness"].as_array().unwrap().len(), 1);
}

#[test]
fn single_edge_with_k_zero_is_no() {
    let out = edsolve(&["solve", "--alg", "eds", "--k", "0"], "0 1\n");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["decision"], false);
}

#[test]
fn every_algorithm_and_kernel_first() {
    let c5 = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
    for alg in ["eds", "eds1", "auto", "brute"] {
        for extra in [&[][..], &["--kernelize-first"][..]] {
            let mut args = vec!["solve", "--alg", alg, "--k", "2"];
            args.extend_from_slice(extra);
            let out = edsolve(&args, c5);
            assert_eq!(out.status.code(), Some(0), "{alg} {extra:?}");
            let v = json(&out);
            assert_eq!(v["size"], 2);
            assert_eq!(v["id_base"], 1);
            let ids: Vec<u64> = v["witness"]
                .as_array()
                .unwrap()
                .iter()
                .flat_map(|e| e.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()))
                .collect();
            assert!(ids.iter().all(|&i| (1..=5).contains(&i)));
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let g = "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n";
    let a = edsolve(&["solve", "--alg", "eds1", "--k", "2", "--trace"], g);
    let b = edsolve(&["solve", "--alg", "eds1", "--k", "2", "--trace"], g);
    assert_eq!(without_wall_time(json(&a)), without_wall_time(json(&b)));
    assert!(json(&a)["stats"]["trace"].is_array());
    let plain = edsolve(&["solve", "--alg", "eds1", "--k", "2"], g);
    assert!(json(&plain)["stats"].get("trace").is_none());
}

#[test]
fn kernelize_p4_emits_four_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p4.txt");
    let kernel = dir.path().join("kernel.txt");
    std::fs::write(&input, "0 1\n1 2\n2 3\n").unwrap();
    let out = edsolve(
        &[
            "kernelize",
            input.to_str().unwrap(),
            "--k",
            "1",
            "--graph-out",
            kernel.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "kernel");
    assert_eq!(v["kernel"]["n"], 4);
    assert_eq!(v["ledger"]["vertices"], 4);
    assert_eq!(v["mapping"][0]["role"], "deleted");
    assert_eq!(v["mapping"][1]["kernel_id"], 0);
    assert_eq!(std::fs::read_to_string(&kernel).unwrap().lines().count(), 3);
}

#[test]
fn reductions_and_oracles() {
    let out = edsolve(&["mmm", "--k", "1"], "0 1\n1 2\n2 3\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witness"], serde_json::json!([[1, 2]]));

    let out = edsolve(&["mmm", "--k", "1"], "0 1\n2 3\n");
    assert_eq!(out.status.code(), Some(1));

    let out = edsolve(&["matrix", "--k", "1"], "2 2\n11\n10\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witness"], serde_json::json!([[0, 0]]));

    let out = edsolve(&["matrix", "--k", "1"], "2 2\n10\n01\n");
    assert_eq!(out.status.code(), Some(1));

    for (problem, input, size) in [
        ("eds", "0 1\n1 2\n2 3\n3 4\n4 0\n", 2),
        ("mmm", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n", 2),
        ("matrix", "2 2\n10\n01\n", 2),
    ] {
        let out = edsolve(&["oracle", problem], input);
        assert_eq!(out.status.code(), Some(0), "{problem}");
        assert_eq!(json(&out)["size"], size, "{problem}");
    }
}

#[test]
fn errors_exit_with_two() {
    let out = edsolve(&["solve", "--k", "1", "--format", "dimacs"], "e 1 1\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));

    let out = edsolve(&["solve", "--k", "1", "--alg", "nope"], "0 1\n");
    assert_eq!(out.status.code(), Some(2));

    let out = edsolve(&["solve", "--bogus"], "");
    assert_eq!(out.status.code(), Some(2));

    let out = edsolve(&["matrix", "--k", "1"], "2 2\n12\n00\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_is_seeded() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_edsolve"))
            .args(["bench", "--family", "cubic", "--kmax", "3"])
            .env("EDSOLVE_SEED", "11")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let mut v = json(&out);
        for row in v["rows"].as_array_mut().unwrap() {
            row.as_object_mut().unwrap().remove("wall_time_ms");
        }
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["seed"], 11);
    let rows = a["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["decision"] == false));
}

#[test]
fn lists_algorithms() {
    let out = edsolve(&["algorithms"], "");
    let names: Vec<String> = json(&out)["algorithms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["auto", "brute", "eds", "eds1"]);
}
