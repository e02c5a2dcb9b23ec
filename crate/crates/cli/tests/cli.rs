use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sepsearch(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepsearch"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn generate_reports_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = sepsearch(&["generate", "--family", "grid", "--size", "32", "--out", "g.txt"], dir.path());
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["n"], 1024);
    let bound = report["separator_bound"].as_f64().unwrap();
    // 2 sqrt(2048) + 1
    assert!((bound - (2.0 * 2048f64.sqrt() + 1.0)).abs() < 1e-9);
    assert!((bound - 91.5).abs() < 0.05);
    let text = std::fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.starts_with("1024 1984 0\n"));
}

#[test]
fn generate_tree_passes_validators() {
    let dir = tempfile::tempdir().unwrap();
    let out = sepsearch(
        &["generate", "--family", "tree", "--n", "100", "--seed", "7", "--out", "t.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let g = sepsearch::graph::parse_graph(&std::fs::read_to_string(dir.path().join("t.txt")).unwrap())
        .unwrap();
    g.validate().unwrap();
    assert!(g.is_tree());
    assert_eq!(g.order(), 100);
}

#[test]
fn generate_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&sepsearch(&["generate", "--family", "grid", "--size", "0"], dir.path())), 2);
    assert_eq!(code(&sepsearch(&["generate", "--family", "moebius", "--n", "9"], dir.path())), 2);
    assert_eq!(code(&sepsearch(&["generate", "--family", "grid", "--n", "10"], dir.path())), 2);
    assert_eq!(code(&sepsearch(&["frobnicate"], dir.path())), 2);
}

#[test]
fn run_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let gen = sepsearch(
        &[
            "generate", "--family", "grid", "--size", "16", "--out", "g.txt", "--values", "v.txt",
            "--function", "row-major",
        ],
        dir.path(),
    );
    assert_eq!(code(&gen), 0);

    let out = sepsearch(&["run", "g.txt", "v.txt", "--algorithm", "sep-det"], dir.path());
    assert_eq!(code(&out), 0);
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let result = lines.last().unwrap();
    assert_eq!(result["kind"], "result");
    assert_eq!(result["success"], true);
    assert_eq!(result["vertex"], 0);
    assert!(lines.iter().any(|l| l["kind"] == "totals"));

    for start in ["0", "77", "255"] {
        let out = sepsearch(&["run", "g.txt", "v.txt", "--algorithm", "sd", "--start", start], dir.path());
        assert_eq!(code(&out), 0);
    }

    let out = sepsearch(
        &["run", "g.txt", "v.txt", "--algorithm", "sep-quantum", "--trace", "trace.jsonl", "--format", "csv"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("algorithm,n,d,g,seed,vertex,success"));
    let trace = std::fs::read_to_string(dir.path().join("trace.jsonl")).unwrap();
    assert!(trace.lines().last().unwrap().contains("\"totals\""));

    assert_eq!(code(&sepsearch(&["run", "g.txt", "v.txt", "--algorithm", "qsd"], dir.path())), 2);
}

#[test]
fn capped_rsd_can_end_unverified() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&sepsearch(
            &[
                "generate", "--family", "path", "--n", "400", "--out", "p.txt", "--values", "s.txt",
                "--function", "staircase",
            ],
            dir.path(),
        )),
        0
    );
    // the walk from the best of 20 samples needs more than 20 steps for
    // most seeds on a 400-step staircase
    let codes: Vec<i32> = (0..10)
        .map(|seed| {
            let seed = seed.to_string();
            code(&sepsearch(&["run", "p.txt", "s.txt", "--algorithm", "rsd", "--seed", &seed], dir.path()))
        })
        .collect();
    assert!(codes.iter().all(|&c| c == 0 || c == 1));
    assert!(codes.contains(&1));
    let converge = sepsearch(&["run", "p.txt", "s.txt", "--algorithm", "rsd-converge"], dir.path());
    assert_eq!(code(&converge), 0);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "3 2 0\n0 1\n1 x\n").unwrap();
    let out = sepsearch(&["separate", "bad.txt"], dir.path());
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    std::fs::write(dir.path().join("g.txt"), "2 1 0\n0 1\n").unwrap();
    std::fs::write(dir.path().join("v.txt"), "0 1\n0 2\n").unwrap();
    let out = sepsearch(&["verify", "g.txt", "v.txt", "0"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    assert_eq!(code(&sepsearch(&["verify", "missing.txt", "v.txt", "0"], dir.path())), 2);
}

#[test]
fn verify_valley() {
    let dir = tempfile::tempdir().unwrap();
    let gen = sepsearch(
        &[
            "generate", "--family", "grid", "--size", "5", "--out", "g.txt", "--values", "v.txt",
            "--function", "valley",
        ],
        dir.path(),
    );
    assert_eq!(code(&gen), 0);
    // center (2, 2) of a 5x5 grid is vertex 12
    let out = sepsearch(&["verify", "g.txt", "v.txt", "12"], dir.path());
    assert_eq!(code(&out), 0);
    let cert = stdout_json(&out);
    assert_eq!(cert["vertex"], 12);
    assert_eq!(cert["value"], 0);
    assert_eq!(cert["neighbors"].as_array().unwrap().len(), 4);
    assert_eq!(code(&sepsearch(&["verify", "g.txt", "v.txt", "13"], dir.path())), 1);
    assert_eq!(code(&sepsearch(&["verify", "g.txt", "v.txt", "25"], dir.path())), 2);

    std::fs::write(dir.path().join("one.txt"), "1 0 0\n").unwrap();
    std::fs::write(dir.path().join("one_v.txt"), "0 4\n").unwrap();
    assert_eq!(code(&sepsearch(&["verify", "one.txt", "one_v.txt", "0"], dir.path())), 0);
}

#[test]
fn separate_dumps_certificate() {
    let dir = tempfile::tempdir().unwrap();
    sepsearch(&["generate", "--family", "triangulated-grid", "--size", "12", "--out", "t.txt"], dir.path());
    for strategy in ["auto", "planar", "bfs-fallback"] {
        let out = sepsearch(&["separate", "t.txt", "--strategy", strategy, "--strong"], dir.path());
        assert_eq!(code(&out), 0, "{strategy}");
        let sep = stdout_json(&out);
        for field in ["strategy", "vertices", "component_sizes", "size_bound", "met_bound", "high_degree"] {
            assert!(sep.get(field).is_some(), "{strategy}: {field}");
        }
        let largest = sep["component_sizes"][0].as_u64().unwrap();
        assert!(largest <= 2 * 144 / 3);
    }
    // a triangulated grid has no grid layout
    assert_eq!(code(&sepsearch(&["separate", "t.txt", "--strategy", "grid"], dir.path())), 2);
}

#[test]
fn experiment_is_reproducible_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"family": "grid", "sizes": [4, 6, 8, 10], "function": "random",
        "algorithms": ["sep-det", "sep-quantum", "rsd"], "trials": 3, "seed": 5,
        "output": "results.csv", "inject_errors": true}"#;
    std::fs::write(dir.path().join("config.json"), config).unwrap();
    let first = sepsearch(&["experiment", "config.json", "--jobs", "3"], dir.path());
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let summary = stdout_json(&first);
    assert_eq!(summary["cells"], 36);
    assert_eq!(summary["resumed"], 0);
    assert!(summary["fits"].as_array().unwrap().len() >= 3);
    let csv = std::fs::read(dir.path().join("results.csv")).unwrap();
    assert!(dir.path().join("results.summary.json").exists());

    let again = sepsearch(&["experiment", "config.json", "--jobs", "1"], dir.path());
    assert_eq!(stdout_json(&again)["resumed"], 36);
    assert_eq!(std::fs::read(dir.path().join("results.csv")).unwrap(), csv);

    let fresh = sepsearch(&["experiment", "config.json", "--out", "other.csv", "--jobs", "2"], dir.path());
    assert_eq!(code(&fresh), 0);
    assert_eq!(std::fs::read(dir.path().join("other.csv")).unwrap(), csv);

    let table = sepsearch(&["compare", "config.json", "--format", "csv"], dir.path());
    assert_eq!(code(&table), 0);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("rsd_reference"));
    assert_eq!(text.lines().count(), 5);

    std::fs::write(dir.path().join("bad.json"), r#"{"family": "grid", "sizes": [], "function": "random", "algorithms": ["sd"]}"#).unwrap();
    assert_eq!(code(&sepsearch(&["experiment", "bad.json"], dir.path())), 2);
}
