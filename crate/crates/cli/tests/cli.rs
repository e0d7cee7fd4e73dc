use std::io::Write;
use std::process::{Command, Output, Stdio};

use covline::io::{parse_instance, parse_solution, InstanceFile, SolutionFile};

fn covline(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_covline"))
        .args(args)
        .env_remove("COVLINE_DEBUG_AUDITS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const ONE_D: &str = r#"{
  "metric": "1d",
  "points": [[1, 0], [2, 0], [3, 0]],
  "segments": [{"l": 0.5, "r": 1.5, "w": 2}, {"l": 1.6, "r": 3.2, "w": 3}, {"l": 0, "r": 3.5, "w": 6}]
}"#;

#[test]
fn solves_the_1d_example() {
    let out = covline(&["solve", "-"], Some(ONE_D));
    assert_eq!(out.status.code(), Some(0));
    let sol = parse_solution(&stdout(&out)).unwrap();
    assert_eq!((sol.weight, sol.chosen, sol.feasible), (5.0, vec![0, 1], true));
}

#[test]
fn every_algorithm_flag_solves() {
    for alg in ["sweep", "baseline", "oracle"] {
        let out = covline(&["solve", "--algorithm", alg], Some(ONE_D));
        assert_eq!(out.status.code(), Some(0), "{alg}");
        assert_eq!(parse_solution(&stdout(&out)).unwrap().weight, 5.0);
    }
}

#[test]
fn infeasible_exits_2() {
    let text = r#"{"metric": "linf", "points": [[0, 5]], "disks": [{"cx": 0, "r": 1, "w": 1}]}"#;
    let out = covline(&["solve"], Some(text));
    assert_eq!(out.status.code(), Some(2));
    assert!(!parse_solution(&stdout(&out)).unwrap().feasible);
}

#[test]
fn malformed_input_exits_1() {
    let unknown = r#"{"metric": "l2", "points": [], "disks": [], "extra": 1}"#;
    assert_eq!(covline(&["solve"], Some(unknown)).status.code(), Some(1));
    let bad_field = r#"{"metric": "l2", "points": [[0, 1]], "disks": [{"cx": "zero", "r": 1, "w": 1}]}"#;
    assert_eq!(covline(&["solve"], Some(bad_field)).status.code(), Some(1));
    let two_lists = r#"{"metric": "l2", "points": [], "disks": [], "segments": []}"#;
    assert_eq!(covline(&["solve"], Some(two_lists)).status.code(), Some(1));
    let negative = r#"{"metric": "l2", "points": [[0, 1]], "disks": [{"cx": 0, "r": 2, "w": -1}]}"#;
    assert_eq!(covline(&["solve"], Some(negative)).status.code(), Some(1));
    assert_eq!(covline(&["solve", "/nonexistent/file.json"], None).status.code(), Some(1));
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--metric", "l2", "--n", "12", "--m", "7", "--seed", "42"];
    let a = covline(&args, None);
    let b = covline(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = covline(&["gen", "--metric", "l2", "--n", "12", "--m", "7", "--seed", "43"], None);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_single_point_single_disk() {
    for metric in ["1d", "unit", "l1", "l2", "linf", "separable", "lower", "halfplane"] {
        let out = covline(&["gen", "--metric", metric, "--n", "1", "--m", "1"], None);
        assert_eq!(out.status.code(), Some(0), "{metric}");
        let solved = covline(&["solve"], Some(&stdout(&out)));
        assert_eq!(solved.status.code(), Some(0), "{metric}");
        assert_eq!(parse_solution(&stdout(&solved)).unwrap().chosen, vec![0]);
    }
    assert_eq!(covline(&["gen", "--metric", "l2", "--n", "0", "--m", "1"], None).status.code(), Some(1));
}

#[test]
fn instance_files_round_trip() {
    for metric in ["1d", "unit", "l1", "l2", "linf", "separable", "halfplane"] {
        let out = covline(&["gen", "--metric", metric, "--n", "9", "--m", "6", "--seed", "5"], None);
        let text = stdout(&out);
        let file: InstanceFile = parse_instance(&text).unwrap();
        let again = serde_json::to_string_pretty(&file).unwrap();
        assert_eq!(text.trim_end(), again);
        assert_eq!(parse_instance(&again).unwrap(), file);
        let problem = file.to_problem().unwrap();
        assert_eq!(InstanceFile::from_problem(&problem), file);
    }
}

#[test]
fn check_passes_on_generated_instances() {
    for metric in ["1d", "unit", "l1", "l2", "linf", "separable", "lower", "halfplane"] {
        let (n, m) = if metric == "halfplane" { ("6", "6") } else { ("14", "10") };
        let inst = stdout(&covline(&["gen", "--metric", metric, "--n", n, "--m", m, "--seed", "9"], None));
        let out = covline(&["check"], Some(&inst));
        assert_eq!(out.status.code(), Some(0), "{metric}: {}", stdout(&out));
    }
}

#[test]
fn check_skips_oracle_for_many_disks() {
    let inst = stdout(&covline(&["gen", "--metric", "l2", "--n", "40", "--m", "30", "--seed", "1"], None));
    let out = covline(&["check"], Some(&inst));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("skipped"));
    assert!(!text.contains("oracle="));
}

#[test]
fn check_against_golden_solution() {
    let dir = std::env::temp_dir().join(format!("covline-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inst_path = dir.join("inst.json");
    std::fs::write(&inst_path, ONE_D).unwrap();
    let inst = inst_path.to_str().unwrap();
    let golden = stdout(&covline(&["solve", inst], None));
    let good = dir.join("good.json");
    std::fs::write(&good, &golden).unwrap();
    let out = covline(&["check", inst, "--expect", good.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));

    let mut corrupted: SolutionFile = parse_solution(&golden).unwrap();
    corrupted.weight += 1.0;
    let bad = dir.join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&corrupted).unwrap()).unwrap();
    let out = covline(&["check", inst, "--expect", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected solution"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn audits_run_from_the_environment() {
    let inst = stdout(&covline(&["gen", "--metric", "l2", "--n", "20", "--m", "12", "--seed", "2"], None));
    let mut child = Command::new(env!("CARGO_BIN_EXE_covline"))
        .arg("check")
        .env("COVLINE_DEBUG_AUDITS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(inst.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("sweep audits"));
}

#[test]
fn bench_smoke_row() {
    let start = std::time::Instant::now();
    let out = covline(&["bench", "--metric", "l2", "--sizes", "1024"], None);
    assert_eq!(out.status.code(), Some(0));
    let row: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(row["n_plus_m"], 1024);
    assert!(row["elapsed_ms"].as_f64().unwrap() < 1000.0);
    assert!(start.elapsed().as_secs_f64() < 30.0);
}
