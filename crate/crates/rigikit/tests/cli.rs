//! End-to-end tests of the `rigikit` binary: graph I/O, analysis commands,
//! constructions, exit codes, and the registry frontend.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rigikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigikit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rigikit_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rigikit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn construct_banana_and_rank_it() {
    let banana = rigikit(&["construct", "banana", "--d", "3"]);
    let graph = stdout_json(&banana);
    assert_eq!(graph["n"], 8);
    assert_eq!(graph["edges"].as_array().unwrap().len(), 18);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("banana.json");
    std::fs::write(&path, &banana.stdout).unwrap();
    let rank = rigikit(&["rank", "--dim", "3", path.to_str().unwrap()]);
    let value = stdout_json(&rank);
    assert_eq!(value["rank"], 17);
    assert_eq!(value["circuit"], true);
    assert_eq!(value["rigid"], false);
}

#[test]
fn construct_cone_of_k4_is_k5() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = rigikit(&["construct", "complete", "--n", "4"]);
    let path = dir.path().join("k4.json");
    std::fs::write(&path, &k4.stdout).unwrap();
    let coned = rigikit(&["construct", "cone", "--in", path.to_str().unwrap()]);
    let k5 = rigikit(&["construct", "complete", "--n", "5"]);
    assert_eq!(stdout_json(&coned), stdout_json(&k5));
}

#[test]
fn analyze_k67_reports_the_unbalanced_double_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let k67 = rigikit(&["construct", "bipartite", "--m", "6", "--n", "7"]);
    let path = dir.path().join("k67.json");
    std::fs::write(&path, &k67.stdout).unwrap();
    let analysis = rigikit(&["analyze", "--dim", "4", path.to_str().unwrap()]);
    let value = stdout_json(&analysis);
    assert_eq!(value["k"], 2);
    assert_eq!(value["parts"].as_array().unwrap().len(), 7);
    assert_eq!(value["balanced"], false);
    assert_eq!(value["intersection_rank"], 0);
    assert_eq!(value["bound"], 5);
    assert_eq!(value["technicolour"], serde_json::json!([0, 1, 2, 3, 4, 5]));
}

#[test]
fn analyze_rejects_acyclic_input_with_exit_2() {
    let output = rigikit_with_stdin(&["analyze", "--dim", "2", "-"], "3\n0 1\n1 2\n");
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("not cyclic"), "stderr: {stderr}");
}

#[test]
fn malformed_json_exits_1() {
    let output = rigikit_with_stdin(&["rank", "--dim", "2", "-"], "{\"n\": 3, \"edges\": [[0,");
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn chain_pipes_into_analyze_as_a_three_fold_circuit() {
    let chain = rigikit(&["construct", "banana-chain", "--d", "3", "--copies", "4"]);
    let output = rigikit_with_stdin(
        &["analyze", "--dim", "3", "-"],
        std::str::from_utf8(&chain.stdout).unwrap(),
    );
    let value = stdout_json(&output);
    assert_eq!(value["k"], 3);
}

#[test]
fn edge_list_text_input_works() {
    let output = rigikit_with_stdin(&["rank", "--dim", "1", "-"], "4\n0 1  1 2\n2 0 2 3\n");
    let value = stdout_json(&output);
    assert_eq!(value["rank"], 3);
}

#[test]
fn closure_and_components_and_partition_commands() {
    let banana = rigikit(&["construct", "banana", "--d", "3"]);
    let text = std::str::from_utf8(&banana.stdout).unwrap();

    let closed = rigikit_with_stdin(&["closure", "--dim", "3", "-"], text);
    let value = stdout_json(&closed);
    assert_eq!(value["added"], 1);
    assert_eq!(value["cyclic"], true);
    assert_eq!(value["k"], 1);

    let comps = rigikit_with_stdin(&["components", "--dim", "3", "-"], text);
    assert_eq!(stdout_json(&comps)["count"], 1);

    let parts = rigikit_with_stdin(&["partition", "--dim", "3", "-"], text);
    let value = stdout_json(&parts);
    assert_eq!(value["k"], 1);
    assert_eq!(value["parts"].as_array().unwrap().len(), 1);

    let balanced = rigikit_with_stdin(&["balanced", "--dim", "3", "-"], text);
    assert_eq!(stdout_json(&balanced)["balanced"], true);
}

#[test]
fn deterministic_output_across_runs_and_backends_agree() {
    let banana = rigikit(&["construct", "banana", "--d", "3"]);
    let text = std::str::from_utf8(&banana.stdout).unwrap();
    let first = rigikit_with_stdin(&["analyze", "--dim", "3", "-"], text);
    let second = rigikit_with_stdin(&["analyze", "--dim", "3", "-"], text);
    assert_eq!(first.stdout, second.stdout);
    let rational = rigikit_with_stdin(
        &["analyze", "--dim", "3", "--backend", "rational", "-"],
        text,
    );
    assert_eq!(stdout_json(&first), stdout_json(&rational));
}

#[test]
fn graphic_backend_and_trials_flags() {
    let output = rigikit_with_stdin(
        &[
            "rank",
            "--dim",
            "1",
            "--backend",
            "graphic",
            "--trials",
            "3",
            "-",
        ],
        "5\n0 2 1 2 0 3 1 3 0 4 1 4\n",
    );
    assert_eq!(stdout_json(&output)["rank"], 4);
}

#[test]
fn paperlab_single_check_unknown_name_and_list() {
    let single = rigikit(&["paperlab", "FIG1-PARTITIONS"]);
    assert!(single.status.success());
    let line: serde_json::Value = serde_json::from_slice(&single.stdout).unwrap();
    assert_eq!(line["name"], "FIG1-PARTITIONS");
    assert_eq!(line["passed"], true);

    let unknown = rigikit(&["paperlab", "NOPE"]);
    assert_eq!(unknown.status.code(), Some(2));

    let list = rigikit(&["paperlab", "--list"]);
    let names = String::from_utf8_lossy(&list.stdout);
    assert!(names.contains("K67-UNBALANCED"));
    assert!(names.contains("MATCHING-M2"));
}

#[test]
fn paperlab_junit_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.xml");
    let output = rigikit(&[
        "paperlab",
        "FIG1-PARTITIONS",
        "SMALL-FLEXIBLE",
        "--junit",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let xml = std::fs::read_to_string(&path).unwrap();
    assert!(xml.contains("<testsuite name=\"paperlab\" tests=\"2\" failures=\"0\">"));
    assert!(xml.contains("FIG1-PARTITIONS"));
}

#[test]
fn table_output_mode() {
    let banana = rigikit(&["construct", "banana", "--d", "3"]);
    let text = std::str::from_utf8(&banana.stdout).unwrap();
    let output = rigikit_with_stdin(&["rank", "--dim", "3", "--out", "table", "-"], text);
    let table = String::from_utf8_lossy(&output.stdout);
    assert!(table.contains("rank"));
    assert!(table.contains("17"));
}
