use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quarter(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quarter"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const X_FILE: &str = "[[[0,0],[2,2]],[[0,2],[2,0]]]";
const DISJOINT_FILE: &str = "[[[0,0],[4,0]],[[0,1],[4,1]],[[0,2],[4,2]]]";

#[test]
fn verify_prop14_at_five_passes_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(&["--out-dir", "out", "verify", "prop14", "--s", "5"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/verify-prop14.json")).unwrap()).unwrap();
    assert_eq!(report["graph_count"], 34);
    assert_eq!(report["min_phi"], "5/17");
    assert!(report["violations"].as_array().unwrap().is_empty());
    assert!(dir.path().join("out/verify-prop14.manifest.json").exists());
}

#[test]
fn verify_s8_lists_no_admissible_free_graph() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(&["verify", "s8"], dir.path());
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["admissible_free_count"], 0);
    assert_eq!(report["graph_count"], 12346);
}

#[test]
fn verify_beyond_the_sweep_range_is_a_capacity_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(&["verify", "prop14", "--s", "9"], dir.path());
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("capacity"));
}

#[test]
fn clique_bound_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(&["verify", "clique-bound", "--t", "4", "--s", "6"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&quarter(&["verify", "prop15"], dir.path())), 2);
    assert_eq!(code(&quarter(&["embed", "--config", "missing.json"], dir.path())), 2);
    assert_eq!(
        code(&quarter(
            &["--format", "csv", "verify", "prop14", "--s", "3"],
            dir.path()
        )),
        2
    );
    assert_eq!(
        code(&quarter(&["extremal", "--n", "16", "--seeds", "9..1"], dir.path())),
        2
    );
    assert_eq!(
        code(&quarter(&["--workers", "0", "extremal", "--n", "16"], dir.path())),
        2
    );
    fs::write(dir.path().join("bad.json"), "{\"h\": \"K4\"}").unwrap();
    assert_eq!(code(&quarter(&["embed", "--config", "bad.json"], dir.path())), 2);
}

fn embed_config(block_size: usize, seeds: u64) -> String {
    format!(
        r#"{{"h":"K4","block_size":{block_size},"p_in":0.25,"eps1":"1/5","lambda":0.1,"seed_start":0,"seed_count":{seeds}}}"#
    )
}

#[test]
fn embed_writes_one_row_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k4.json"), embed_config(40, 100)).unwrap();
    let o = quarter(&["--out-dir", "out", "embed", "--config", "k4.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("out/embed.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "seed,success,verified,failure_step,cause,min_set_size,steps"
    );
    assert_eq!(lines.count(), 100);
    assert!(stderr(&o).contains("success rate"));
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/embed.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seeds"].as_array().unwrap().len(), 100);
    assert_eq!(manifest["inputs"].as_object().unwrap().len(), 1);
}

#[test]
fn single_vertex_blocks_fail_at_the_first_step() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tiny.json"), embed_config(1, 5)).unwrap();
    let o = quarter(&["embed", "--config", "tiny.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(&r[1], "false");
        assert_eq!(&r[3], "1");
    }
}

#[test]
fn crossings_on_an_x_give_one_crossing() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.json"), X_FILE).unwrap();
    let o = quarter(&["geometry", "crossings", "x.json"], dir.path());
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["curves"], serde_json::json!([0, 1]));
}

#[test]
fn disjoint_curves_give_the_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("d.json"), DISJOINT_FILE).unwrap();
    let o = quarter(&["geometry", "graph", "d.json"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "B?\n");
    let o = quarter(&["--format", "json", "geometry", "graph", "d.json"], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 3);
    assert!(v["edges"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_curve_file_reports_its_location() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "[\n  [[0,0],[1,1]],\n  [[0,1],oops]\n]").unwrap();
    let o = quarter(&["geometry", "crossings", "bad.json"], dir.path());
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn separator_pipeline_on_random_curves() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(
        &[
            "--seed",
            "3",
            "--out-dir",
            ".",
            "geometry",
            "random",
            "--n",
            "40",
            "--segments",
            "3",
            "--bbox",
            "100000",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = quarter(&["geometry", "separator", "curves.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["curves"], 40);
    assert_eq!(v["verified"], true);
    assert_eq!(
        v["pair"]["A"].as_array().unwrap().len(),
        v["pair"]["B"].as_array().unwrap().len()
    );
}

#[test]
fn extremal_table_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(
        &[
            "--out-dir",
            "run",
            "extremal",
            "--n",
            "16,20",
            "--eps",
            "0.1",
            "--seeds",
            "1..10",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("run/extremal.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 20);
    assert!(text.starts_with("n,seed,edges,budget,biclique,exact,log2_n\n"));

    let o = quarter(
        &["--out-dir", "again", "replay", "run/extremal.manifest.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(
        fs::read(dir.path().join("run/extremal.csv")).unwrap(),
        fs::read(dir.path().join("again/extremal.csv")).unwrap()
    );

    fs::write(dir.path().join("run/extremal.csv"), "tampered").unwrap();
    let manifest_path = dir.path().join("run/extremal.manifest.json");
    let mut manifest: Value = serde_json::from_str(&fs::read_to_string(&manifest_path).unwrap()).unwrap();
    manifest["outputs"]["extremal.csv"] = Value::String("0".repeat(64));
    fs::write(&manifest_path, manifest.to_string()).unwrap();
    let o = quarter(
        &["--out-dir", "third", "replay", "run/extremal.manifest.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn replay_refuses_changed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.json"), X_FILE).unwrap();
    let o = quarter(&["--out-dir", "run", "geometry", "crossings", "x.json"], dir.path());
    assert_eq!(code(&o), 0);
    let o = quarter(
        &["--out-dir", "r2", "replay", "run/geometry-crossings.manifest.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    fs::write(dir.path().join("x.json"), DISJOINT_FILE).unwrap();
    let o = quarter(
        &["--out-dir", "r3", "replay", "run/geometry-crossings.manifest.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 4);
}

#[test]
fn minimize_phi_on_extreme_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(&["minimize-phi", "D??", "D~{"], dir.path());
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["value"], "1/5");
    assert_eq!(v[1]["value"], "3/5");
    assert_eq!(v[1]["certified"], true);
}

#[test]
fn admissible_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(&["admissible", "D~{"], dir.path());
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["admissible"], true);
    assert_eq!(v["verified"], true);

    let o = quarter(&["admissible", "A?"], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["admissible"], false);

    fs::write(
        dir.path().join("w.json"),
        r#"{"k":4,"edges":[[0,1,"1/3"],[1,2,"3/4"],[0,2,"1"],[2,3,"1/2"]]}"#,
    )
    .unwrap();
    let o = quarter(&["reduce-weights", "w.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["issues"].as_array().unwrap().is_empty());
    assert!(v["quotient"]["graph6"].is_string());

    fs::write(dir.path().join("bad.json"), r#"{"k":2,"edges":[[0,1,"3/2"]]}"#).unwrap();
    assert_eq!(code(&quarter(&["reduce-weights", "bad.json"], dir.path())), 4);
}

#[test]
fn patterns_in_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let o = quarter(
        &[
            "--format",
            "graph6",
            "enumerate-patterns",
            "--t",
            "5",
            "--max-vertices",
            "6",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "D~{");
    assert_eq!(lines.len(), 2);
}
