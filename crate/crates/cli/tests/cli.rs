use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-dd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_dihedral_k7_writes_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("d7.txt");
    let o = run(&["construct", "--family", "dihedral", "--k", "7", "--m", "2", "--out", path_str(&edges)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("order 1792 degree 6 diameter 7"));
    let text = fs::read_to_string(&edges).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# 1792 6 false"));
    // undirected, degree 6: 1792·6/2 edges
    assert_eq!(lines.count(), 1792 * 3);
}

#[test]
fn table_k4_renders_published_row() {
    let o = run(&["table", "--k", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "5 | 60 | Z₁₅⋊Z₄ | 60/5⁴ ≈ 0.09600"), "{out}");
    assert!(out.lines().any(|l| l == "3 | 4 | Z₄ | 4/3⁴ ≈ 0.04938"));
}

#[test]
fn table_rebuilds_small_rows_and_reads_them_back() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["table", "--k", "5", "--rebuild", "--budget-sets", "2000", "--out", path_str(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("rebuilt by search"));
    let o = run(&["table", "--k", "5", "--cert", path_str(dir.path())]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("stored certificate").count(), 2, "{}", stdout(&o));
}

#[test]
fn search_verify_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("z12.json");
    let o = run(&["search", "--k", "3", "--s", "4", "--n", "12", "--out", path_str(&cert)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("12/4³ ≈ 0.18750"));

    let o = run(&["verify", "--cert", path_str(&cert), "--m", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("certificate ok"));

    // perturb one matrix entry by +1
    let text = fs::read_to_string(&cert).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = &mut json["solutions"][5]["M_inverse"][0][0];
    *entry = serde_json::json!(entry.as_i64().unwrap() + 1);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string_pretty(&json).unwrap()).unwrap();
    let o = run(&["verify", "--cert", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("element 5"), "{}", stderr(&o));
}

#[test]
fn search_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |p: &Path| {
        vec![
            "search".to_string(),
            "--k".into(),
            "5".into(),
            "--s".into(),
            "3".into(),
            "--group".into(),
            "symmetric(3)".into(),
            "--out".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let mut one = vec!["--jobs".to_string(), "1".into()];
    one.extend(args(&a));
    let mut two = vec!["--jobs".to_string(), "2".into()];
    two.extend(args(&b));
    let one: Vec<&str> = one.iter().map(String::as_str).collect();
    let two: Vec<&str> = two.iter().map(String::as_str).collect();
    assert!(run(&one).status.success());
    assert!(run(&two).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn construct_certificates_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.json");
    let o = run(&["construct", "--family", "dihedral", "--k", "9", "--m", "2", "--cert", path_str(&d)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["verify", "--cert", path_str(&d)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("diameter 9"));

    let h = dir.path().join("h.json");
    let o = run(&["construct", "--family", "heisenberg", "--p", "5", "--cert", path_str(&h)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("order 250"));
    let o = run(&["verify", "--cert", path_str(&h)]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn coverage_range() {
    let o = run(&["coverage", "--k", "7", "--k-max", "21"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 8);
    assert!(stdout(&o).contains("k=21: 42 elements covered"));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(run(&["coverage", "--k", "8"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "dihedral"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--cert", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let o = run(&["search", "--k", "4", "--s", "5", "--group", "semidirect(cyclic(15),cyclic(4),exp=2)", "--budget-sets", "10"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn construct_abelian_and_bench() {
    let o = run(&["construct", "--family", "abelian", "--n", "100"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("order 100"));
    let o = run(&["bench", "--family", "heisenberg", "--p", "7"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("bfs"));
}
