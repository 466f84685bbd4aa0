use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlab")).args(args).env_remove("TRANSVERSAL_LAB_SEED").output().expect("tlab runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_owned()
    }
}

#[test]
fn gen_counts() {
    let d = Dir::new();
    let t = d.path("t.json");
    assert_eq!(code(&tlab(&["gen", "tangent-rects", "--n", "2..12", "--i", "1..4", "--out", &t])), 0);
    let f = json(Path::new(&t));
    assert_eq!(f["bodies"].as_array().unwrap().len(), 44);
    assert_eq!(f["generator"]["name"], "tangent-rects");
    assert!(f["bodies"].as_array().unwrap().iter().all(|b| b["type"] == "orect"));

    let g = d.path("g.json");
    assert_eq!(code(&tlab(&["gen", "unit-ball-grid", "--rows", "3..6", "--cols", "1..8", "--out", &g])), 0);
    assert_eq!(json(Path::new(&g))["bodies"].as_array().unwrap().len(), 32);
}

#[test]
fn gen_is_byte_identical_and_matches_golden() {
    let a = tlab(&["gen", "unit-ball-grid", "--rows", "3", "--cols", "1..2"]);
    let b = tlab(&["gen", "unit-ball-grid", "--rows", "3", "--cols", "1..2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap(), std::fs::read_to_string(golden("grid-row.json")).unwrap());
}

#[test]
fn report_schema_is_pinned() {
    let fam = golden("grid-row.json");
    let out = tlab(&["check", "pierce", "--family", fam.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), std::fs::read_to_string(golden("pierce-report.json")).unwrap());
}

#[test]
fn bad_params_and_io_exit_two() {
    assert_eq!(code(&tlab(&["gen", "tangent-rects", "--n", "1..3", "--i", "1"])), 2);
    assert_eq!(code(&tlab(&["gen", "tangent-rects", "--n", "5..3", "--i", "1"])), 2);
    assert_eq!(code(&tlab(&["gen", "no-such-generator"])), 2);
    assert_eq!(code(&tlab(&["check", "pierce", "--family", "/nonexistent/f.json"])), 2);
    let d = Dir::new();
    let bad = d.path("bad.json");
    std::fs::write(&bad, r#"{"version":"1","dim":2,"bodies":[{"type":"ball","center":[0,0],"radius":-1}]}"#).unwrap();
    assert_eq!(code(&tlab(&["check", "pierce", "--family", &bad])), 2);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&tlab(&["check", "pierce", "--family", &bad])), 2);
}

#[test]
fn growth_of_a_grid_row() {
    let d = Dir::new();
    let row = d.path("row.json");
    tlab(&["gen", "unit-ball-grid", "--rows", "3", "--cols", "1..6", "--out", &row]);
    let rep = d.path("r.json");
    assert_eq!(code(&tlab(&["check", "growth", "--family", &row, "--k", "0", "--sizes", "1..6", "--out", &rep])), 0);
    let r = json(Path::new(&rep));
    let exact: Vec<u64> = r["details"]["points"].as_array().unwrap().iter().map(|p| p["exact"].as_u64().unwrap()).collect();
    assert_eq!(exact, vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn check_exit_codes() {
    let d = Dir::new();
    let row = d.path("row.json");
    tlab(&["gen", "unit-ball-grid", "--rows", "3", "--cols", "1..4", "--out", &row]);
    assert_eq!(code(&tlab(&["check", "pierce", "--family", &row, "--m", "4"])), 0);
    assert_eq!(code(&tlab(&["check", "pierce", "--family", &row, "--m", "3"])), 1);
    assert_eq!(code(&tlab(&["check", "transversal", "--family", &row, "--k", "1"])), 0);
    assert_eq!(code(&tlab(&["check", "transversal", "--family", &row, "--k", "0"])), 1);
    assert_eq!(code(&tlab(&["check", "kdep", "--family", &row, "--k", "0"])), 1);
    assert_eq!(code(&tlab(&["check", "pq", "--family", &row, "--p", "3", "--q", "2", "--k", "1"])), 0);
    assert_eq!(code(&tlab(&["check", "pq", "--family", &row, "--p", "3", "--q", "2", "--k", "0"])), 1);
    assert_eq!(code(&tlab(&["check", "compactness", "--family", &row, "--t", "2", "--m", "1", "--k", "1"])), 0);
}

#[test]
fn kdep_on_lifted_rects() {
    let d = Dir::new();
    let lifted = d.path("l.json");
    tlab(&["gen", "lifted-rects", "--n", "2..5", "--i", "1..3", "--out", &lifted]);
    let rep = d.path("k.json");
    let c = code(&tlab(&["check", "kdep", "--k", "1", "--family", &lifted, "--indices", "2,3,4", "--out", &rep]));
    let r = json(Path::new(&rep));
    match c {
        0 => assert_eq!(r["certificates"][0]["indices"].as_array().unwrap().len(), 3),
        3 => assert_eq!(r["verdict"], "inconclusive"),
        other => panic!("unexpected exit {other}"),
    }
}

#[test]
fn escape_certificate() {
    let d = Dir::new();
    let pts = d.path("p.json");
    std::fs::write(&pts, "[[0.5, 0.5], [1.2, 0.3], [0.9, 0.99], [1.0, 0.0]]").unwrap();
    let rep = d.path("e.json");
    assert_eq!(code(&tlab(&["check", "escape", "--points", &pts, "--out", &rep])), 0);
    let r = json(Path::new(&rep));
    assert!(r["certificates"][0]["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn audits_fail_hold_and_are_seeded() {
    let d = Dir::new();
    let g = d.path("g.json");
    tlab(&["gen", "unit-ball-grid", "--rows", "3..8", "--cols", "1..3", "--out", &g]);
    let rep = d.path("a.json");
    assert_eq!(code(&tlab(&["check", "audit", "--family", &g, "--group-size", "3", "--k", "0", "--mode", "hetero", "--out", &rep])), 1);
    assert_eq!(json(Path::new(&rep))["verdict"], "fails");

    let l = d.path("l.json");
    tlab(&["gen", "lifted-rects", "--n", "2..9", "--i", "1..4", "--out", &l]);
    let args = ["check", "audit", "--family", &l, "--group-size", "4", "--k", "1", "--budget", "10"];
    let seeded = Command::new(env!("CARGO_BIN_EXE_tlab")).args(args).env("TRANSVERSAL_LAB_SEED", "11").output().unwrap();
    let r: Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_eq!(r["seed"], 11);
    assert_eq!(r["coverage"]["mode"], "sampled");
    let flag = Command::new(env!("CARGO_BIN_EXE_tlab")).args(["--seed", "12"]).args(args).env("TRANSVERSAL_LAB_SEED", "11").output().unwrap();
    let r: Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(r["seed"], 12);
}

#[test]
fn reports_do_not_depend_on_threads() {
    let d = Dir::new();
    let l = d.path("l.json");
    tlab(&["gen", "lifted-rects", "--n", "2..9", "--i", "1..4", "--out", &l]);
    let run = |t: &str| tlab(&["--threads", t, "--seed", "5", "check", "audit", "--family", &l, "--group-size", "4", "--k", "1", "--budget", "24"]).stdout;
    assert_eq!(run("1"), run("8"));
}

#[test]
fn builds() {
    let d = Dir::new();
    let rows = d.path("rows.json");
    tlab(&["gen", "row-streams", "--rows", "1..12", "--out", &rows]);
    let seq = d.path("seq.json");
    assert_eq!(code(&tlab(&["build", "disjoint-hetero", "--streams", &rows, "--M", "12", "--out", &seq])), 0);
    let s = json(Path::new(&seq));
    assert_eq!(s["members"].as_array().unwrap().len(), 12);
    assert_eq!(s["outcome"], "complete");
    // every earlier member is certified disjoint from the new one
    for (j, step) in s["steps"].as_array().unwrap().iter().enumerate() {
        let certs = step["certificates"].as_array().unwrap();
        assert_eq!(certs.len(), j);
        assert!(certs.iter().all(|c| c["answer"]["status"] == "empty" && c["answer"]["certified"] == true));
    }

    let cones = d.path("cones.json");
    tlab(&["gen", "cone-streams", "--rows", "1..6", "--out", &cones]);
    let ind = d.path("ind.json");
    assert_eq!(code(&tlab(&["build", "independent-k1-d2", "--streams", &cones, "--M", "6", "--out", &ind])), 0);
    let s = json(Path::new(&ind));
    let triples: usize = s["steps"].as_array().unwrap().iter().map(|st| st["certificates"].as_array().unwrap().len()).sum();
    assert_eq!(triples, 20);

    let empty = tlab(&["build", "disjoint-hetero", "--streams", &rows, "--M", "0"]);
    assert_eq!(code(&empty), 0);
    let v: Value = serde_json::from_slice(&empty.stdout).unwrap();
    assert!(v["members"].as_array().unwrap().is_empty());

    let stuck = d.path("stuck.json");
    assert_eq!(code(&tlab(&["build", "independent-k1-d2", "--streams", &rows, "--M", "6", "--out", &stuck])), 4);
    assert_eq!(json(Path::new(&stuck))["outcome"], "stuck");
}

#[test]
fn plots() {
    let d = Dir::new();
    let t = d.path("t.json");
    tlab(&["gen", "tangent-rects", "--n", "2..6", "--i", "1..3", "--out", &t]);
    let (a, b) = (d.path("a.svg"), d.path("b.svg"));
    assert_eq!(code(&tlab(&["plot", &t, "--unit-circle", "--axes", "--out", &a])), 0);
    tlab(&["plot", &t, "--unit-circle", "--axes", "--out", &b]);
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.contains("version=\"1.1\""));
    assert_eq!(svg.matches("<polygon").count(), 15);

    let l = d.path("l.json");
    tlab(&["gen", "lifted-rects", "--n", "2..3", "--i", "1", "--out", &l]);
    let out = tlab(&["plot", &l]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("z=3.000000"));

    let tail = d.path("tail.json");
    tlab(&["gen", "ball-with-tail", "--m", "1..3", "--out", &tail]);
    assert!(String::from_utf8(tlab(&["plot", &tail]).stdout).unwrap().contains("<polyline"));

    let rows = d.path("rows.json");
    let seq = d.path("seq.json");
    tlab(&["gen", "row-streams", "--rows", "1..4", "--out", &rows]);
    tlab(&["build", "disjoint-hetero", "--streams", &rows, "--M", "4", "--out", &seq]);
    let svg = String::from_utf8(tlab(&["plot", &seq]).stdout).unwrap();
    assert_eq!(svg.matches("<text").count(), 4);

    let iv = d.path("iv.json");
    std::fs::write(&iv, r#"{"version":"1","dim":1,"bodies":[{"type":"interval","lo":0,"hi":1}]}"#).unwrap();
    assert_eq!(code(&tlab(&["plot", &iv])), 2);
}
