//! End-to-end runs of the `gmdh-logic` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gmdh_logic::model::ModelFile;
use gmdh_logic::synthetic::{diagnostic, DiagnosticShape};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gmdh-logic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Full 3-variable cube with the given target.
fn cube_csv(dir: &Path, name: &str, f: fn(bool, bool, bool) -> bool) -> PathBuf {
    let mut text = String::from("x0,x1,x2,class\n");
    for i in 0..8 {
        let (a, b, c) = (i & 4 != 0, i & 2 != 0, i & 1 != 0);
        text += &format!("{},{},{},{}\n", u8::from(a), u8::from(b), u8::from(c), u8::from(f(a, b, c)));
    }
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn diagnostic_csv(dir: &Path) -> PathBuf {
    let set = diagnostic(DiagnosticShape::default()).unwrap();
    let mut text = set.features().iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(",") + ",class\n";
    for (row, y) in set.rows().iter().zip(set.labels()) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        text += &format!("{},{}\n", cells.join(","), u8::from(*y));
    }
    let path = dir.join("diag.csv");
    fs::write(&path, text).unwrap();
    path
}

fn train(dir: &Path, csv: &Path, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.join(format!("{}.json", csv.file_stem().unwrap().to_string_lossy()));
    let mut args = vec!["train", csv.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    (run(&args), out)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn and_target_trains_at_depth_one() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "and.csv", |a, b, _| a && b);
    let (o, model) = train(dir.path(), &csv, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let m = ModelFile::load(&model).unwrap();
    assert!(m.is_success());
    assert_eq!(m.body.outcome.depth, 1);
    assert!(m.body.members.iter().any(|r| r.signature == "(g0 x0 x1)"));
}

#[test]
fn parity_exhausts_with_hint_and_still_writes_a_model() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "parity.csv", |a, b, c| a ^ b ^ c);
    let (o, model) = train(dir.path(), &csv, &[]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("expand input variable structure"), "{}", stderr(&o));
    let m = ModelFile::load(&model).unwrap();
    assert!(!m.is_success());
    assert_eq!(m.body.outcome.reason.as_deref(), Some("no-survivors"));
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "x0,x1,class\n0,1,1\n1,zero,0\n0,0,1\n1,1,0\n").unwrap();
    let (o, _) = train(dir.path(), &bad, &[]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("error"), "{}", stderr(&o));

    let (o, _) = train(dir.path(), &dir.path().join("missing.csv"), &[]);
    assert_eq!(code(&o), 1);

    let labels = dir.path().join("labels.csv");
    fs::write(&labels, "x0,x1,class\n0,1,1\n1,0,2\n").unwrap();
    assert_eq!(code(&train(dir.path(), &labels, &[]).0), 1);

    let csv = cube_csv(dir.path(), "and.csv", |a, b, _| a && b);
    assert_eq!(code(&train(dir.path(), &csv, &["--freedom", "zero"]).0), 1);
    assert_eq!(code(&train(dir.path(), &csv, &["--chi0", "1.5"]).0), 1);
    assert_eq!(code(&run(&["train"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn predict_reproduces_training_labels() {
    let dir = TempDir::new().unwrap();
    let csv = diagnostic_csv(dir.path());
    let (o, model) = train(dir.path(), &csv, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&["predict", s(&model), s(&csv)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row,label,l1,L,chi,plausible"));
    let set = diagnostic(DiagnosticShape::default()).unwrap();
    let mut count = 0;
    for (line, y) in lines.zip(set.labels()) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[1], if *y { "1" } else { "0" }, "{line}");
        assert_eq!(f[2], f[3]);
        assert_eq!(f[4], "1.000000");
        assert_eq!(f[5], "true");
        count += 1;
    }
    assert_eq!(count, 36);
}

#[test]
fn lower_chi0_only_adds_plausible_rows() {
    let dir = TempDir::new().unwrap();
    let csv = diagnostic_csv(dir.path());
    let (_, model) = train(dir.path(), &csv, &[]);
    // unseen rows: each training row with its last Boolean flipped
    let text = fs::read_to_string(&csv).unwrap();
    let mut probe = String::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            probe += line;
        } else {
            let (head, last) = line.rsplit_once(',').unwrap();
            let (head, b) = head.rsplit_once(',').unwrap();
            probe += &format!("{head},{},{last}", if b == "1" { 0 } else { 1 });
        }
        probe.push('\n');
    }
    let probe_path = dir.path().join("probe.csv");
    fs::write(&probe_path, probe).unwrap();
    let plausible = |chi0: &str| -> Vec<bool> {
        let o = run(&["predict", s(&model), s(&probe_path), "--chi0", chi0]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        stdout(&o).lines().skip(1).map(|l| l.ends_with("true")).collect()
    };
    let (strict, loose) = (plausible("0.8"), plausible("3/5"));
    assert!(strict.iter().zip(&loose).all(|(s, l)| !s || *l));
}

#[test]
fn predict_reports_bad_rows_without_stopping() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "and.csv", |a, b, _| a && b);
    let (_, model) = train(dir.path(), &csv, &[]);
    let rows = dir.path().join("rows.csv");
    fs::write(&rows, "x0,x1,x2\n1,1,0\n1,x,0\n0,1,1\n").unwrap();
    let o = run(&["predict", s(&model), s(&rows)]);
    let out = stdout(&o);
    assert!(out.contains("\n1,1,1,1,1.000000,true"), "{out}");
    assert!(out.contains("\n3,0,1,1,1.000000,true"), "{out}");
    assert!(stderr(&o).contains("row 2"), "{}", stderr(&o));
    assert_eq!(code(&o), 1);
}

#[test]
fn rules_cover_the_cube_and_explain_rows() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "and.csv", |a, b, _| a && b);
    let (_, model) = train(dir.path(), &csv, &[]);
    let all = stdout(&run(&["rules", s(&model)]));
    assert_eq!(all.matches("If\n").count(), 4);
    assert!(all.contains("class = 1 under the 1 from the 1 voted experts (chi = 1/1, plausible)"));

    let one = run(&["rules", s(&model), "--row", "8", "--csv", s(&csv)]);
    assert_eq!(code(&one), 0, "{}", stderr(&one));
    let text = stdout(&one);
    assert_eq!(text.matches("If\n").count(), 1);
    assert!(text.contains("z1 = 1 (x0 = 1)") && text.contains("z2 = 1 (x1 = 1)"), "{text}");
    assert!(!text.contains("x2"), "irrelevant sensor in {text}");

    let bits = stdout(&run(&["rules", s(&model), "--bits", "0,1"]));
    assert!(bits.contains("class = 0"), "{bits}");
    let filtered = stdout(&run(&["rules", s(&model), "--min-chi", "1"]));
    assert_eq!(filtered.matches("If\n").count(), 4);
}

#[test]
fn matrix_shows_gate_digits_at_connections() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "and.csv", |a, b, _| a && b);
    let (_, model) = train(dir.path(), &csv, &[]);
    let text = stdout(&run(&["matrix", s(&model)]));
    let row = text.lines().find(|l| l.starts_with("h1.1")).expect("layer-1 row");
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cells, ["h1.1", "0", "0", "-", "y1"]);
    assert!(text.contains("z1 = x0") && text.contains("z2 = x1"));
}

#[test]
fn coherence_map_enumerates_relevant_sensors() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "and.csv", |a, b, _| a && b);
    let (_, model) = train(dir.path(), &csv, &[]);
    let text = stdout(&run(&["coherence-map", s(&model)]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x0,x1,label,l1,L,chi,plausible");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "1,1,1,1,1,1.000000,true");
    let full = stdout(&run(&["coherence-map", s(&model), "--all-features"]));
    assert_eq!(full.lines().count(), 9);
}

#[test]
fn count_prints_the_growth_report() {
    let o = run(&["count", "--m", "5", "--r-star", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("5,000") && text.contains("4,294,967,296") && text.contains("9,940"), "{text}");
    let json: serde_json::Value = serde_json::from_slice(&run(&["count", "--m", "5", "--json"]).stdout).unwrap();
    assert_eq!(json["q_sum"], "5100");
    assert_eq!(json["q_star"], "4294967296");
    assert_eq!(json["holds"], true);
    assert_eq!(code(&run(&["count", "--m", "1"])), 1);
}

#[test]
fn compare_keeps_the_exterior_result_fixed() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "flip.csv", |a, b, c| ((a && b) || c) != (!a && b && c));
    let o = run(&["compare", s(&csv)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("exterior identical across grid: true"), "{text}");
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let csv = diagnostic_csv(dir.path());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&["train", s(&csv), "--out", s(out), "--criterion", "classic", "--split", "random", "--seed", "4"]);
        assert!(matches!(code(&o), 0 | 2), "{}", stderr(&o));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    for sub in ["matrix", "rules"] {
        assert_eq!(run(&[sub, s(&a)]).stdout, run(&[sub, s(&b)]).stdout);
    }
}

#[test]
fn corrupted_model_is_rejected() {
    let dir = TempDir::new().unwrap();
    let csv = cube_csv(dir.path(), "and.csv", |a, b, _| a && b);
    let (_, model) = train(dir.path(), &csv, &[]);
    let text = fs::read_to_string(&model).unwrap().replace("(g0 x0 x1)", "(g2 x0 x1)");
    fs::write(&model, text).unwrap();
    let o = run(&["matrix", s(&model)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("digest"), "{}", stderr(&o));
}
