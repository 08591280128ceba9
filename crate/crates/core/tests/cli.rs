use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_depdist"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn conllu(sentences: &[&[usize]]) -> String {
    let mut s = String::new();
    for heads in sentences {
        for (i, h) in heads.iter().enumerate() {
            s += &format!("{}\tw{}\tw\tX\tX\t_\t{}\tdep\t_\t_\n", i + 1, i + 1, h);
        }
        s.push('\n');
    }
    s
}

/// Writes one treebank and a manifest naming it; returns the manifest.
fn corpus(dir: &Path, sentences: &[&[usize]]) -> PathBuf {
    fs::write(dir.join("t.conllu"), conllu(sentences)).unwrap();
    let m = dir.join("manifest.txt");
    fs::write(&m, "t.conllu PUD Test\n").unwrap();
    m
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let mut rows = vec![r.headers().unwrap().iter().map(String::from).collect()];
    rows.extend(r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()));
    rows
}

fn column(rows: &[Vec<String>], name: &str) -> usize {
    rows[0]
        .iter()
        .position(|c| c == name)
        .unwrap_or_else(|| panic!("column {name}"))
}

#[test]
fn extract_counts_chain_distances() {
    let dir = TempDir::new().unwrap();
    let m = corpus(dir.path(), &[&[0, 1, 2], &[2, 3, 0]]);
    let out = run(
        &["extract", "--manifest", m.to_str().unwrap(), "--out", "o"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sample = fs::read_to_string(dir.path().join("o/samples/PUD_Test_mixed.csv")).unwrap();
    assert!(sample.contains("# class=mixed"));
    assert!(sample.lines().any(|l| l == "1,4"));
    assert!(!sample.lines().any(|l| l.starts_with("2,")));
    let summary = read_csv(&dir.path().join("o/summary.csv"));
    assert_eq!(summary[1][column(&summary, "distances")], "4");
    assert_eq!(summary[1][column(&summary, "sentences")], "2");
}

#[test]
fn empty_manifest_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("m.txt"), "").unwrap();
    let out = run(&["extract", "--manifest", "m.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_treebank_is_an_ingestion_error() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("m.txt"), "nowhere.conllu PUD X\n").unwrap();
    let out = run(&["extract", "--manifest", "m.txt"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_thresholds_are_rejected() {
    let dir = TempDir::new().unwrap();
    let m = corpus(dir.path(), &[&[0, 1, 2]]);
    let out = run(
        &["fit-select", "--manifest", m.to_str().unwrap(), "--threshold", "5,2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sample_command_writes_requested_size() {
    let dir = TempDir::new().unwrap();
    let out = run(
        &[
            "sample", "--model", "5", "--gamma", "1.6", "--d-max", "19", "--seed", "3", "--out", "o",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("o/sample_model5_seed3.csv")).unwrap();
    let (sample, header) = depdist::treebank::read_sample_csv(text.as_bytes()).unwrap();
    assert_eq!(sample.total(), 10_000);
    assert!(sample.max() <= 19);
    assert!(header.iter().any(|(k, v)| k == "seed" && v == "3"));
}

#[test]
fn sample_command_needs_model_parameters() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        run(&["sample", "--model", "3", "--q1", "0.5"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["sample", "--model", "0.1"], dir.path()).status.code(), Some(2));
    assert_eq!(
        run(&["sample", "--model", "1", "--q", "1.5"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn fit_select_recovers_two_regime_sample() {
    let dir = TempDir::new().unwrap();
    let out = run(
        &[
            "sample", "--model", "3", "--q1", "0.5", "--q2", "0.1", "--d-star", "4", "--seed", "1", "--out", ".",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let out = run(
        &[
            "fit-select",
            "--sample",
            "sample_model3_seed1.csv",
            "--criterion",
            "bic",
            "--out",
            "o",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let best = read_csv(&dir.path().join("o/best.csv"));
    assert_eq!(best[1][column(&best, "best")], "3");
    let fits = read_csv(&dir.path().join("o/fits.csv"));
    let model = column(&fits, "model");
    let row = fits.iter().find(|r| r[model] == "3").unwrap();
    assert_eq!(row[column(&fits, "d_star")], "4.0");
    let q1: f64 = row[column(&fits, "q1")].parse().unwrap();
    assert!((q1 - 0.5).abs() < 0.03);
}

/// Long chains: every distance is 1, far from the uniform null model.
#[test]
fn chains_prefer_a_non_null_model() {
    let dir = TempDir::new().unwrap();
    let chain: Vec<usize> = (0..8).collect();
    let star: Vec<usize> = std::iter::once(0).chain(std::iter::repeat_n(1, 7)).collect();
    let mut sentences: Vec<&[usize]> = vec![&chain; 30];
    sentences.extend(vec![star.as_slice(); 3]);
    let m = corpus(dir.path(), &sentences);
    let out = run(
        &["fit-select", "--manifest", m.to_str().unwrap(), "--out", "o"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let best = read_csv(&dir.path().join("o/best_fixed.csv"));
    let row = &best[1];
    assert_eq!(row[column(&best, "n")], "8");
    assert_eq!(row[column(&best, "status")], "selected");
    assert_ne!(row[column(&best, "family")], "0");
}

#[test]
fn omega_of_optimal_and_anti_optimal_corpora() {
    let dir = TempDir::new().unwrap();
    // Chains are already minimal: ⟨Ω⟩ = 1.
    let m = corpus(dir.path(), &[&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4]]);
    let out = run(&["omega", "--manifest", m.to_str().unwrap(), "--out", "o"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t = read_csv(&dir.path().join("o/omega.csv"));
    let w: f64 = t[1][column(&t, "mean_omega")].parse().unwrap();
    assert!((w - 1.0).abs() < 1e-12);
    assert_eq!(t[1][column(&t, "band")], "positive");

    // Root 1 with both words attached to it: D = 3, D_rla = 8/3, D_min = 2.
    let m = corpus(dir.path(), &[&[0, 1, 1]]);
    let out = run(&["omega", "--manifest", m.to_str().unwrap(), "--out", "p"], dir.path());
    assert!(out.status.success());
    let t = read_csv(&dir.path().join("p/omega.csv"));
    let w: f64 = t[1][column(&t, "mean_omega")].parse().unwrap();
    assert!((w + 0.5).abs() < 1e-12);
    assert_eq!(t[1][column(&t, "band")], "negative");
}

#[test]
fn csv_and_json_outputs_agree() {
    let dir = TempDir::new().unwrap();
    let m = corpus(
        dir.path(),
        &[&[0, 1, 2, 3, 4], &[2, 0, 2, 5, 3], &[0, 1, 1, 1, 1], &[3, 3, 0, 3, 4]],
    );
    let ms = m.to_str().unwrap();
    assert!(run(&["fit-select", "--manifest", ms, "--out", "c"], dir.path())
        .status
        .success());
    assert!(run(
        &["fit-select", "--manifest", ms, "--out", "j", "--format", "json"],
        dir.path()
    )
    .status
    .success());
    let csv_rows = read_csv(&dir.path().join("c/best.csv"));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("j/best.json")).unwrap()).unwrap();
    let rows = json.as_array().expect("array of records");
    assert_eq!(rows.len(), csv_rows.len() - 1);
    let best = column(&csv_rows, "best");
    for (c, j) in csv_rows[1..].iter().zip(rows) {
        assert_eq!(j["best"].as_str().unwrap_or(""), c[best]);
    }
}

#[test]
fn runs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for o in ["a", "b"] {
        assert!(run(&["validate", "--out", o], dir.path()).status.success());
    }
    for f in [
        "bic_matrix.csv",
        "validation_params.csv",
        "samples/validation_model6_seed1.csv",
    ] {
        assert_eq!(
            fs::read(dir.path().join("a").join(f)).unwrap(),
            fs::read(dir.path().join("b").join(f)).unwrap(),
            "{f}"
        );
    }
}
