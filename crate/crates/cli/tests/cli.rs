use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hopfclass_core::string::{random_string_sum, scramble_iso, string_module};
use hopfclass_core::{read_module_file, write_module_file, GradedFpModule, ModuleData, ModuleFile, Prime, StringIndex};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_path(args: &[&str], path: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().expect("utf-8 path"));
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_module(dir: &Path, name: &str, m: GradedFpModule) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, write_module_file(&ModuleFile::new(ModuleData::FpString(m)))).unwrap();
    path
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&run_path(&["validate"], &fixture("lambda.hcm"))), 0);
    let bad = run_path(&["validate"], &fixture("bad_ts.hcm"));
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("degree 1: ts ≠ p"));
    assert_eq!(code(&run(&["validate", "/definitely/not/here.hcm"])), 2);
    assert_eq!(code(&run_path(&["validate"], &fixture("garbled.hcm"))), 2);
}

#[test]
fn decompose_a_single_string() {
    let out = run_path(&["decompose"], &fixture("m5.hcm"));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(r=0, m=5, I={1,3,4})\n");
    let report = stdout(&run_path(&["decompose", "--report"], &fixture("m5.hcm")));
    assert!(report.contains("reduced: k[x_0]/(x_0^9) ⊗ k[x_2]/(x_2^27) ⊗ k[x_5]/(x_5^3)"));
}

#[test]
fn decompose_the_zero_module() {
    let out = run_path(&["decompose"], &fixture("zero.hcm"));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
}

#[test]
fn scrambled_sums_list_their_summands_for_every_seed() {
    let dir = tempfile::tempdir().unwrap();
    let p = Prime::new(3).unwrap();
    let parts = [
        string_module(&StringIndex::finite(2, [1]).unwrap(), 0, p, 4).unwrap(),
        string_module(&StringIndex::finite(3, [2, 3]).unwrap(), 1, p, 4).unwrap(),
        string_module(&StringIndex::finite(0, []).unwrap(), 2, p, 4).unwrap(),
    ];
    let refs: Vec<&GradedFpModule> = parts.iter().collect();
    let sum = GradedFpModule::direct_sum(p, 4, &refs).unwrap();
    let mut outputs = BTreeSet::new();
    for seed in 0..5 {
        let path = write_module(dir.path(), &format!("sum{seed}.hcm"), scramble_iso(&sum, seed).0);
        outputs.insert(stdout(&run_path(&["decompose"], &path)));
    }
    assert_eq!(outputs.len(), 1);
    let listing = outputs.into_iter().next().unwrap();
    assert_eq!(listing.lines().count(), 3);
    for line in ["(r=0, m=2, I={1})", "(r=1, m=3, I={2,3})", "(r=2, m=0, I={})"] {
        assert!(listing.lines().any(|l| l == line), "{line} missing from {listing}");
    }
}

#[test]
fn machine_listing_is_byte_stable_and_marks_censoring() {
    let dir = tempfile::tempdir().unwrap();
    let (m, expected) = random_string_sum(Prime::new(2).unwrap(), 3, 3, true, 11).unwrap();
    let path = write_module(dir.path(), "censored.hcm", m);
    let a = run_path(&["decompose", "--machine"], &path);
    let b = run_path(&["decompose", "--machine"], &path);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("hopfclass-decomposition v1\n"));
    let censored = expected.iter().filter(|(_, i)| i.is_censored()).count();
    assert_eq!(text.matches("censored true").count(), censored);
    assert!(censored > 0);
}

#[test]
fn classify_reports() {
    let plateau = stdout(&run_path(&["classify"], &fixture("plateau.hcm")));
    assert!(plateau.contains("graph: m=4, I={2,4}, v=(0,1,1,1,0)"));
    assert!(plateau.contains("mod-p type: (m=4, I={2,4})"));

    let lambda = stdout(&run_path(&["classify"], &fixture("lambda.hcm")));
    assert!(lambda.contains("mod-p type: (m>=4, I={})"));
    assert!(lambda.contains("tail unknown"));
    assert!(lambda.contains("free as an algebra: true (window-uncertain)"));
    assert!(lambda.contains("cofree as a coalgebra: true (window-uncertain)"));

    let sum = run_path(&["classify"], &fixture("sum.hcm"));
    assert_eq!(code(&sum), 0);
    let text = stdout(&sum);
    assert!(text.starts_with("not basic"));
    assert!(text.contains("  (r=0, m=4, I={2,4})\n"));
    assert!(text.contains("  (r=1, m=1, I={1})\n"));
}

#[test]
fn classify_machine_reports_carry_a_header() {
    let out = stdout(&run_path(&["classify", "--machine"], &fixture("plateau.hcm")));
    assert!(out.contains("hopfclass-report v1\n"));
    assert!(out.contains("orders 1 2 2 2 1\n"));
}

#[test]
fn graph_commands() {
    let listing = stdout(&run(&["graph", "enumerate", "--m", "2"]));
    let lines: Vec<&str> = listing.lines().collect();
    assert_eq!(lines[0], "5");
    assert_eq!(lines.len(), 6);
    let tikz = stdout(&run_path(
        &["graph", "render", "--format", "tikz"],
        &fixture("late_staircase.hcm"),
    ));
    assert!(tikz.contains("\\draw[dotted"));
    assert_eq!(code(&run_path(&["graph", "validate"], &fixture("bad_graph.hcm"))), 1);
    assert_eq!(code(&run_path(&["graph", "validate"], &fixture("late_staircase.hcm"))), 0);
}

fn files_in(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

fn assert_valid_and_canonical(path: &Path) {
    assert_eq!(code(&run_path(&["validate"], path)), 0, "{}", path.display());
    let text = fs::read_to_string(path).unwrap();
    assert_eq!(write_module_file(&read_module_file(&text).unwrap()), text);
}

#[test]
fn random_corpus_files_validate_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        code(&run(&[
            "corpus", "random", "--p", "2", "--seed", "7", "--count", "3", "--out", out
        ])),
        0
    );
    let files = files_in(dir.path());
    assert_eq!(files.len(), 3);
    for f in &files {
        assert_valid_and_canonical(f);
    }
    let again = tempfile::tempdir().unwrap();
    run(&[
        "corpus",
        "random",
        "--p",
        "2",
        "--seed",
        "7",
        "--count",
        "3",
        "--out",
        again.path().to_str().unwrap(),
    ]);
    for (a, b) in files.iter().zip(files_in(again.path())) {
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
    }
}

#[test]
fn string_corpus_has_one_file_per_subset() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&run(&[
            "corpus",
            "strings",
            "--p",
            "3",
            "--out",
            dir.path().to_str().unwrap()
        ])),
        0
    );
    let files = files_in(dir.path());
    assert_eq!(files.len(), 15);
    for f in &files {
        assert_valid_and_canonical(f);
    }
}

#[test]
fn big_indecomposable_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "corpus",
        "big-indec",
        "--N",
        "2",
        "--p",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let files = files_in(dir.path());
    assert_eq!(files.len(), 1);
    assert_valid_and_canonical(&files[0]);
    assert!(fs::read_to_string(&files[0]).unwrap().contains("kind witt\n"));
}

#[test]
fn size_guards_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        code(&run(&[
            "corpus", "random", "--p", "2", "--count", "1000000", "--out", out
        ])),
        3
    );
    assert_eq!(
        code(&run(&["corpus", "strings", "--p", "2", "--m", "40", "--out", out])),
        3
    );
    assert!(files_in(dir.path()).is_empty());
}

#[test]
fn selftest_single_criteria() {
    let ok = run(&["selftest", "--only", "7"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("[PASS]  7 hilbert series"));
    // The large indecomposable criterion fails on this construction.
    let known = run(&["selftest", "--only", "9"]);
    assert_eq!(code(&known), 1);
    assert!(stdout(&known).contains("FAIL (known)"));
    assert_eq!(code(&run(&["selftest", "--only", "99"])), 1);
}
