use std::fs;
use std::path::Path;
use std::process::Command as Process;

use clap::Parser;
use irreg::cli::{run, Outcome, RunConfig, EXIT_BUDGET, EXIT_IMPOSSIBLE, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};
use tempfile::TempDir;

fn invoke(args: &[&str]) -> Outcome {
    let mut full = vec!["irreg"];
    full.extend_from_slice(args);
    run(&RunConfig::try_parse_from(full).expect("arguments parse"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn star(n: usize) -> String {
    let mut s = format!("{n} {}\n", n - 1);
    for v in 1..n {
        s.push_str(&format!("0 {v}\n"));
    }
    s
}

const P6: &str = "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n";

#[test]
fn strength_of_path() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p6.txt", P6);
    let out = invoke(&["strength", &g]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "7 N_MOD4_2\n");
    let out = invoke(&["--format", "tsv", "strength", &g]);
    assert_eq!(out.stdout, "n\ts_g\tcase\n6\t7\tN_MOD4_2\n");
}

#[test]
fn star_strength_cases() {
    let dir = TempDir::new().unwrap();
    let k18 = write(&dir, "k18.txt", &star(9));
    assert_eq!(invoke(&["strength", &k18]).stdout, "9 DEFAULT\n");
    let k19 = write(&dir, "k19.txt", &star(10));
    assert_eq!(invoke(&["strength", &k19]).stdout, "11 N_MOD4_2\n");
    // n = 26: n+1 = 27
    let k125 = write(&dir, "k125.txt", &star(26));
    assert_eq!(invoke(&["strength", &k125]).stdout, "28 STAR_EXCEPTIONAL\n");
}

#[test]
fn elementary_two_group_is_refused() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k15.txt", &star(6));
    let out = invoke(&["label", &g, "Z2xZ2xZ2"]);
    assert_eq!(out.code, EXIT_IMPOSSIBLE);
    assert!(out.stdout.starts_with("impossible: "));
    assert!(out.stdout.contains("2^q = n+2"), "{}", out.stdout);
}

#[test]
fn ternary_star_is_refused() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k17.txt", &star(8));
    let out = invoke(&["label", &g, "Z3xZ3"]);
    assert_eq!(out.code, EXIT_IMPOSSIBLE);
    assert!(out.stdout.contains("3^q = n+1"), "{}", out.stdout);
}

#[test]
fn label_then_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p6.txt", P6);
    for format in ["human", "tsv"] {
        for group in ["Z7", "Z8", "Z2xZ4", "Z3xZ3"] {
            let out = invoke(&["--format", format, "label", &g, group]);
            assert_eq!(out.code, EXIT_OK, "{group}: {}", out.stderr);
            assert!(out.stdout.starts_with("# construction "));
            let lab = write(&dir, "lab.txt", &out.stdout);
            let check = invoke(&["verify", &g, group, &lab]);
            assert_eq!(check.code, EXIT_OK, "{group}: {}", check.stdout);
            assert!(check.stdout.starts_with("irregular\n"));
        }
    }
}

#[test]
fn label_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "7 8\n0 1\n1 2\n2 3\n3 0\n3 4\n4 5\n5 6\n2 5\n");
    let first = invoke(&["label", &g, "Z2xZ4"]);
    assert_eq!(first.code, EXIT_OK);
    for _ in 0..3 {
        assert_eq!(invoke(&["label", &g, "Z2xZ4"]), first);
    }
}

#[test]
fn verify_reports_collision() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.txt", "3 2\n0 1\n1 2\n");
    let lab = write(&dir, "lab.txt", "3 2\n0 1 1\n1 2 1\n");
    let out = invoke(&["verify", &g, "Z3", &lab]);
    assert_eq!(out.code, EXIT_VERIFY);
    assert!(out.stdout.starts_with("collision: vertices 0 and 2 both have degree (1)"));
}

#[test]
fn oracle_verdicts() {
    let dir = TempDir::new().unwrap();
    let p6 = write(&dir, "p6.txt", P6);
    let out = invoke(&["oracle", &p6, "Z6"]);
    assert_eq!(out.code, EXIT_IMPOSSIBLE);
    assert!(out.stdout.starts_with("not-exists nodes="));
    let out = invoke(&["oracle", &p6, "Z7"]);
    assert_eq!(out.code, EXIT_OK);
    let body = out.stdout.split_once('\n').unwrap().1;
    let lab = write(&dir, "lab.txt", body);
    assert_eq!(invoke(&["verify", &p6, "Z7", &lab]).code, EXIT_OK);
    let out = invoke(&["oracle", &p6, "Z7", "--budget", "1"]);
    assert_eq!(out.code, EXIT_BUDGET);
}

#[test]
fn spc_output() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.txt", "5 4\n0 1\n0 2\n0 3\n0 4\n");
    let out = invoke(&["spc", &t, "--marked", "1,2,3,4"]);
    assert_eq!(out.code, EXIT_OK);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("total_length 4"));
    assert_eq!(lines.next(), Some("lower_bound 4"));
    assert_eq!(lines.count(), 2);
    let marked = write(&dir, "m.txt", "1 2\n3,4\n");
    let from_file = invoke(&["spc", &t, "--marked-file", &marked]);
    assert_eq!(from_file, out);
    assert_eq!(invoke(&["spc", &t, "--marked", "1,2,3"]).code, EXIT_INPUT);
}

#[test]
fn sweep_small_corpus_passes() {
    let out = invoke(&["sweep", "--max-n", "9", "--extra", "2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("all-pass"));
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    let missing = missing.to_str().unwrap();
    assert_eq!(invoke(&["strength", missing]).code, EXIT_INPUT);
    let bad = write(&dir, "bad.txt", "3 2\n0 1\n");
    let out = invoke(&["strength", &bad]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(!out.stderr.is_empty());
    let p6 = write(&dir, "p6.txt", P6);
    assert_eq!(invoke(&["label", &p6, "Z0"]).code, EXIT_INPUT);
    let disconnected = write(&dir, "d.txt", "4 2\n0 1\n2 3\n");
    assert_eq!(invoke(&["label", &disconnected, "Z5"]).code, EXIT_INPUT);
    let cycle = write(&dir, "c.txt", "3 3\n0 1\n1 2\n2 0\n");
    assert_eq!(invoke(&["spc", &cycle, "--marked", "0,1"]).code, EXIT_INPUT);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k15.txt", &star(6));
    let bin = env!("CARGO_BIN_EXE_irreg");
    let run_bin = |args: &[&str]| Process::new(bin).args(args).output().unwrap();
    let ok = run_bin(&["label", &g, "Z7"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("# construction"));
    let refused = run_bin(&["label", &g, "Z2xZ2xZ2"]);
    assert_eq!(refused.status.code(), Some(EXIT_IMPOSSIBLE));
    assert!(String::from_utf8_lossy(&refused.stdout).starts_with("impossible"));
    assert!(Path::new(bin).exists());
}
