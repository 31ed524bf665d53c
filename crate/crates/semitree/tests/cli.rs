//! End-to-end checks of the command-line surface through the built binary.

use std::fs;
use std::process::{Command, Output};

fn semitree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semitree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8")
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("golden file {path}: {e}"))
}

#[test]
fn enumerate_counts() {
    let out = semitree(&["enumerate", "--max-genus", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 1 2 4 7\n");
}

#[test]
fn dump_matches_golden_to_genus_6() {
    let out = semitree(&["enumerate", "--max-genus", "6", "--dump"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("dump_g6.txt"));
}

#[test]
fn dump_is_worker_independent() {
    let serial = semitree(&["enumerate", "--max-genus", "11", "--dump", "--workers", "1"]);
    let parallel = semitree(&["enumerate", "--max-genus", "11", "--dump", "--workers", "4"]);
    assert!(serial.status.success() && parallel.status.success());
    assert_eq!(stdout(&serial), stdout(&parallel));
    assert!(!serial.stdout.is_empty());
}

#[test]
fn workers_env_default_applies() {
    let out = Command::new(env!("CARGO_BIN_EXE_semitree"))
        .args(["enumerate", "--max-genus", "10", "--dump"])
        .env("SEMITREE_WORKERS", "3")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let plain = semitree(&["enumerate", "--max-genus", "10", "--dump"]);
    assert_eq!(stdout(&out), stdout(&plain));
}

#[test]
fn inspect_text_and_json() {
    let out = semitree(&["inspect", "<3,5,7>"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "semigroup: <3,5,7>\ngaps: 1,2,4\nconductor: 5\ngenus: 3\nmultiplicity: 3\n\
         classes: pseudo_symmetric arf irreducible\neffective: 5+ 7-\nkind: B\n"
    );
    let json = semitree(&["inspect", "G:{1,2,4}", "--format", "json"]);
    assert!(json.status.success());
    let line = stdout(&json);
    assert!(line.starts_with(r#"{"gens":[3,5,7],"gaps":[1,2,4],"c":5,"g":3,"m":3,"#));
    let value: serde_json::Value = serde_json::from_str(&line).expect("valid json");
    assert_eq!(value["kind"], "B");
    assert_eq!(value["classes"]["arf"], true);
}

#[test]
fn inspect_accepts_both_text_forms() {
    let by_gens = semitree(&["inspect", "<2,5>"]);
    let by_gaps = semitree(&["inspect", "G:{1,3}"]);
    assert_eq!(stdout(&by_gens), stdout(&by_gaps));
}

#[test]
fn chains_single_and_all() {
    let out = semitree(&["chains", "<2,5>"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"semigroup\":\"<2,5>\",\"d\":2,\"verdict\":\"finitely_many_chains\",\
         \"count\":1,\"witnesses\":[\"<1>\"],\"base_descendants\":null}\n"
    );
    let all = semitree(&["chains", "--all", "3"]);
    assert!(all.status.success());
    let text = stdout(&all);
    let lines: Vec<&str> = text.lines().map(|l| l.trim()).collect();
    // Non-trivial nodes with genus <= 3: 1 + 2 + 4.
    assert_eq!(lines.len(), 7);
    for line in lines {
        let value: serde_json::Value = serde_json::from_str(line).expect("valid json");
        assert!(value["verdict"].is_string());
    }
}

#[test]
fn chains_finite_subtree_fields() {
    let out = semitree(&["chains", "G:{1,2,3,6}"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["verdict"], "finite_subtree");
    assert_eq!(value["d"], 1);
    assert_eq!(value["max_genus"], 6);
    assert_eq!(value["deepest"], "<4,5>");
}

#[test]
fn tree_a_levels_and_seed() {
    let out = semitree(&["tree-a", "--levels", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "level,total,twice_fibonacci,labels\n0,1,0,1:1\n1,1,2,2:1\n2,2,2,1:1 3:1\n3,4,4,0:2 2:1 4:1\n"
    );
    let seeded = semitree(&[
        "tree-a",
        "--levels",
        "8",
        "--seed",
        "0:5,2:1,4:1",
        "--seed-level",
        "3",
    ]);
    assert!(seeded.status.success());
    let text = stdout(&seeded);
    let last = text.lines().last().expect("rows");
    assert!(last.starts_with("8,") && last.contains(",42,"), "{last}");
    let bad = semitree(&["tree-a", "--levels", "8", "--seed", "3:1", "--seed-level", "3"]);
    assert!(!bad.status.success());
}

#[test]
fn stats_formats_and_determinism() {
    let csv = semitree(&["stats", "--max-genus", "8", "--format", "csv"]);
    assert!(csv.status.success());
    let text = stdout(&csv);
    assert!(text.starts_with("# strength-convention: exclude-ordinary\n"));
    assert!(text.lines().nth(1).unwrap().starts_with("g,n_g,S_g,W_g,ratio"));
    let csv8 = semitree(&["stats", "--max-genus", "8", "--format", "csv", "--workers", "8"]);
    assert_eq!(text, stdout(&csv8));

    let json = semitree(&["stats", "--max-genus", "6", "--format", "json"]);
    assert!(json.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&json)).expect("valid json");
    assert_eq!(value["convention"], "exclude-ordinary");
    assert_eq!(value["rows"][6]["n"], 23);

    let ordinary = semitree(&["stats", "--max-genus", "6", "--include-ordinary"]);
    assert!(stdout(&ordinary).starts_with("# strength-convention: include-ordinary\n"));

    let plot = semitree(&["stats", "--max-genus", "5", "--plot-data"]);
    assert_eq!(
        stdout(&plot),
        "g,n_g,lower,upper\n0,1,0,\n1,1,2,\n2,2,2,\n3,4,4,4\n4,7,6,7\n5,12,10,13\n"
    );
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("semitree-cli-test");
    fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("counts.txt");
    let out = semitree(&[
        "enumerate",
        "--max-genus",
        "5",
        "--output",
        path.to_str().expect("utf8 path"),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert_eq!(fs::read_to_string(&path).expect("written"), "1 1 2 4 7 12\n");
    fs::remove_file(&path).ok();
}

#[test]
fn verify_suite_exit_codes() {
    let ok = semitree(&["verify", "core-identities", "--max-genus", "6"]);
    assert!(ok.status.success());
    let text = stdout(&ok);
    assert!(text.contains("PASS core-identities/round-trips"));
    assert!(text.trim_end().ends_with("PASS suite core-identities (max genus 6)"));

    let unknown = semitree(&["verify", "no-such-suite"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn every_suite_is_reachable() {
    for suite in [
        "core-identities",
        "lemma1",
        "strength-equivalence",
        "symmetric",
        "pseudo-symmetric",
        "arf",
        "chains",
        "tree-a",
        "bounds",
        "histograms",
    ] {
        let out = semitree(&["verify", suite, "--max-genus", "7"]);
        assert!(
            out.status.success(),
            "suite {suite} failed:\n{}",
            stdout(&out)
        );
        assert!(stdout(&out).contains(&format!("PASS suite {suite}")));
    }
}

#[test]
fn usage_errors_exit_one() {
    let none = semitree(&[]);
    assert_eq!(none.status.code(), Some(1));
    let bad_parse = semitree(&["inspect", "<4,6>"]);
    assert_eq!(bad_parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_parse.stderr).contains("gcd"));
    let bad_flag = semitree(&["enumerate", "--max-genus", "not-a-number"]);
    assert_eq!(bad_flag.status.code(), Some(1));
    let help = semitree(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}
