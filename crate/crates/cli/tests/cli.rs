use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qrook(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrook"))
        .args(args)
        .env_remove("QROOK_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = qrook(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn grid(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn qhit_on_the_diagonal_2x2_board() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = grid(dir.path(), "b3.txt", "X.\n.X\n");
    let v = json_of(&["qhit", "--board", &b3]);
    assert_eq!(strs(&v["H"]), ["q^2", "q - 1", "1"]);
    assert_eq!(v["partition_check"], Value::Bool(true));
    assert_eq!(v["m"], 2);
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&qrook(&["qrook", "--named", "diagonal:3", "--complement"]));
    let json = json_of(&["qrook", "--named", "diagonal:3", "--complement"]);
    let from_text: Vec<String> = text.lines().map(|l| l.split(" = ").nth(1).unwrap().to_string()).collect();
    assert_eq!(from_text, strs(&json["M"]));
    assert_eq!(json["board_size"], 6);
}

#[test]
fn json_board_input() {
    let dir = tempfile::tempdir().unwrap();
    let b = grid(dir.path(), "b.json", r#"{"m":2,"n":2,"cells":[[1,1],[2,1],[2,2]]}"#);
    assert_eq!(strs(&json_of(&["qhit", "--board", &b])["H"]), ["0", "q^2", "q"]);
}

#[test]
fn brute_full_2x2_rank_2_is_gl2() {
    let dir = tempfile::tempdir().unwrap();
    let b = grid(dir.path(), "full.txt", "XX\nXX\n");
    let o = qrook(&["brute", "--board", &b, "--q", "2", "--rank", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "6");
    let v = json_of(&["brute", "--board", &b, "--q", "3", "--workers", "1"]);
    assert_eq!(strs(&v["counts"]), ["1", "32", "48"]);
}

#[test]
fn classical_numbers() {
    let v = json_of(&["hit", "--named", "menage:4"]);
    assert_eq!(strs(&v["h"])[0], "2");
    let v = json_of(&["rook", "--named", "full:2x3"]);
    assert_eq!(strs(&v["r"]), ["1", "6", "6"]);
}

#[test]
fn delcon_and_complement_agree() {
    let d = json_of(&["delcon", "--perm", "2413"]);
    let k = json_of(&["qrook", "--perm", "2413", "--complement"]);
    assert_eq!(d["M"], k["M"]);
    let full = json_of(&["delcon", "--perm", "2413", "--fullrank"]);
    assert_eq!(full["M"][0], d["M"][4]);
}

#[test]
fn delcon_counterexample_and_cache_override() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo");
    let o = Command::new(env!("CARGO_BIN_EXE_qrook"))
        .args(["delcon", "--perm", "789563412", "--ranks", "1"])
        .env("QROOK_CACHE", &cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "M_1 = 24q^11 - 4q^10 + 10q^9 + 9q^8 + 8q^7 + 7q^6 + 6q^5 + 5q^4 + 4q^3 + 3q^2 + 2q + 1"
    );
    assert!(cache.exists());
}

#[test]
fn scan_s9_finds_four_violations() {
    let v = json_of(&["scan", "--n", "9", "--ranks", "all"]);
    let report: qrook::applications::ConjectureReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.permutations().len(), 4);
    assert!(report.violations.iter().all(|x| x.r == 1));
    assert!(report.stats.complete);
}

#[test]
fn scan_limits() {
    let v = json_of(&["scan", "--n", "6", "--limit", "10"]);
    assert_eq!(v["stats"]["scanned"], 10);
    assert_eq!(qrook(&["scan", "--n", "10"]).status.code(), Some(1));
}

#[test]
fn closed_forms() {
    assert_eq!(stdout(&qrook(&["derangement", "--n", "2"])).trim(), "q^2 - 2q + 1");
    assert!(qrook(&["menage", "--kind", "bidiagonal", "--n", "3"]).status.success());
    let v = json_of(&["fano"]);
    assert_eq!(v["m7"], "184768");
    assert_eq!(v["matching_z2"], 1);
}

#[test]
fn series_agrees() {
    let v = json_of(&["series", "--named", "bidiagonal:2", "--q", "3", "--k", "3"]);
    assert_eq!(v["F"], v["series"]);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(qrook(&["qrook"]).status.code(), Some(1));
    assert_eq!(qrook(&["qrook", "--named", "fano", "--perm", "12"]).status.code(), Some(1));
    assert_eq!(qrook(&["nonsense"]).status.code(), Some(1));
    assert_eq!(qrook(&["brute", "--named", "full:2x2", "--q", "4"]).status.code(), Some(1));
    // budget
    let o = qrook(&["brute", "--named", "full:6x6", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(qrook(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_quick_passes() {
    let o = qrook(&["selftest", "--level", "quick"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    assert!(out.contains("Krawtchouk mutation"));
}
