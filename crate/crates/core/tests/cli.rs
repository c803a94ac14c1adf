use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use chekanov::cli::document::{format_dga, parse_dga, parse_map, parse_rules};
use chekanov::cli::run;
use chekanov::shipped;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

struct Output {
    code: u8,
    stdout: String,
    stderr: String,
}

fn chekanov(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("chekanov").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_reports_axioms() {
    let o = chekanov(&["check", &data("k6_2.dga")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "degree check: ok; d^2 = 0: ok\n");
}

#[test]
fn check_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        &dir,
        "bad.dga",
        "dga bad\nmaslov 0\ngen a : 1\ngen b : 0\nd a = b\nd b = b\n",
    );
    let o = chekanov(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert_eq!(
        o.stdout,
        "degree check: FAILED; d^2 = 0: FAILED\n  d^2 a = b\n  d b: expected degree -1, found degree 0\n  d^2 b = b\n"
    );
}

#[test]
fn mirror_twice_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("m.dga");
    let o = chekanov(&["mirror", &data("k6_2.dga"), "-o", once.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let mirrored = std::fs::read_to_string(&once).unwrap();
    assert!(mirrored.starts_with("dga M(K6_2)\n"));
    assert!(mirrored.contains("d a1 = 1 + a3 a5 a10\n"));

    let twice = chekanov(&["mirror", once.to_str().unwrap()]);
    assert_eq!(twice.code, 0);
    assert_eq!(parse_dga(&twice.stdout).unwrap(), shipped::k6_2());
    assert_eq!(twice.stdout, format_dga(&shipped::k6_2()));
}

#[test]
fn subst_prints_second_table() {
    let o = chekanov(&[
        "subst",
        &data("k6_2.dga"),
        "a3 -> a3 + 1",
        "a11 -> a11 + a5",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(
        o.stdout.contains("d a9 = 1 + a10 a5 + a10 a11\n"),
        "{}",
        o.stdout
    );
    assert!(o.stdout.contains("d a6 = a5 a8 + a11 a8\n"), "{}", o.stdout);

    let bad = chekanov(&["subst", &data("k6_2.dga"), "a3 -> a3 + a3 a5 a10"]);
    assert_eq!(bad.code, 2);
    let missing_arrow = chekanov(&["subst", &data("k6_2.dga"), "a3 + 1"]);
    assert_eq!(missing_arrow.code, 2);
    assert!(missing_arrow.stderr.contains("expected"));
}

#[test]
fn project_lists_the_ideal() {
    let o = chekanov(&["project", &data("k6_2.dga"), "--map", &data("k6_2.map")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("  pi(d a1) = 1 + be al\n"));
    assert!(
        o.stdout.ends_with("ideal generators:\n  1 + be al\n"),
        "{}",
        o.stdout
    );
}

#[test]
fn nf_reduces_with_a_rules_file() {
    let dir = tempfile::tempdir().unwrap();
    let rules = write_temp(&dir, "q.rules", "rule: b a -> 1\n");
    let rules = rules.to_str().unwrap();
    let o = chekanov(&["nf", "--rules", rules, "b a b a"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "1\n");
    let o = chekanov(&["nf", "--rules", rules, "a b b a a + a b"]);
    assert_eq!(o.stdout, "a + a b\n");
    let o = chekanov(&[
        "nf",
        "--rules",
        &data("quotient.rules"),
        "be be al al al + 1",
    ]);
    assert_eq!(o.stdout, "1 + al\n");
}

#[test]
fn witness_exit_codes() {
    let file = data("k6_2.dga");
    let ok = chekanov(&[
        "witness",
        &file,
        "--x",
        "a10",
        "--y",
        "a5 a3",
        "--z",
        "a1",
        "--degrees",
        "1,-1",
    ]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert_eq!(ok.stdout, "valid: 1 + x y = d z with x, y cycles\n");
    let bad = chekanov(&[
        "witness",
        &file,
        "--x",
        "a10",
        "--y",
        "a5",
        "--z",
        "a1",
        "--degrees",
        "1,-1",
    ]);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.starts_with("invalid: "));
}

#[test]
fn search_finds_a_witness() {
    let o = chekanov(&["search", &data("k6_2.dga"), "--degrees", "1,-1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "x = a10\ny = a11\nz = a9\n");
    let none = chekanov(&[
        "search",
        &data("k6_2.dga"),
        "--degrees",
        "0,0",
        "--maxlen",
        "1",
    ]);
    assert_eq!(none.code, 1);
    assert_eq!(none.stdout, "no witness with words of length <= 1\n");
}

#[test]
fn distinguish_knot_and_mirror() {
    let dir = tempfile::tempdir().unwrap();
    let mirror = dir.path().join("m.dga");
    chekanov(&["mirror", &data("k6_2.dga"), "-o", mirror.to_str().unwrap()]);
    let o = chekanov(&[
        "distinguish",
        &data("k6_2.dga"),
        mirror.to_str().unwrap(),
        "--degrees",
        "1,-1",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("proved with witness"));
    assert!(o.stdout.contains("refuted via projection"));
    assert!(o
        .stdout
        .trim_end()
        .ends_with("verdict: nonisomorphic graded homology algebras"));

    let same = chekanov(&[
        "distinguish",
        &data("k6_2.dga"),
        &data("k6_2.dga"),
        "--degrees",
        "1,-1",
    ]);
    assert_eq!(same.code, 1);
    assert!(
        same.stdout.contains("verdict: undetermined"),
        "{}",
        same.stdout
    );
}

#[test]
fn input_errors_exit_two() {
    let missing = chekanov(&["check", "/nonexistent/k.dga"]);
    assert_eq!(missing.code, 2);
    assert!(!missing.stderr.is_empty());
    let degrees = chekanov(&["search", &data("k6_2.dga"), "--degrees", "1"]);
    assert_eq!(degrees.code, 2);
    let unknown = chekanov(&["frobnicate"]);
    assert_eq!(unknown.code, 2);

    let dir = tempfile::tempdir().unwrap();
    let broken = write_temp(&dir, "b.dga", "dga b\nmaslov 0\ngen a : 1\nd a = 1 + + a\n");
    let o = chekanov(&["check", broken.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 4"), "{}", o.stderr);
}

#[test]
fn reproduce_embeds_both_certificates() {
    let o = chekanov(&["reproduce"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("x = a10, y = a5 a3, z = a1: valid"));
    assert!(o.stdout.contains("x = a10, y = a11, z = a9: valid"));
    assert!(o.stdout.contains("outcome: structural refutation"));
    assert!(o
        .stdout
        .trim_end()
        .ends_with("verdict: nonisomorphic graded homology algebras"));
}

#[test]
fn shipped_files_round_trip() {
    let d = parse_dga(shipped::K6_2_DGA).unwrap();
    assert_eq!(parse_dga(&format_dga(&d)).unwrap(), d);
    let m = d.mirror();
    assert_eq!(parse_dga(&format_dga(&m)).unwrap(), m);
    assert!(parse_map(shipped::K6_2_MAP).is_ok());
    assert_eq!(
        parse_rules(shipped::QUOTIENT_RULES).unwrap().rules().len(),
        1
    );
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chekanov"))
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(shipped::K6_2_DGA.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        "degree check: ok; d^2 = 0: ok\n"
    );
}
