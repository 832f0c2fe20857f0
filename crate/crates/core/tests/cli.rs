use std::fs;

use gyrocay::cli::run;
use gyrocay::io::builtin_text;

struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

fn gyrocay(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gyrocay").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn verify_builtins() {
    for name in ["builtin:g8", "builtin:g15", "builtin:g16"] {
        let o = gyrocay(&["verify", name]);
        assert_eq!(o.code, 0, "{name}: {}", o.stderr);
        assert!(o.stdout.contains("passed"));
    }
}

#[test]
fn verify_reports_failure_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.gyro");
    let text = "format gyrotable-v1\norder 5\naddition\n\
                0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3\n";
    fs::write(&path, text).unwrap();
    let o = gyrocay(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("inverse"), "{}", o.stdout);
}

#[test]
fn malformed_files_exit_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.gyro");
    fs::write(&path, "format gyrotable-v1\norder 2\naddition\n0 1\n1\n").unwrap();
    let o = gyrocay(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.starts_with("error: "));
    assert!(o.stderr.contains('5'), "{}", o.stderr);

    let o = gyrocay(&["verify", dir.path().join("missing.gyro").to_str().unwrap()]);
    assert_eq!(o.code, 2);
    let o = gyrocay(&["verify", "builtin:g9"]);
    assert_eq!(o.code, 2);
}

#[test]
fn loads_table_files_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g16.gyro");
    fs::write(&path, builtin_text("g16").unwrap()).unwrap();
    let o = gyrocay(&["info", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("order=16"));
}

#[test]
fn info_lists_inverses() {
    let o = gyrocay(&["info", "builtin:g8"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("order=8"));
    assert!(o.stdout.contains("identity=0"));
    assert!(o.stdout.contains("group=false"));
}

#[test]
fn subgyro_closure_and_enumeration() {
    let o = gyrocay(&["subgyro", "builtin:g16", "--set", "8,9", "--closure", "right"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("closure={0,1,8,9}"));
    assert!(o.stdout.contains("l_subgyrogroup=true"));

    let o = gyrocay(&["subgyro", "builtin:g16", "--l-only"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("{0,1,8,9}"));
    assert!(!o.stdout.contains("{0,8}"));

    let o = gyrocay(&["subgyro", "builtin:g16", "--max-order", "8"]);
    assert_eq!(o.code, 2);
}

#[test]
fn analyze_right_graph() {
    let o = gyrocay(&["analyze", "builtin:g16", "--side", "R", "--set", "8,9"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("undirected=true"));
    assert!(o.stdout.contains("components=4"));
    assert!(o.stdout.contains("vertex_transitive=true"));
}

#[test]
fn analyze_detects_non_transitivity() {
    let o = gyrocay(&["analyze", "builtin:g8", "--side", "L", "--set", "1,2,3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("vertex_transitive=false"));
}

#[test]
fn cayley_export() {
    let o = gyrocay(&[
        "cayley",
        "builtin:g8",
        "--side",
        "L",
        "--set",
        "1,3",
        "--format",
        "json",
    ]);
    assert_eq!(o.code, 0);
    let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(doc["arcs"].as_array().unwrap().len(), 16);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3.dot");
    let o = gyrocay(&[
        "cayley",
        "builtin:g16",
        "--side",
        "R",
        "--set",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.lines().any(|l| l.contains("->") && !l.contains("dir=none")));
}

#[test]
fn cayley_rejects_identity_generator() {
    let o = gyrocay(&["cayley", "builtin:g16", "--side", "L", "--set", "0"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("identity"));
    let o = gyrocay(&["cayley", "builtin:g16", "--side", "L", "--set", "1,x"]);
    assert_eq!(o.code, 2);
    let o = gyrocay(&["cayley", "builtin:g16", "--side", "Q", "--set", "1"]);
    assert_eq!(o.code, 2);
}

#[test]
fn theorems_report() {
    let o = gyrocay(&["theorems", "builtin:g8", "--set", "1,3"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().count(), 8);
    let line = o.stdout.lines().find(|l| l.starts_with("L_TRANSITIVE")).unwrap();
    assert!(line.contains("hypothesis=false conclusion=true"));
}

#[test]
fn search_summary() {
    let o = gyrocay(&[
        "search",
        "builtin:g8",
        "--max-set-size",
        "2",
        "--theorem",
        "l_transitive",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("examined=29"));
    assert!(o.stdout.contains("violations=0"));
    assert!(o.stdout.contains("L_TRANSITIVE S={1,3}"));
    let o = gyrocay(&["search", "builtin:g8", "--theorem", "bogus"]);
    assert_eq!(o.code, 2);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(gyrocay(&[]).code, 2);
    assert_eq!(gyrocay(&["frobnicate"]).code, 2);
    let o = gyrocay(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("verify"));
}

struct ClosedPipe;

impl std::io::Write for ClosedPipe {
    fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
        Err(std::io::ErrorKind::BrokenPipe.into())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

#[test]
fn closed_stdout_is_not_an_error() {
    let mut err = Vec::new();
    let code = run(["gyrocay", "info", "builtin:g15"], &mut ClosedPipe, &mut err);
    assert_eq!(code, 0);
    assert!(err.is_empty());
}
