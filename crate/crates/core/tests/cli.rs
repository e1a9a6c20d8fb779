use std::path::Path;
use std::process::{Command, Output};

fn graphprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphprod"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"))
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = graphprod(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn assert_fails(args: &[&str], code: i32) {
    let out = graphprod(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty(), "{args:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
}

#[test]
fn classify_answers() {
    assert_eq!(stdout(&["classify", "k4.graph"]), "member 3\n");
    assert_eq!(stdout(&["classify", "square.graph"]), "not-member\n");
    assert_eq!(
        stdout(&["classify", "k4.graph", "--max-level", "2"]),
        "not-member\n"
    );
    assert_eq!(stdout(&["classify", "path4.graph"]), "member 1\n");
}

#[test]
fn word_subcommands() {
    assert_eq!(
        stdout(&["word", "reduce", "path4.graph", "a", "b", "a"]),
        "a b\n"
    );
    assert_eq!(
        stdout(&["word", "reduced?", "path4.graph", "a", "c", "a"]),
        "true\n"
    );
    assert_eq!(
        stdout(&["word", "equal", "path4.graph", "a b", "b a"]),
        "true\n"
    );
    assert_eq!(
        stdout(&["word", "equal", "path4.graph", "a c", "c a"]),
        "false\n"
    );
}

#[test]
fn raag_subcommands() {
    assert_eq!(
        stdout(&["raag", "trivial?", "path4.graph", "a", "b", "a^-1", "b^-1"]),
        "true\n"
    );
    assert_eq!(
        stdout(&["raag", "trivial?", "path4.graph", "a", "c", "a^-1", "c^-1"]),
        "false\n"
    );
    assert_eq!(
        stdout(&["raag", "normal-form", "path4.graph", "b", "a^2", "b^-1"]),
        "a^2\n"
    );
}

#[test]
fn project_reports_and_writes_family() {
    let dir = std::env::temp_dir().join(format!("graphprod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let family = dir.join("in.family");
    std::fs::write(
        &family,
        "matrix x 2\n1+0i 0+0i\n0+0i 2+0i\nmatrix y 2\n0+0i 1+0i\n1+0i 0+0i\nmatrix z 2\n3+0i 0+0i\n0+0i -1+0i\n",
    )
    .unwrap();
    let out_path = dir.join("out.family");
    let report = stdout(&[
        "lin",
        "project",
        "p3.graph",
        family.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let fields: Vec<&str> = report
        .lines()
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    assert_eq!(
        fields,
        [
            "pre_edge_defect",
            "pre_normality",
            "epsilon",
            "post_edge_defect",
            "post_normality",
            "post_selfadjoint",
            "post_unitary",
            "iterations",
            "converged"
        ]
    );
    assert!(report.ends_with("converged true\n"), "{report}");
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        written.lines().filter(|l| l.starts_with("matrix ")).count(),
        3
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_writes_csv_file() {
    let path = std::env::temp_dir().join(format!("graphprod-sweep-{}.csv", std::process::id()));
    let out = stdout(&[
        "lin",
        "sweep",
        "p3.graph",
        "--deltas",
        "0.1",
        "--trials",
        "1",
        "--seed",
        "3",
        "--kind",
        "selfadjoint",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 2);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_fails(&[], 2);
    assert_fails(&["classify"], 2);
    assert_fails(&["classify", "k4.graph", "--bogus"], 2);
    assert_fails(&["classify", "missing.graph"], 2);
    assert_fails(&["word", "reduce", "path4.graph", "q"], 2);
    assert_fails(&["raag", "trivial?", "path4.graph", "a^x"], 2);
    assert_fails(
        &[
            "lin", "sweep", "p3.graph", "--deltas", "x", "--trials", "1", "--seed", "1",
        ],
        2,
    );
    assert_fails(
        &[
            "lin",
            "sweep",
            "p3.graph",
            "--deltas",
            "0.1",
            "--trials",
            "1",
            "--seed",
            "1",
            "--kind",
            "hermitian",
        ],
        2,
    );
}

#[test]
fn domain_errors_exit_1() {
    assert_fails(
        &[
            "lin",
            "sweep",
            "path4.graph",
            "--deltas",
            "0.1",
            "--trials",
            "1",
            "--seed",
            "1",
        ],
        1,
    );
    assert_fails(
        &[
            "lin", "sweep", "p3.graph", "--deltas", "0.1,-1", "--trials", "1", "--seed", "1",
        ],
        1,
    );
}

#[test]
fn help_goes_to_stdout() {
    let out = graphprod(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("classify"));
}
