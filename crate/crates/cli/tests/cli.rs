use std::process::{Command, Output};

fn fcd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn chromatic_command() {
    let out = fcd(&["chromatic", "2;01;1-2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x*y - y");

    let out = fcd(&["chromatic", "2;00;1-2"]);
    assert_eq!(stdout(&out).trim(), "x^2 - x");
}

#[test]
fn parse_errors_exit_2() {
    let out = fcd(&["chromatic", "2;01;1-5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fcd(&["reduce", "1 2 1;01"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fcd(&["dims", "--space", "Z", "--max", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fcd(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    // No published table for the internal spaces.
    let out = fcd(&["dims", "--space", "A", "--max", "2", "--assert-paper"]);
    assert_eq!(out.status.code(), Some(2));
    // Composite or oversized rank primes are rejected up front.
    let out = fcd(&["dims", "--space", "M", "--max", "2", "--primes", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fcd(&["enumerate", "diagrams", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn custom_primes_accepted() {
    let out = fcd(&[
        "dims",
        "--space",
        "H",
        "--max",
        "2",
        "--primes",
        "1009,2003,30011",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dims: 2 5"));
}

#[test]
fn enumerate_counts() {
    let out = fcd(&["enumerate", "diagrams", "5", "--framed"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3112);

    let out = fcd(&["enumerate", "graphs", "3"]);
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn dims_table_and_assertions() {
    let out = fcd(&["dims", "--space", "M", "--max", "3", "--assert-paper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dims: 2 5 12"));
    assert!(text.contains("table check: ok"));

    let out = fcd(&["dims", "--space", "M", "--max", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dims: 1"));

    let out = fcd(&["dims", "--space", "H", "--max", "2", "--format", "records"]);
    let text = stdout(&out);
    assert!(text.contains("space=H n=2 basis=6"));
    assert!(text.contains("dim=5"));
}

#[test]
fn outputs_byte_identical_across_runs() {
    for args in [
        vec!["dims", "--space", "M", "--max", "3"],
        vec!["verify", "hopf-module", "--max", "2", "--seed", "9"],
        vec!["reduce", "1 2 1 2;01"],
    ] {
        let a = fcd(&args);
        let b = fcd(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

#[test]
fn reduce_monochrome_has_empty_trace() {
    let out = fcd(&["reduce", "1 1;0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(!text.contains("->"));
    assert!(text.contains("1/1\t1 1;0"));

    let out = fcd(&["reduce", "1 2 1 2;01"]);
    let text = stdout(&out);
    assert!(text.contains("->"));
    assert!(text.contains('\t'));
}

#[test]
fn verify_suite_passes() {
    let out = fcd(&["verify", "comodule", "--max", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("seed: 2017"));
    assert!(text.contains("PASS comodule axioms on M"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn export_writes_parseable_matrix() {
    let dir = std::env::temp_dir().join("fcd-export-test");
    std::fs::create_dir_all(&dir).unwrap();
    let prefix = dir.join("m2");
    let out = fcd(&[
        "export",
        "--space",
        "M",
        "--order",
        "2",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let matrix_text = std::fs::read_to_string(prefix.with_extension("mat")).unwrap();
    let index_text = std::fs::read_to_string(prefix.with_extension("index")).unwrap();
    assert!(matrix_text.ends_with("0 0 0\n"));
    assert_eq!(index_text.lines().count(), 6);
    let m = fcd_core::SparseExactMatrix::parse_triplet_text(&matrix_text).unwrap();
    assert_eq!(m.cols(), 6);
    assert_eq!(fcd_core::linalg::rank_exact(&m), 1);
}
