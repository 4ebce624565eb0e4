//! End-to-end tests of the binary: exit codes, byte-exact outputs and
//! output-file round trips.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn kronroot(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kronroot"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const RATIONAL_A: &str = "field rational rows 2 cols 2\n1 2\n3 4\n";

#[test]
fn kron_with_scalar_one_is_byte_identity() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.mat", RATIONAL_A);
    let one = write(dir.path(), "one.mat", "field rational rows 1 cols 1\n1\n");
    let out = kronroot(&["kron", &a, &one], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), RATIONAL_A);
}

#[test]
fn kron_rejects_mixed_fields() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.mat", RATIONAL_A);
    let b = write(dir.path(), "b.mat", "field gf 3 rows 1 cols 1\n1\n");
    let out = kronroot(&["kron", &a, &b], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn power_over_gf2_matches_frozen_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.mat", "field gf 2 rows 2 cols 2\n1 0\n1 1\n");
    let out = kronroot(&["power", &a, "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let expected = "field gf 2 rows 4 cols 4\n\
                    1 0 0 0\n\
                    1 1 0 0\n\
                    1 0 1 0\n\
                    1 1 1 1\n";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn rearrange_modes_r_and_j_are_transposes() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field rational rows 4 cols 4\n1 2 3 4\n5 6 7 8\n9 10 11 12\n13 14 15 16\n",
    );
    let args_base = ["rearrange", &m, "--m", "2", "--n", "2", "--k", "2"];
    let r_out = kronroot(
        &[&args_base[..], &["--mode", "r"]].concat(),
        dir.path(),
    );
    assert_eq!(r_out.status.code(), Some(0));
    let j_out = kronroot(
        &[&args_base[..], &["--mode", "j", "--j", "2"]].concat(),
        dir.path(),
    );
    assert_eq!(j_out.status.code(), Some(0));
    let r = parse(&stdout(&r_out));
    let j = parse(&stdout(&j_out));
    assert_eq!(r.transpose(), j);
    // Mode j with j = 1 reproduces mode r byte for byte.
    let j1_out = kronroot(
        &[&args_base[..], &["--mode", "j", "--j", "1"]].concat(),
        dir.path(),
    );
    assert_eq!(stdout(&j1_out), stdout(&r_out));
}

fn parse(text: &str) -> kronroot::Matrix {
    // Light re-parser for test assertions, using the library's own syntax.
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    let kind = match header[1] {
        "rational" => kronroot::FieldKind::Rational,
        "real" => kronroot::FieldKind::FloatReal,
        "complex" => kronroot::FieldKind::FloatComplex,
        "gf" => kronroot::FieldKind::prime_field(header[2].parse().unwrap()).unwrap(),
        _ => panic!("unexpected kind"),
    };
    let rows: Vec<Vec<kronroot::FieldElement>> = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| kronroot::FieldElement::parse(kind, t).unwrap())
                .collect()
        })
        .collect();
    kronroot::Matrix::from_rows(kind, rows).unwrap()
}

#[test]
fn rearrange_sum_obstructed_over_gf2() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field gf 2 rows 4 cols 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    );
    let out = kronroot(
        &["rearrange", &m, "--m", "2", "--n", "2", "--k", "2", "--mode", "sum"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rearrange_flag_validation() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field rational rows 1 cols 8\n1 -1 1 0 0 0 0 0\n",
    );
    // --mode j without --j.
    let out = kronroot(
        &["rearrange", &m, "--m", "1", "--n", "2", "--k", "3", "--mode", "j"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    // --j out of range.
    let out = kronroot(
        &["rearrange", &m, "--m", "1", "--n", "2", "--k", "3", "--mode", "j", "--j", "4"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    // --mode r with k != 2.
    let out = kronroot(
        &["rearrange", &m, "--m", "1", "--n", "2", "--k", "3", "--mode", "r"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    // dimension inconsistency.
    let out = kronroot(
        &["rearrange", &m, "--m", "2", "--n", "2", "--k", "2", "--mode", "r"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn root_of_rational_square_writes_a_valid_root() {
    let dir = tempfile::tempdir().unwrap();
    let a = parse(RATIONAL_A);
    let m = a.kron(&a).unwrap();
    let m_path = write(dir.path(), "m.mat", &render_via_cli_format(&m));
    let root_path = dir.path().join("root.mat");
    let out = kronroot(
        &[
            "root",
            &m_path,
            "--m",
            "2",
            "--n",
            "2",
            "--k",
            "2",
            "--out",
            root_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let root = parse(&fs::read_to_string(&root_path).unwrap());
    assert!(root == a || root == a.neg());
}

fn render_via_cli_format(m: &kronroot::Matrix) -> String {
    let kind = match m.field() {
        kronroot::FieldKind::Rational => "rational".to_string(),
        kronroot::FieldKind::FloatReal => "real".to_string(),
        kronroot::FieldKind::FloatComplex => "complex".to_string(),
        kronroot::FieldKind::PrimeField(p) => format!("gf {}", p.get()),
    };
    let mut text = format!("field {kind} rows {} cols {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    text
}

#[test]
fn root_reports_complex_fallback_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let a = kronroot::Matrix::from_i64_rows(kronroot::FieldKind::FloatReal, &[&[1, 2], &[3, 4]])
        .unwrap();
    let m = a.kron(&a).unwrap().neg();
    let m_path = write(dir.path(), "m.mat", &render_via_cli_format(&m));
    let root_path = dir.path().join("root.mat");
    let out = kronroot(
        &[
            "root",
            &m_path,
            "--m",
            "2",
            "--n",
            "2",
            "--k",
            "2",
            "--out",
            root_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let line = stdout(&out);
    assert!(line.starts_with("COMPLEX_ROOT_EXISTS"), "got {line:?}");
    assert!(line.contains("symmetric=true rank=1 trace=-30"), "got {line:?}");
    // The complex root was still written and verifies.
    let root = parse(&fs::read_to_string(&root_path).unwrap());
    assert!(kronroot::verify_power(&m.to_complex().unwrap(), &root, 2, 1e-8).unwrap());
}

#[test]
fn root_refuses_the_cube_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field rational rows 1 cols 8\n1 -1 1 0 0 0 0 0\n",
    );
    let out = kronroot(&["root", &m, "--m", "1", "--n", "2", "--k", "3"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NOT_A_KRONECKER_POWER\n");
}

#[test]
fn root_no_root_in_field_line() {
    let dir = tempfile::tempdir().unwrap();
    // 2 (A ⊗ A) over the rationals: scaled square, irrational scale root.
    let a = parse(RATIONAL_A);
    let m = a
        .kron(&a)
        .unwrap()
        .scalar_mul(&kronroot::FieldElement::from_i64(kronroot::FieldKind::Rational, 2))
        .unwrap();
    let m_path = write(dir.path(), "m.mat", &render_via_cli_format(&m));
    let out = kronroot(&["root", &m_path, "--m", "2", "--n", "2", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let line = stdout(&out);
    assert!(line.starts_with("NO_ROOT_IN_FIELD"), "got {line:?}");
    assert!(line.contains("rank=1"), "got {line:?}");
}

#[test]
fn check_identity_line_and_exit() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field rational rows 4 cols 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    );
    let out = kronroot(&["check", &m, "--m", "2", "--n", "2", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "symmetric=true rank=1 sum_rank=1 trace=2\n");
}

#[test]
fn check_rejects_non_structured_unit_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field rational rows 4 cols 4\n0 1 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n",
    );
    let out = kronroot(&["check", &m, "--m", "2", "--n", "2", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let line = stdout(&out);
    assert!(line.contains("symmetric=false"), "got {line:?}");
}

#[test]
fn check_cube_over_gf5() {
    let dir = tempfile::tempdir().unwrap();
    let a = kronroot::Matrix::from_i64_rows(
        kronroot::FieldKind::prime_field(5).unwrap(),
        &[&[2, 3], &[1, 4]],
    )
    .unwrap();
    let m = a.kron_power(3).unwrap();
    let m_path = write(dir.path(), "m.mat", &render_via_cli_format(&m));
    let out = kronroot(&["check", &m_path, "--m", "2", "--n", "2", "--k", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(line.contains("sum_rank=1"), "got {line:?}");
}

#[test]
fn check_gf2_square_reports_obstructed_sum() {
    let dir = tempfile::tempdir().unwrap();
    let a = kronroot::Matrix::from_i64_rows(
        kronroot::FieldKind::prime_field(2).unwrap(),
        &[&[1, 0], &[1, 1]],
    )
    .unwrap();
    let m = a.kron(&a).unwrap();
    let m_path = write(dir.path(), "m.mat", &render_via_cli_format(&m));
    let out = kronroot(&["check", &m_path, "--m", "2", "--n", "2", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "symmetric=true rank=1 sum_rank=obstructed trace=1\n");
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_header = write(dir.path(), "bad.mat", "field imaginary rows 1 cols 1\n0\n");
    let out = kronroot(&["check", &bad_header, "--m", "1", "--n", "1", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing.mat");
    let out = kronroot(
        &["check", missing.to_str().unwrap(), "--m", "1", "--n", "1", "--k", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let short = write(dir.path(), "short.mat", "field rational rows 2 cols 2\n1 2\n");
    let out = kronroot(&["check", &short, "--m", "1", "--n", "2", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tol_with_exact_field_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field rational rows 4 cols 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    );
    let out = kronroot(
        &["root", &m, "--m", "2", "--n", "2", "--k", "2", "--tol", "1e-8"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    // And a usable tol on a floating field is accepted.
    let m = write(
        dir.path(),
        "mr.mat",
        "field real rows 4 cols 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    );
    let out = kronroot(
        &["root", &m, "--m", "2", "--n", "2", "--k", "2", "--tol", "1e-8"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn identical_runs_produce_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.mat",
        "field real rows 1 cols 8\n0.1 -0.25 3 0.5 1e-3 2 7 0\n",
    );
    let args = ["rearrange", &m[..], "--m", "1", "--n", "2", "--k", "3", "--mode", "sum"];
    let first = kronroot(&args, dir.path());
    let second = kronroot(&args, dir.path());
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}
