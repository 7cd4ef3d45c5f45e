use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use radext::report::{AnalyzeReport, VerifyOutput, GRID_HEADER};
use serde_json::Value;

fn radext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radext")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_of(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    let v: Value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{}: {}", e, text));
    v["error"].clone()
}

fn analyze(args: &[&str]) -> AnalyzeReport {
    let mut all = vec!["analyze"];
    all.extend_from_slice(args);
    let o = radext(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("radext-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_square() {
    let r = analyze(&["--builtin", "square"]);
    assert!((r.l - 2.0).abs() <= 1e-6 && (r.big_l - 2.0).abs() <= 1e-6);
    assert!((r.lambda - 2.28825).abs() <= 1e-5);
    assert!((r.k_qc.unwrap() - 2.61803).abs() <= 1e-5);
    assert!((r.alpha_gamma - PI / 4.0).abs() <= 1e-9);
    let b = r.star_bounds.unwrap();
    assert!((b.big_l - r.lambda).abs() <= 1e-9);
    assert!(r.flags.is_empty());
}

#[test]
fn analyze_constant_radius() {
    let r = analyze(&["--r", "1"]);
    for v in [r.l, r.big_l, r.lambda, r.k_qc.unwrap()] {
        assert!((v - 1.0).abs() <= 1e-12, "{:?}", r);
    }
    assert_eq!(r.curve.kind, "polar");
}

#[test]
fn analyze_ellipse_flags() {
    let r = analyze(&["--builtin", "ellipse", "--param", "a=2", "--param", "b=1"]);
    assert!((r.k_qc.unwrap() - 2.08225).abs() <= 1e-5);
    assert!(r.flags.iter().any(|f| f == "eqK-radicand-discrepancy-check"));
    assert!(r.flags.iter().any(|f| f == "lip-printed-equals-square"));
    assert!(!r.flags.iter().any(|f| f == "eqK-printed-root-mismatch"));
    let r = analyze(&["--builtin", "ellipse", "--param", "a=4", "--param", "b=2", "--grid-n", "1024"]);
    assert!(r.flags.iter().any(|f| f == "eqK-printed-root-mismatch"));
}

#[test]
fn ellipse_as_text_matches_builtin() {
    let text = radext_core::builtin::ELLIPSE_EXPR;
    let a = analyze(&["--r", text, "--param", "a=2", "--param", "b=1"]);
    let b = analyze(&["--builtin", "ellipse", "--param", "a=2", "--param", "b=1"]);
    assert_eq!((a.l, a.big_l, a.lambda, a.k_qc), (b.l, b.big_l, b.lambda, b.k_qc));
    assert_eq!(a.flags, b.flags);
}

#[test]
fn analyze_circle_homeomorphism_flags_k() {
    let r = analyze(&["--r", "1", "--psi", "t + 0.5*sin(t)"]);
    assert!((r.k_qc.unwrap() - 2.0).abs() <= 1e-9);
    assert!(r.flags.iter().any(|f| f == "K_qc-differs-from-sup-psi-prime"));
    assert_eq!(r.curve.kind, "map");
}

#[test]
fn analyze_shear_is_degenerate() {
    let o = radext(&["analyze", "--builtin", "shear"]);
    assert_eq!(o.status.code(), Some(3));
    let e = error_of(&o);
    assert_eq!(e["exit_code"], 3);
    assert_eq!(e["kind"], "degenerate_differential");
    assert!(e["details"]["t"].is_number());
    let r: AnalyzeReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.k_qc.is_none());
    assert!((r.l - 101f64.sqrt() / 10.0).abs() <= 1e-3);
    assert!((r.big_l - PI / 2.0).abs() <= 1e-3);
}

#[test]
fn reports_roundtrip_byte_identical() {
    for args in [
        vec!["analyze", "--builtin", "square"],
        vec!["analyze", "--builtin", "ellipse", "--grid-n", "512"],
        vec!["verify", "--builtin", "circle", "--grid-n", "256"],
    ] {
        let o = radext(&args);
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
        if args[0] == "analyze" {
            let r: AnalyzeReport = serde_json::from_str(&text).unwrap();
            assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
        } else {
            let r: VerifyOutput = serde_json::from_str(&text).unwrap();
            assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze", "--builtin", "trigpoly", "--seed", "11", "--grid-n", "512"];
    assert_eq!(radext(&args).stdout, radext(&args).stdout);
    let other = radext(&["analyze", "--builtin", "trigpoly", "--seed", "12", "--grid-n", "512"]);
    assert_ne!(radext(&args).stdout, other.stdout);
}

#[test]
fn verify_builtins() {
    for args in [
        vec!["verify", "--builtin", "circle"],
        vec!["verify", "--builtin", "square"],
        vec!["verify", "--builtin", "shear"],
    ] {
        let o = radext(&args);
        assert_eq!(o.status.code(), Some(0), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
        let r: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(r.passed);
        if args[2] == "square" {
            let b = r.report.bounds.unwrap();
            assert!((b.big_l - r.report.lipschitz.lambda).abs() <= 1e-9);
        }
        if args[2] == "shear" {
            assert!((r.report.lipschitz.l - 101f64.sqrt() / 10.0).abs() <= 1e-3);
            assert!((r.report.lipschitz.big_l - PI / 2.0).abs() <= 1e-3);
        }
    }
}

#[test]
fn verify_failure_exits_four() {
    // a 1e-12 pairwise tolerance is below the oracle's grid error
    let o = radext(&["verify", "--builtin", "ellipse", "--tol", "1e-12", "--grid-n", "256"]);
    assert_eq!(o.status.code(), Some(4));
    let e = error_of(&o);
    assert_eq!(e["kind"], "verification");
    let r: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!r.passed);
}

fn grid_csv(args: &[&str]) -> Vec<Vec<f64>> {
    let mut all = vec!["grid"];
    all.extend_from_slice(args);
    let o = radext(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(GRID_HEADER));
    lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn grid_circle_identity() {
    let rows = grid_csv(&["--builtin", "circle", "--radial-n", "1", "--angular-n", "8"]);
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.len() == 10 && r[8] == 1.0));
}

#[test]
fn grid_square_max_dilatation() {
    let rows = grid_csv(&["--builtin", "square", "--radial-n", "1", "--angular-n", "4096"]);
    let max = rows.iter().map(|r| r[8]).fold(0.0, f64::max);
    assert!((max - (3.0 + 5f64.sqrt()) / 2.0).abs() <= 1e-6);
}

#[test]
fn grid_ellipse_radius_independent() {
    let rows = grid_csv(&["--builtin", "ellipse", "--param", "a=2", "--param", "b=1", "--radial-n", "2", "--angular-n", "1024"]);
    assert_eq!(rows.len(), 2048);
    for j in 0..1024 {
        let (a, b) = (&rows[j], &rows[1024 + j]);
        assert_eq!((a[0], b[0]), (0.5, 1.0));
        assert_eq!(a[1], b[1]);
        assert_eq!(a[4..], b[4..]);
        assert!((b[2] - 2.0 * a[2]).abs() <= 1e-15 * b[2].abs().max(1.0));
    }
}

#[test]
fn grid_cells_have_seventeen_digits() {
    let o = radext(&["grid", "--builtin", "square", "--radial-n", "1", "--angular-n", "8"]);
    for line in stdout(&o).lines().skip(1) {
        for cell in line.split(',') {
            let mantissa = cell.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17, "{}", cell);
        }
    }
}

#[test]
fn grid_writes_file_atomically() {
    let path = scratch("field.csv");
    let o = radext(&["grid", "--builtin", "square", "--radial-n", "2", "--angular-n", "16", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 33);
    let leftovers: Vec<_> = fs::read_dir(path.parent().unwrap())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
    let json = radext(&["grid", "--builtin", "square", "--radial-n", "1", "--angular-n", "8", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    assert!(v[0]["dilatation"].is_number());
}

#[test]
fn grid_degenerate_point_is_reported() {
    let o = radext(&["grid", "--builtin", "shear", "--radial-n", "2", "--angular-n", "64"]);
    assert_eq!(o.status.code(), Some(3));
    let e = error_of(&o);
    assert_eq!(e["details"]["i"], 1);
    assert!(e["details"]["j"].is_number());
}

#[test]
fn exit_codes() {
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["analyze", "--bogus"], 1, "usage"),
        (vec!["analyze", "--builtin", "square", "--grid-n", "32"], 1, "usage"),
        (vec!["analyze", "--builtin", "square", "--grid-n", "70000"], 1, "usage"),
        (vec!["analyze", "--builtin", "nope"], 1, "unknown_curve"),
        (vec!["analyze", "--builtin", "square", "--format", "csv"], 1, "usage"),
        (vec!["analyze", "--builtin", "ellipse", "--param", "a=1", "--param", "b=2"], 1, "invalid_params"),
        (vec!["analyze", "--r", "1 +"], 1, "parse"),
        (vec!["analyze", "--r", "1 + c*cos(t)"], 1, "eval"),
        (vec!["analyze", "--builtin", "square", "--seed", "3"], 1, "usage"),
        (vec!["analyze", "--r", "0.5 + cos(t)"], 2, "validation"),
        (vec!["analyze", "--r", "1", "--psi", "t + 1.5*sin(t)"], 2, "validation"),
        (vec!["verify", "--r", "1", "--psi", "t + sin(t)"], 3, "degenerate_differential"),
        (vec!["grid", "--builtin", "circle", "--radial-n", "10000", "--angular-n", "10000"], 1, "usage"),
        (vec!["analyze", "--r", "log(cos(t))"], 2, "validation"),
    ];
    for (args, code, kind) in cases {
        let o = radext(&args);
        assert_eq!(o.status.code(), Some(code), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
        let e = error_of(&o);
        assert_eq!(e["exit_code"], code);
        assert_eq!(e["kind"], kind, "{:?}", args);
    }
}

#[test]
fn help_exits_zero() {
    let o = radext(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("analyze"));
}

#[test]
fn parse_check() {
    let o = radext(&["parse-check", "(cos(t)^2/a^2 + sin(t)^2/b^2)^(-1/2)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"], serde_json::json!(["a", "b"]));
    assert_eq!(v["has_branches"], false);
    let o = radext(&["parse-check", "2t"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["details"]["offset"], 1);
}

#[test]
fn curves_list() {
    let o = radext(&["curves", "list", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|b| b["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["circle", "ellipse", "square", "trigpoly", "shear"]);
    let o = radext(&["curves", "list"]);
    assert!(stdout(&o).lines().count() == 5);
}
