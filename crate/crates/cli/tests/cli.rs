use superell_cli::{run_with, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use superell_core::output::OutputDocument;
use superell_core::palindromic::SymmetryReport;
use superell_core::{CenterClass, ParamPoly};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("superell").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_rows(args: &[&str]) -> OutputDocument {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    OutputDocument::from_json(&out).unwrap()
}

fn poly(text: &str) -> ParamPoly {
    superell_core::expr::parse_param_poly(text).unwrap()
}

#[test]
fn psi_e1_f1_prints_exact_coefficient() {
    let (code, out, _) = run(&["psi", "--r", "1", "--s", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("| psi(e1, f1) | 0 | 0 | a/2 - a^3/2 |"), "{out}");
}

#[test]
fn reduce_u_is_zero() {
    let doc = json_rows(&["reduce", "--curve", "quadratic", "--expr", "u"]);
    assert_eq!(doc.rows.len(), 1);
    assert!(doc.rows[0].class.is_zero());
}

#[test]
fn reduce_on_explicit_coefficients() {
    let doc = json_rows(&["reduce", "--curve", "coeffs", "1, 0, -2*a, 0, 1", "--expr", "x^5"]);
    assert_eq!(doc.dimension, 5);
    assert_eq!(doc.rows[0].class.omega(3), &poly("3/2*a^2 - 1/2"));
    let quartic = json_rows(&["reduce", "--curve", "quartic", "--expr", "x^5"]);
    assert_eq!(quartic.rows[0].class, doc.rows[0].class);
}

#[test]
fn verify_antiderivative_passes() {
    let (code, out, _) = run(&["verify", "antiderivative", "--max-n", "100"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("antiderivative: ok"));
}

#[test]
fn verify_small_suites_pass() {
    for suite in ["legendre", "quartic"] {
        let (code, out, _) = run(&["verify", suite, "--max-n", "30"]);
        assert_eq!(code, EXIT_OK, "{out}");
    }
    let (code, out, _) = run(&["verify", "genfun", "--order", "20"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn verify_snf_reports_unresolved_recurrence() {
    let (code, out, _) = run(&["verify", "snf"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("exactly one was required"), "{out}");
    assert!(out.contains("note: recurrence hypothesis power/as-printed"));
}

#[test]
fn psi_table_matches_reference_cells() {
    let doc = json_rows(&["psi-table", "--rmax", "2", "--smax", "1", "--smin", "-2"]);
    assert_eq!(doc.rows.len(), 8);
    let cell = |label: &str| {
        doc.rows
            .iter()
            .find(|r| r.label == label)
            .unwrap_or_else(|| panic!("missing {label}"))
            .class
            .clone()
    };
    let class = |w1: &str, w2: &str| CenterClass::from_coords(vec![ParamPoly::zero(), poly(w1), poly(w2)]);
    assert_eq!(cell("psi(e1, f-1)"), class("1", "-a"));
    assert_eq!(cell("psi(e1, f-2)"), class("-a", "1"));
    assert_eq!(cell("psi(e1, f0)"), class("0", "1/2 - 1/2*a^2"));
    assert_eq!(cell("psi(e1, f1)"), class("0", "1/2*a - 1/2*a^3"));
    assert_eq!(cell("psi(e2, f-2)"), class("8 + 6*a^2", "-14*a"));
    assert_eq!(cell("psi(e2, f-1)"), class("-6*a", "4 + 2*a^2"));
    assert_eq!(cell("psi(e2, f0)"), class("0", "a - a^3"));
}

#[test]
fn psi_table_formats_agree() {
    let args = ["psi-table", "--rmax", "2", "--smax", "2"];
    let doc = json_rows(&args);
    let (_, csv, _) = run(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(csv.lines().count(), doc.rows.len() + 1);
    let (_, md, _) = run(&args);
    for row in &doc.rows {
        assert!(md.contains(&format!("| {} |", row.label)));
    }
}

#[test]
fn psi_sector_kinds() {
    let doc = json_rows(&["psi", "--r", "1", "--s", "-1", "--kind", "ee"]);
    assert_eq!(doc.rows[0].label, "psi(e1, e-1)");
    assert_eq!(doc.rows[0].class, CenterClass::basis(3, 0));
    let doc = json_rows(&["psi", "--r", "2", "--s", "-3", "--kind", "ff", "--curve", "quartic"]);
    assert!(doc.rows[0].class.coords()[1..].iter().all(ParamPoly::is_zero));
}

#[test]
fn snf_values() {
    let (code, out, _) = run(&["snf", "--l", "2", "--j", "1", "--k", "2", "--m", "4", "--r", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "P^(2,1)_2(c; 4, 2) = 6");
    let (_, out, _) = run(&["snf", "--l", "1", "--j", "2", "--k", "1", "--m", "2", "--r", "2"]);
    assert_eq!(out.trim(), "P^(1,2)_1(c; 2, 2) = 4 - 2*c");
    let (code, _, err) = run(&["snf", "--l", "3", "--j", "1", "--k", "1", "--m", "3", "--r", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("outside"));
    let (code, _, _) = run(&[
        "snf", "--l", "1", "--j", "1", "--k", "1", "--m", "2", "--r", "2", "--hypothesis", "made-up",
    ]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn palindromic_report_round_trips() {
    let path = std::env::temp_dir().join(format!("superell-report-{}.json", std::process::id()));
    let (code, out, err) = run(&[
        "report",
        "palindromic",
        "--degree",
        "6",
        "--radius",
        "12",
        "--chain",
        "10",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("wrote "));
    let rep: SymmetryReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(rep.degree, 6);
    assert_eq!(rep.dimension_observed, 7);

    let (code, _, _) = run(&["report", "palindromic", "--degree", "5"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["reduce", "--expr", "x^^2"][..],
        &["reduce", "--expr", "u^-1"],
        &["reduce", "--expr", "x", "--format", "yaml"],
        &["reduce", "--curve", "cubic", "--expr", "x"],
        &["reduce", "--curve", "coeffs", "1, 1, 1, 1, 2", "--expr", "x"],
        &["reduce", "--curve", "coeffs", "a, 0, 1", "--expr", "x"],
        &["verify", "nonsense"],
        &["psi", "--r", "1"],
        &["frobnicate"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (_, _, err) = run(&["reduce", "--expr", "x^^2"]);
    assert!(err.contains("offset 2"), "{err}");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("psi-table"));
}
