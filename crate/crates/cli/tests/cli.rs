use std::io::Write;
use std::process::{Command as Process, Output};

use hochtrace::linalg::{FPAbelianGroup, HomologyStructure};
use hochtrace::ring::BaseRing;
use hochtrace_cli::output::{Agreement, Outcome, Report, Verdict};
use hochtrace_cli::{run, Command, Format, JobConfig};
use tempfile::NamedTempFile;

fn hochtrace(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_hochtrace")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = hochtrace(&all);
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), report)
}

fn toml_file(text: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn groups(report: &Report) -> Vec<String> {
    match &report.result {
        Outcome::HomologyTable { rows, .. } => rows.iter().map(|r| r.group.clone()).collect(),
        other => panic!("not a homology table: {other:?}"),
    }
}

#[test]
fn hh_of_the_integers_is_concentrated_in_degree_zero() {
    let out = hochtrace(&["hh", "Z"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let column: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(column, ["Z", "0", "0", "0", "0"]);
}

#[test]
fn k0_of_trivial_agrees() {
    let (code, report) = structured(&["k0", "trivial"]);
    assert_eq!(code, 0);
    let Outcome::K0 { sdot, grothendieck, verdict, .. } = report.result else { panic!() };
    assert_eq!(sdot, FPAbelianGroup::zero());
    assert_eq!(grothendieck, FPAbelianGroup::zero());
    assert_eq!(verdict, Agreement::Agree);
}

#[test]
fn morita_over_f2_is_iso_through_degree_three() {
    let (code, report) = structured(&["morita", "GF:2", "--n", "2", "--max-degree", "3"]);
    assert_eq!(code, 0);
    let Outcome::Morita { rows, .. } = report.result else { panic!() };
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.verdict == Verdict::Iso));
}

#[test]
fn minimal_algebra_file_for_the_integers() {
    let f = toml_file("base = \"Z\"\nbasis = [\"1\"]\nunit = [1]\nmul = [[0, 0, [[0, 1]]]]\n");
    let path = f.path().to_str().unwrap();
    let (code, report) = structured(&["validate", path]);
    assert_eq!(code, 0);
    assert!(matches!(report.result, Outcome::Validation { valid: true, .. }));
    let (_, report) = structured(&["hh", path, "--max-degree", "2"]);
    assert_eq!(groups(&report), ["Z", "0", "0"]);
}

#[test]
fn non_associative_group_names_the_triple() {
    let f = toml_file(
        r#"
elements = ["e", "a", "b", "c", "d"]
table = [
  ["e", "a", "b", "c", "d"],
  ["a", "e", "c", "d", "b"],
  ["b", "d", "e", "a", "c"],
  ["c", "b", "d", "e", "a"],
  ["d", "c", "a", "b", "e"],
]
"#,
    );
    let path = f.path().to_str().unwrap();
    let out = hochtrace(&["group-homology", path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(a*a)*b != a*(a*b)"));
    let (code, report) = structured(&["validate", path]);
    assert_eq!(code, 3);
    let Outcome::Validation { valid, failures, .. } = report.result else { panic!() };
    assert!(!valid);
    assert!(failures.iter().any(|f| f.rule == "associativity"));
}

#[test]
fn vect_gf_family_file_is_valid() {
    let f = toml_file("family = \"vect_gf\"\nq = 2\nbound = 2\n");
    let (code, report) = structured(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(matches!(report.result, Outcome::Validation { valid: true, .. }));
}

#[test]
fn explicit_category_file() {
    let text = r#"
objects = ["0", "S"]
zero = "0"
morphisms = [
  { name = "in", src = "0", dst = "S", cofibration = true },
  { name = "out", src = "S", dst = "0" },
  { name = "collapse", src = "S", dst = "S" },
]
composition = [
  ["out", "in", "id_0"],
  ["in", "out", "collapse"],
  ["collapse", "in", "in"],
  ["out", "collapse", "out"],
  ["collapse", "collapse", "collapse"],
]
"#;
    let f = toml_file(text);
    let (code, report) = structured(&["k0", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let Outcome::K0 { sdot, verdict, .. } = report.result else { panic!() };
    assert_eq!((sdot, verdict), (FPAbelianGroup::free(1), Agreement::Agree));

    // Dropping the cofibration flag on 0 -> S breaks the zero-object axiom.
    let broken = toml_file(&text.replace(", cofibration = true", ""));
    let (code, report) = structured(&["validate", broken.path().to_str().unwrap()]);
    assert_eq!(code, 3);
    let Outcome::Validation { failures, .. } = report.result else { panic!() };
    assert!(failures.iter().any(|f| f.rule == "axiom-2"));
    assert_eq!(hochtrace(&["k0", broken.path().to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(hochtrace(&["hh", "no-such-algebra"]).status.code(), Some(2));
    assert_eq!(hochtrace(&["hh", "Z", "--ring", "GF:4"]).status.code(), Some(2));
    assert_eq!(hochtrace(&["hh", "Z", "--format", "xml"]).status.code(), Some(2));
    let bad = toml_file("basis = [\"1\"]\nunit = [1\n");
    assert_eq!(hochtrace(&["hh", bad.path().to_str().unwrap()]).status.code(), Some(2));
    // x is not invertible, the unit is missing from the products.
    assert_eq!(hochtrace(&["trace-k1", "trunc:2", "[x]", "--ring", "GF:2"]).status.code(), Some(3));
    let no_unit = toml_file("basis = [\"1\"]\nunit = [1]\n");
    assert_eq!(hochtrace(&["hh", no_unit.path().to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(hochtrace(&["hc", "Z", "--ring", "Z"]).status.code(), Some(3));
    assert_eq!(hochtrace(&["group-homology", "symmetric:9"]).status.code(), Some(4));
    assert_eq!(hochtrace(&["hh", "matrix:3", "--ring", "Q", "--max-degree", "9"]).status.code(), Some(4));
}

#[test]
fn cyclic_homology_forces_rationals() {
    let (code, report) = structured(&["hc", "Z", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report.ring.as_deref(), Some("Q"));
    assert_eq!(groups(&report), ["Q", "0", "Q", "0"]);
}

#[test]
fn group_homology_of_cyclic_groups() {
    let (_, report) = structured(&["group-homology", "cyclic:3", "--max-degree", "3"]);
    assert_eq!(groups(&report), ["Z", "Z/3", "0", "Z/3"]);
    let (_, report) = structured(&["group-homology", "cyclic:3", "--max-degree", "2", "--ring", "GF:3"]);
    assert_eq!(groups(&report), ["F3", "F3", "F3"]);
}

#[test]
fn trace_of_one_plus_x() {
    let (code, report) = structured(&["trace-k1", "trunc:2", "[1 + x]", "--ring", "GF:2"]);
    assert_eq!(code, 0);
    let Outcome::TraceK1 { coordinates, is_zero, .. } = report.result else { panic!() };
    assert_eq!(coordinates, ["1", "1"]);
    assert!(!is_zero);
    let (code, report) = structured(&["trace-homology", "trunc:2", "--ring", "GF:2", "--max-degree", "1"]);
    assert_eq!(code, 0);
    let Outcome::TraceHomology { rows, group_order, .. } = report.result else { panic!() };
    assert_eq!(group_order, 2);
    assert_eq!(rows[1].matrix, vec![vec!["1".to_string(), "1".to_string()]]);
}

#[test]
fn structured_output_round_trips() {
    for args in [
        vec!["hh", "trunc:3", "--max-degree", "2"],
        vec!["k0", "vect_gf:2:2"],
        vec!["morita", "Q", "--max-degree", "2"],
        vec!["group-homology", "symmetric:3", "--max-degree", "3"],
        vec!["trace-k1", "group:cyclic:2", "[1/2*1 + 3/2*x]", "--ring", "Q"],
    ] {
        let mut all = args.clone();
        all.extend(["--format", "structured"]);
        let out = hochtrace(&all);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let report: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(report.to_json(), text);
        let again: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(again, report);
    }
    let (_, report) = structured(&["group-homology", "symmetric:3", "--max-degree", "3"]);
    let Outcome::HomologyTable { rows, .. } = &report.result else { panic!() };
    assert_eq!(rows[3].structure, HomologyStructure::Abelian(FPAbelianGroup::from_cyclic_orders(&[6.into()])));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let mut config = JobConfig::new(Command::Hh { algebra: "group:symmetric:3".into() });
    config.ring = Some(BaseRing::PrimeField(3));
    config.max_degree = 2;
    config.format = Format::Structured;
    let a = run(&config);
    let b = run(&config);
    assert_eq!(a.exit_code, 0);
    assert_eq!(a.stdout, b.stdout);
    let first = hochtrace(&["k0", "finite_modules:4:4", "--format", "structured"]).stdout;
    let second = hochtrace(&["k0", "finite_modules:4:4", "--format", "structured"]).stdout;
    assert_eq!(first, second);
}

#[test]
fn zero_bound_is_rejected() {
    let mut config = JobConfig::new(Command::K0 { category: "pointed_sets".into() });
    config.bound = Some(0);
    assert_eq!(run(&config).exit_code, 3);
}
