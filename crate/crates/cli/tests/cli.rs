use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn eqpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqpl")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const CAT_ASSERTIONS: [&str; 6] = [
    "[cati,cata,catm]",
    "(catm -> cata)",
    "(dia(cata) && dia(~cata))",
    "! [cata]",
    "(Pr(cata) = 1/3)",
    "poss{cata,catm}((cata /\\ catm) : 1/sqrt(6), (cata /\\ ~catm) : 1/sqrt(6), (~cata /\\ ~catm) : sqrt(2/3) e^{i pi/3})",
];

#[test]
fn cat_model_satisfies_each_assertion() {
    let model = fixture("cat.model.json");
    for f in CAT_ASSERTIONS {
        let out = eqpl(&["check", "--model", model.to_str().unwrap(), "--formula", f]);
        assert_eq!(code(&out), 0, "{f}: {}", stdout(&out));
        assert!(stdout(&out).starts_with("check: satisfied"));
    }
    let out = eqpl(&["check", "--model", model.to_str().unwrap(), "--formula", "(Pr(cata) = 1/2)"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn cat_probability_of_alive() {
    let out = eqpl(&["eval", "--model", fixture("cat.model.json").to_str().unwrap(), "--term", "Pr(cata)"]);
    assert_eq!(code(&out), 0);
    let value: f64 = stdout(&out).lines().nth(1).unwrap().parse().unwrap();
    assert!((value - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn punit_script_is_accepted_and_a_mutation_rejected() {
    let script = fixture("punit.proof");
    let out = eqpl(&["prove", "--script", script.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.proof");
    std::fs::write(&bad, std::fs::read_to_string(&script).unwrap().replace("QMP(3,6)", "QMP(6,3)")).unwrap();
    let out = eqpl(&["prove", "--script", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("prove: rejected at line 7"));
}

fn without_timing(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"timing_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn solved_cat_model_round_trips_and_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cat.json");
    let formula = fixture("cat_all.eqpl");
    let args = ["solve", "--bound", "cati,cata,catm", "--formula", formula.to_str().unwrap(), "--seed", "7", "--json"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", file.to_str().unwrap()]);
    let first = eqpl(&with_out);
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    let second = eqpl(&args);
    assert_eq!(without_timing(&stdout(&first)), without_timing(&stdout(&second)));
    let out = eqpl(&["validate-model", "--model", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = eqpl(&["check", "--model", file.to_str().unwrap(), "--formula", formula.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn unsatisfiable_formula_has_no_model() {
    let out = eqpl(&["solve", "--formula", "(qb0 /\\ ~qb0)"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("solve: inconsistent"));
}

#[test]
fn external_oracle_settles_what_the_builtin_cannot() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("hard.proof");
    std::fs::write(&script, "bound F = qb0\n1. ((x1 * x1) <= (((x1 * x1) * (x1 * x1)) + 1)) ; ORACLE\n").unwrap();
    let path = script.to_str().unwrap();
    assert_eq!(code(&eqpl(&["prove", "--script", path])), 1);
    assert_eq!(code(&eqpl(&["prove", "--script", path, "--oracle-cmd", "cat > /dev/null; echo VALID"])), 0);
    assert_eq!(code(&eqpl(&["prove", "--script", path, "--oracle-cmd", "cat > /dev/null; echo UNKNOWN"])), 1);
}

#[test]
fn parse_and_dnf() {
    let out = eqpl(&["parse", "--formula", "(qb0 &&   qb1)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "parse: parsed\n(qb0 && qb1)\n");
    assert_eq!(code(&eqpl(&["parse", "--formula", "(qb0 &&"])), 1);
    let out = eqpl(&["dnf", "--formula", "(qb0 || qb1)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("dnf: 3 disjuncts"));
    let out = eqpl(&["expand", "--formula", "(qb0 /\\ qb1)", "--category", "classical"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(code(&eqpl(&["check", "--model", "missing.json", "--formula", "qb0"])), 2);
    assert_eq!(code(&eqpl(&["frobnicate"])), 2);
    let out = eqpl(&["solve", "--formula", "qb0", "--bound", "nosuch"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn invalid_model_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("product.json");
    let product = r#"{
      "frame": ["qb0", "qb1"],
      "admissible": ["00", "01", "10", "11"],
      "partition": [["qb0", "qb1"]],
      "blocks": [{ "00": [0.5, 0], "01": [0.5, 0], "10": [0.5, 0], "11": [0.5, 0] }]
    }"#;
    std::fs::write(&file, product).unwrap();
    let out = eqpl(&["validate-model", "--model", file.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("  - "));
}
