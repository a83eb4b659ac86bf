use std::path::PathBuf;
use std::process::{Command, Output};

use infcwf_cli::{parse_surface, print_surface};
use infcwf_core::syntax::{Con, Expr, Generator, Sort, Sub, Tm, Ty};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn infcwf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infcwf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    infcwf(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(infcwf(args).stdout).unwrap()
}

#[test]
fn parser_examples() {
    assert_eq!(
        parse_surface("(pair (eps empty) true)").unwrap(),
        Expr::Sub(Sub::pair_unannotated(&Sub::eps(&Con::empty()), &Tm::tru()))
    );
    assert_eq!(
        parse_surface("  (subT bool\n (id empty))").unwrap(),
        Expr::Ty(Con::empty(), Ty::sub(&Ty::bool(), &Sub::id(&Con::empty())))
    );
    let err = parse_surface("(pair").unwrap_err();
    assert!(err.to_string().starts_with("1:6: unexpected end of input"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn printing_round_trips(seed in any::<u64>(), sort in 0usize..4, budget in 1usize..14) {
        let mut gen = Generator::new(seed);
        let g = gen.gen_con(3);
        let e = gen.gen_expr([Sort::Con, Sort::Sub, Sort::Ty, Sort::Tm][sort], &g, budget);
        prop_assert_eq!(parse_surface(&print_surface(&e)).unwrap(), e);
    }
}

#[test]
fn kernel_commands() {
    let (lhs, rhs) = (fixture("lhs.cwf"), fixture("rhs.cwf"));
    let out = infcwf(&["eq", &lhs, &rhs]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS conversion: equal"));
    assert_eq!(code(&["eq", &lhs, &fixture("bool.cwf")]), 1);
    assert_eq!(code(&["eq", &lhs, &fixture("broken.cwf")]), 2);

    assert_eq!(code(&["check", &fixture("not.cwf")]), 0);
    assert_eq!(code(&["check", &fixture("ill.cwf")]), 1);
    assert_eq!(code(&["check", &fixture("broken.cwf")]), 2);
    assert_eq!(code(&["check", &fixture("missing.cwf")]), 2);

    let norm = stdout(&["norm", &fixture("not.cwf")]);
    let first = norm.lines().next().unwrap();
    assert_eq!(first, "(lam bool bool (boolrec bool false true (q empty bool)))");
    assert_eq!(code(&["norm", &fixture("ill.cwf")]), 1);

    let eval = stdout(&["eval", &fixture("not.cwf")]);
    assert!(eval.starts_with("() -> [true false]\n"), "{eval}");
    let eval = stdout(&["eval", &fixture("bool.cwf")]);
    assert!(eval.starts_with("(false)\n(true)\n"), "{eval}");
    assert_eq!(code(&["eval", &fixture("ill.cwf")]), 1);
}

#[test]
fn semicategory_commands() {
    let out = stdout(&["verify-semicat", &fixture("z2.semicat")]);
    assert!(out.contains("NOTE identities: {e}"), "{out}");
    assert!(out.contains("NOTE univalence: fails"), "{out}");
    assert_eq!(code(&["verify-semicat", &fixture("z2.semicat"), "--oracle"]), 0);
    assert_eq!(code(&["verify-semicat", &fixture("constant.semicat")]), 0);
    assert_eq!(code(&["verify-semicat", &fixture("nonassoc.semicat")]), 2);

    let out = stdout(&["enumerate", "--max-objects", "1", "--max-morphisms", "3", "--oracle"]);
    assert!(out.contains("NOTE instances 1 [3]: 113 instances"), "{out}");
    assert!(out.contains("PASS oracle-count [2]: brute force finds 8 associative tables"));
    assert!(!out.contains("FAIL"));
    assert_eq!(code(&["enumerate", "--max-objects", "9"]), 2);

    let out = stdout(&["slice", &fixture("arrow.semicat"), "--object", "y"]);
    assert!(out.contains("PASS slice-identities"), "{out}");
    assert_eq!(code(&["slice", &fixture("arrow.semicat"), "--object", "nowhere"]), 2);
    assert_eq!(code(&["slice", &fixture("arrow.semicat")]), 2);
}

#[test]
fn sset_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z2.sset");
    let out_s = out.to_string_lossy();
    assert_eq!(code(&["nerve", &fixture("z2.semicat"), "-o", &out_s]), 0);
    let report = stdout(&["verify-sset", &out_s]);
    assert!(report.contains("PASS segal"), "{report}");
    assert!(report.contains("NOTE univalence: fails"), "{report}");
    assert_eq!(code(&["verify-sset", &out_s, "--oracle"]), 0);

    assert_eq!(code(&["verify-sset", &fixture("pair.sset")]), 1);
    assert_eq!(code(&["verify-sset", &fixture("point.sset")]), 0);
    let bad = dir.path().join("bad.sset");
    std::fs::write(&bad, "max-level 1\ncell 1 f x y\n").unwrap();
    assert_eq!(code(&["verify-sset", &bad.to_string_lossy()]), 2);

    assert_eq!(code(&["verify-map", &fixture("arrow.functor")]), 0);
    assert_eq!(code(&["verify-map", &fixture("collapse.map")]), 0);
    assert_eq!(code(&["verify-map", &fixture("collapse.map"), "--expect", "inner"]), 0);
    assert_eq!(code(&["verify-map", &fixture("collapse.map"), "--expect", "left"]), 1);
    assert_eq!(code(&["verify-map", &fixture("z2.semicat")]), 2);
}

#[test]
fn model_commands() {
    let base = ["--budget", "40"];
    assert_eq!(code(&[&["harness", "--model", "standard"][..], &base].concat()), 0);
    assert_eq!(code(&[&["harness", "--model", "syntactic"][..], &base].concat()), 0);
    let out = stdout(&[&["harness", "--model", "faulted"][..], &base].concat());
    assert!(out.contains("FAIL ext-beta2"), "{out}");
    assert_eq!(code(&[&["harness", "--model", "faulted"][..], &base].concat()), 1);

    let ctx = fixture("bool.cwf");
    let args = ["slice", "--model", "standard", "--context", &ctx, "--budget", "40"];
    assert_eq!(code(&args), 0);
    let args = ["slice", "--model", "faulted", "--context", &ctx, "--budget", "40"];
    assert_eq!(code(&args), 1);
    let not_a_context = fixture("not.cwf");
    let args = ["slice", "--model", "standard", "--context", &not_a_context];
    assert_eq!(code(&args), 2);
}

#[test]
fn machine_reports_are_reproducible() {
    let run = |jobs: &str| {
        stdout(&["harness", "--model", "standard", "--budget", "60", "--seed", "7", "--format", "machine", "--jobs", jobs])
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("3"));
    let json: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(json["status"], "pass");
    assert_eq!(json["checks"][2]["id"], "idl");

    let run = |jobs: &str| {
        stdout(&["enumerate", "--max-objects", "2", "--max-morphisms", "2", "--format", "machine", "--jobs", jobs])
    };
    assert_eq!(run("1"), run("4"));

    let err = stdout(&["check", &fixture("broken.cwf"), "--format", "machine"]);
    let json: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(json["status"], "error");
    assert!(json["error"].as_str().unwrap().contains("3:1"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["harness", "--jobs", "0"]), 2);
    assert_eq!(code(&["harness", "--format", "yaml"]), 2);
    assert_eq!(code(&["verify-sset", &fixture("point.sset"), "--max-level", "0"]), 2);
}
