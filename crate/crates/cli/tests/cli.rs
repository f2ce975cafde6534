//! End-to-end tests of the command-line surface: output bytes, exit
//! codes, JSON round trips, and seed plumbing.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rankone"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn bracket_human_and_json() {
    let (code, stdout, _) = run(&["bracket", "--vars", "2", "x2*d/dx1", "x1*d/dx2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "-x1*d/dx1 + x2*d/dx2\n");

    let (code, stdout, _) =
        run(&["bracket", "--vars", "2", "--format", "json", "x2*d/dx1", "x1*d/dx2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"derivation\":\"-x1*d/dx1 + x2*d/dx2\"}\n");
}

#[test]
fn apply_evaluates_the_field() {
    let (code, stdout, _) = run(&["apply", "--vars", "2", "x2*d/dx1 + x1*d/dx2", "x1*x2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "x1^2 + x2^2\n");
}

#[test]
fn reduce_matches_documented_output() {
    let (code, stdout, _) = run(&["reduce", "--vars", "2", "x1*x2*d/dx1 + x1^2*d/dx2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "content: x1\ndirection: x2*d/dx1 + x1*d/dx2\n");
}

#[test]
fn classify_matches_documented_output() {
    let (code, stdout, _) = run(&["classify", "--vars", "1", "d/dx", "x*d/dx", "x^2*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "Sl2, triple e=x^2*d/dx, h=2*x*d/dx, f=-d/dx\n");
}

#[test]
fn classify_almost_abelian_output() {
    let (code, stdout, _) = run(&["classify", "--vars", "1", "x*d/dx", "x^3*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "AlmostAbelian, dim 2, b=1/2*x*d/dx, ideal=[x^3*d/dx]\n");
}

#[test]
fn classify_reports_escapes_and_violations() {
    let (code, stdout, _) = run(&["classify", "--vars", "1", "x^2*d/dx", "x^3*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "NotClosed, bracket of elements 0 and 1 escapes the span: x^4*d/dx\n"
    );

    let (code, stdout, _) = run(&["classify", "--vars", "2", "d/dx", "d/dy"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("HypothesisViolated:"), "got {stdout}");
}

#[test]
fn classify_abstract_tensor_inputs() {
    let (code, stdout, _) = run(&["classify-abstract", "[[[0,0],[0,0]],[[0,0],[0,0]]]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "Abelian, dim 2\n");

    // [b, a] = a on a two-dimensional algebra, basis order (a, b).
    let (code, stdout, _) =
        run(&["classify-abstract", "[[[0,0],[-1,0]],[[1,0],[0,0]]]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "AlmostAbelian, dim 2, b=[0, 1], ideal=[[1, 0]]\n");

    // Heisenberg: [x,y] = z with z central is not an allowed shape.
    let heis = "[[[0,0,0],[0,0,1],[0,0,0]],[[0,0,-1],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]";
    let (code, stdout, _) = run(&["classify-abstract", heis]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("HypothesisViolated:"), "got {stdout}");
}

#[test]
fn classify_abstract_rejects_bad_tensors() {
    // Violating antisymmetry is a typed domain error.
    let (code, _, stderr) = run(&["classify-abstract", "[[[1,0],[0,0]],[[0,0],[0,0]]]"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("Antisymmetry"), "got {stderr}");

    // Bad JSON is a usage error.
    let (code, _, stderr) = run(&["classify-abstract", "[[[0,0],[0,0]]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("invalid JSON tensor"), "got {stderr}");

    // Rational entries arrive as strings.
    let (code, stdout, _) =
        run(&["classify-abstract", "[[[0,0],[\"-1/2\",0]],[[\"1/2\",0],[0,0]]]"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("AlmostAbelian"), "got {stdout}");
}

#[test]
fn centralizer_requires_the_keyword_and_membership() {
    let (code, stdout, _) =
        run(&["centralizer", "--vars", "1", "2*x*d/dx", "in", "d/dx", "x*d/dx", "x^2*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "x*d/dx\n");

    let (code, _, stderr) =
        run(&["centralizer", "--vars", "1", "2*x*d/dx", "inside", "d/dx", "x*d/dx"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("expected the literal word `in`"), "got {stderr}");

    let (code, _, stderr) =
        run(&["centralizer", "--vars", "1", "x^3*d/dx", "in", "d/dx", "x*d/dx"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("NotInSpan"), "got {stderr}");
}

#[test]
fn construct_families() {
    let (code, stdout, _) = run(&["construct", "--vars", "2", "abelian", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "d/dx2\nx1*d/dx2\nx1^2*d/dx2\n");

    let (code, stdout, _) = run(&["construct", "--vars", "2", "almost-abelian", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "d/dx2\n-x2*d/dx2\n");

    let (code, stdout, _) = run(&["construct", "sl2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "x^2*d/dx\n2*x*d/dx\n-d/dx\n");

    let (code, stdout, _) = run(&["construct", "fk", "3", "-2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "(x - 2)*d/dx\n(x^3 - 6*x^2 + 12*x - 8)*d/dx\n");

    let (code, stdout, _) = run(&["construct", "fbeta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "(x^2 + 2*x + 1)*d/dx\n(2*x + 2)*d/dx\n-d/dx\n");

    let (code, _, stderr) = run(&["construct", "abelian", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("NeedsSecondVariable"), "got {stderr}");

    let (code, _, stderr) = run(&["construct", "fk", "1", "0"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("UnsupportedIndex"), "got {stderr}");
}

#[test]
fn w1_commands() {
    let (code, stdout, _) = run(&["w1-classify", "x*d/dx", "x^3*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "FkBeta, k=3, beta=0\n");

    let (code, stdout, _) = run(&["w1-classify", "(x + 1)*d/dx", "d/dx", "(x + 1)^2*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "FBeta, beta=1\n");

    let (code, stdout, _) = run(&["w1-classify", "x^2*d/dx", "x^3*d/dx"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("NotSubalgebra:"), "got {stdout}");

    let (code, stdout, _) =
        run(&["w1-normalize", "(x + 1)*d/dx", "(x + 1)^2*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "FkBeta, k=2, beta=0\nsubstitution: alpha=1, beta=-1\n");

    let (code, stdout, _) = run(&[
        "w1-normalize",
        "--format",
        "json",
        "(x + 1)*d/dx",
        "(x + 1)^2*d/dx",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "{\"outcome\":{\"variant\":\"FkBeta\",\"dimension\":2,\"k\":2,\"beta\":\"0\"},\"substitution\":{\"alpha\":\"1\",\"beta\":\"-1\"}}\n"
    );

    // Normalizing something that is not a family member is a typed error.
    let (code, _, stderr) = run(&["w1-normalize", "x^2*d/dx", "x^3*d/dx"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("NotNormalizable"), "got {stderr}");
}

#[test]
fn verify_prop1_reports_and_seeds() {
    let (code, stdout, stderr) = run(&["verify", "prop1", "--trials", "5"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "5/5 centralizers abelian\n");
    assert!(stderr.contains("seed: 0"), "got {stderr}");

    let (_, _, stderr) = run_with_env(&["verify", "prop1", "--trials", "2"], &[("RANKONE_SEED", "12")]);
    assert!(stderr.contains("seed: 12"), "got {stderr}");

    let (_, _, stderr) = run_with_env(
        &["verify", "prop1", "--trials", "2", "--seed", "3"],
        &[("RANKONE_SEED", "12")],
    );
    assert!(stderr.contains("seed: 3"), "got {stderr}");
}

#[test]
fn verify_theorem1_counts_round_trips() {
    let (code, stdout, _) = run(&["verify", "theorem1", "--max-dim", "4"]);
    assert_eq!(code, 0);
    // n in {2,3}: 4 abelian sizes and 3 almost-abelian sizes each,
    // plus sl2 for n in {1,2,3}.
    assert_eq!(stdout, "17/17 classifications verified\n");

    let (code, stdout, _) = run(&["verify", "theorem1", "--max-dim", "2", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "{\"passes\":6,\"total\":6,\"max_dim\":2}\n");
}

#[test]
fn json_outputs_are_deterministic_and_parse_back() {
    let args = ["classify", "--vars", "1", "--format", "json", "d/dx", "x*d/dx", "x^2*d/dx"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);

    let v: serde_json::Value = serde_json::from_str(&first).expect("valid JSON");
    assert_eq!(v["variant"], "Sl2");
    assert_eq!(v["dimension"], 3);
    let e = rankone::textio::parse_derivation(v["triple"]["e"].as_str().unwrap(), 1).unwrap();
    let h = rankone::textio::parse_derivation(v["triple"]["h"].as_str().unwrap(), 1).unwrap();
    let f = rankone::textio::parse_derivation(v["triple"]["f"].as_str().unwrap(), 1).unwrap();
    assert_eq!(e.bracket(&f).unwrap(), h);
    for s in v["basis"].as_array().unwrap() {
        rankone::textio::parse_derivation(s.as_str().unwrap(), 1).unwrap();
    }
}

#[test]
fn parse_errors_exit_with_code_two() {
    let (code, _, stderr) = run(&["apply", "2x", "x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error at bytes 1..2"), "got {stderr}");

    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);

    let (code, _, stderr) = run(&["classify", "--vars", "0", "d/dx"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--vars"), "got {stderr}");
}

#[test]
fn negative_leading_terms_parse_from_argv() {
    let (code, stdout, _) = run(&["reduce", "-x^2*d/dx"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "content: x^2\ndirection: -d/dx\n");
}
