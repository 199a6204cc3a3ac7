use std::path::PathBuf;

use hopfdouble::cli::run_args;
use hopfdouble::exact::Field;
use hopfdouble::hopf::{builtin, to_json, MutationSite};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("hopfdouble-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}

fn run(args: &[&str]) -> hopfdouble::cli::Outcome {
    run_args(std::iter::once("hopfdouble").chain(args.iter().copied()))
}

#[test]
fn pentagon_holds_for_sweedler() {
    let out = run(&["check", "pentagon", "--algebra", "builtin:sweedler4"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("\"pass\": true"));
}

#[test]
fn invariant_of_a_strand_is_the_unit() {
    let out = run(&["invariant", "--algebra", "builtin:zmod2", "--diagram", &data("strand.json"), "--output", "text"]);
    assert_eq!(out.code, 0);
    // the unit of D(ℤ/2) is ε⊗1 = (e⁰ + e¹)⊗1
    let terms: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("term")).collect();
    assert_eq!(terms, ["term [0] 1", "term [2] 1"]);
}

#[test]
fn corrupted_algebra_fails_validation() {
    let h = builtin("zmod3", Field::Rational).unwrap();
    let bad = h.mutated(MutationSite::Mult(1, 1, 2), &Field::Rational.int(1));
    let path = scratch("corrupted.json", &to_json(&bad));
    let out = run(&["validate-algebra", "--algebra", &path]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("\"axiom\""), "{}", out.stdout);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["validate-algebra", "--algebra", "builtin:nope"]).code, 2);
    assert_eq!(run(&["validate-algebra", "--algebra", "/nonexistent/algebra.json"]).code, 2);
    let junk = scratch("junk.json", "{ not json");
    assert_eq!(run(&["invariant", "--algebra", "builtin:zmod2", "--diagram", &junk]).code, 2);
    assert_eq!(run(&["check", "no_such_identity", "--algebra", "builtin:zmod2"]).code, 2);
    assert_eq!(run(&["complex", "--diagram", &data("crossing.json"), "--octahedral"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn octahedral_complex_of_the_trefoil() {
    let out = run(&["complex", "--diagram", &data("trefoil.json"), "--octahedral", "--stats", "--output", "text"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("stats.tetrahedra 12\n"));
    assert!(out.stdout.contains("stats.octahedra 3\n"));
}

#[test]
fn text_mode_mirrors_json() {
    let args = ["complex", "--diagram", &data("tangle_c.json"), "--octahedral"];
    let json = run(&args);
    let text = run(&[&args[..], &["--output", "text"]].concat());
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    let leaves = v["classes"]["leaves"].as_array().unwrap().len();
    assert_eq!(leaves, 4);
    assert_eq!(text.stdout.lines().filter(|l| l.starts_with("classes.leaves.")).count(), leaves);
}

#[test]
fn move_checks_are_deterministic() {
    let args = ["moves", "--suite", "colored", "--algebra", "builtin:zmod2", "--seed", "9", "--depth", "8"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}
