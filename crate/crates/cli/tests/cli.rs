use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_loopmagnus"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn loopmagnus")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn reduce_example() {
    assert_eq!(stdout(&["reduce", "x1\\(x1*x2)"]), "x2\n");
    assert_eq!(stdout(&["reduce", "--commutative", "x1*x2"]), "(x2*x1)\n");
}

#[test]
fn dimension_example() {
    assert_eq!(
        stdout(&["dimension", "--n", "3", "--degree", "6", "((x1*x2)*x3)/(x1*(x2*x3))"]),
        "degree 3: in D_3, not in D_4\n"
    );
    assert_eq!(
        stdout(&["dimension", "--n", "3", "--degree", "2", "(x1*x2)/(x2*x1)"]),
        "degree 2: not in D_3\n"
    );
}

#[test]
fn magnus_text_and_json() {
    assert_eq!(stdout(&["magnus", "--degree", "2", "x1*x2"]), "1 + 1*x1 + 1*x2 + 1*(x1*x2)\n");
    let json = stdout(&["magnus", "--degree", "1", "--json", "x1"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v.as_array().unwrap().len() == 2);
}

#[test]
fn loop_eval_commutator() {
    assert_eq!(stdout(&["loop-eval", "--commutative", "[L(2,0),L(1,0)]@(3,0)"]), "(3,3)\n");
    assert_eq!(stdout(&["loop-eval", "((1,2)*(3,4))"]), "(4,6)\n");
    assert_eq!(stdout(&["loop-eval", "((1,2)\\((1,2)*(3,4)))"]), "(3,4)\n");
}

#[test]
fn higman_delta_shape() {
    let json = stdout(&["higman-delta", "--target", "abelian:2", "x2*x1"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["alpha"], serde_json::json!(["1", "1"]));
    assert_eq!(v["psi"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_suite_and_determinism() {
    let a = stdout(&["verify", "--suite", "prop5", "--json"]);
    let b = stdout(&["verify", "--suite", "prop5", "--json"]);
    assert_eq!(a, b, "verify output must be byte-identical across runs");
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v[0]["suite"], "prop5");
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn exit_codes() {
    // usage errors exit 2
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    // resource cap exits 3
    let out = bin()
        .args(["magnus", "--degree", "3", "x1*x2"])
        .env("LOOPMAGNUS_MAX_TERMS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn scan_small() {
    let json = stdout(&["scan", "--degree", "4", "--leaves", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["collisions"].as_array().unwrap().len(), 0);
}
