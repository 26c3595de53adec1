use std::process::{Command, Output};

use serde_json::Value;

fn hessloci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hessloci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn body(path: &std::path::Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn fermat_hessian_polynomial() {
    let o = hessloci(&["hesspoly", "--nvars", "3", "--f", "x0^3+x1^3+x2^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "216*x0*x1*x2");
}

#[test]
fn quartic_derivative_certificates() {
    let o = hessloci(&["thmd", "--nvars", "3", "--d", "4", "--f", "x0^4+x1^4+x2^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("9 membership certificates"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(hessloci(&["hesspoly", "--f", "x0^3+"]).status.code(), Some(2));
    assert_eq!(hessloci(&["hesspoly", "--f", "x0^3+x1^2"]).status.code(), Some(2));
    assert_eq!(hessloci(&["thmd", "--nvars", "2", "--f", "x0^4+x1^4+x2^4"]).status.code(), Some(2));
    assert_eq!(hessloci(&["thmd", "--d", "3", "--f", "x0^4+x1^4"]).status.code(), Some(2));
    assert_eq!(hessloci(&["socle", "--f", "x0*x1*x2 + x3^3"]).status.code(), Some(2));
    assert_eq!(hessloci(&["verify-paper", "--check", "no-such-check"]).status.code(), Some(2));
    assert_eq!(hessloci(&["hesspoly", "--field", "fp:9", "--f", "x0^3"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    // the Fermat cubic has rank 3 at [1:1:1]
    let o = hessloci(&["in-dk", "--f", "x0^3+x1^3+x2^3", "--point", "[1:1:1]", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = hessloci(&["in-dk", "--f", "x0^3+x1^3+x2^3", "--point", "[1:0:0]", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn split_block_lies_in_the_stratum() {
    let o = hessloci(&["space-in-dk", "--f", "x0^3+x1^3+x2^3+x3^3", "--cut", "x2, x3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("yes"));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = hessloci(&[
            "strata", "enum", "--f", "x0^3+x1^3+x2^3", "--stratum", "2", "--prime", "31", "--mode", "sample",
            "--trials", "300", "--seed", "5", "--json", p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (va, vb) = (body(&a), body(&b));
    assert_eq!(va, vb);
    assert_eq!(va["schema_version"], 1);
    assert_eq!(va["seed"], 5);
    assert_eq!(va["checks"][0]["detail"]["sampling"]["trials"], 300);
}

#[test]
fn verify_paper_single_check_to_stdout() {
    let o = hessloci(&["verify-paper", "--seed", "7", "--check", "c10-rank-obstruction", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert!(v["timing"]["wall_time_ms"].is_u64());
}

#[test]
fn reconstruct_from_tensor_file() {
    let f = hessloci::families::gen_waring_normal(
        hessloci::Field::Rational,
        &hessloci::families::scalars(hessloci::Field::Rational, &[1, 2, 1, 1, 3]),
    )
    .unwrap();
    let t = hessloci::reconstruct::tensor_of(f.poly()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, serde_json::to_string(&t.to_json()).unwrap()).unwrap();
    let o = hessloci(&["reconstruct", "--tensor", path.to_str().unwrap(), "--a", "1,2,1,1,3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lambda = 6"), "{out}");
    assert!(out.contains(&format!("g = {}", f.poly().to_text())), "{out}");
    // relations fail for a normal vector that is not a multiple of a
    let o = hessloci(&["reconstruct", "--tensor", path.to_str().unwrap(), "--a", "1,2,1,1,4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn step2_minor_for_unit_parameters() {
    let o = hessloci(&["family", "step2", "--alpha", "1,1,1,1,1", "--lambda", "1", "--a", "1,1,1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("minor 24 (expected 24)"));
}

#[test]
fn hessians_of_proportional_forms() {
    let o = hessloci(&["hessian-equal", "--f", "x0^3+x1^3+x2^3", "--g", "2*x0^3+2*x1^3+2*x2^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equal up to scalar 8");
}
