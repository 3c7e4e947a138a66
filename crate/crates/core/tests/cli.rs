use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_neural-ideals"))
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn invariants_of_two_neuron_ideal() {
    let f = file("x1*y2\ny1*x2\n");
    let o = run(&["invariants", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("pd: 1\n"));
    assert!(out.contains("reg: 3\n"));
    assert!(out.contains("linear resolution: no"));

    let o = run(&[
        "invariants",
        f.path().to_str().unwrap(),
        "--json",
        "--field",
        "q",
    ]);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["invariants"]["pd"], 1);
    assert_eq!(v["invariants"]["reg"], 3);
    assert_eq!(v["invariants"]["field"], "Rationals");
}

#[test]
fn betti_json_lists_fine_and_coarse() {
    let f = file("x1\ny1\n");
    let v = json(&run(&["betti", f.path().to_str().unwrap(), "--json"]));
    assert_eq!(v["schema"], 1);
    assert_eq!((v["pd"].as_u64(), v["reg"].as_u64()), (Some(1), Some(1)));
    let coarse = v["coarse"].as_array().unwrap();
    let at = |i: u64, j: u64| {
        coarse
            .iter()
            .find(|e| e["i"] == i && e["j"] == j)
            .map(|e| e["rank"].as_u64().unwrap())
    };
    assert_eq!(at(0, 1), Some(2));
    assert_eq!(at(1, 2), Some(1));
    assert_eq!(v["fine"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let pair = file("x1*y1*x2\n");
    let o = run(&["invariants", pair.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["invariants", pair.path().to_str().unwrap(), "--raw"]);
    assert!(o.status.success());

    let bad = file("x1*z2\n");
    assert_eq!(
        run(&["betti", bad.path().to_str().unwrap()]).status.code(),
        Some(2)
    );

    let missing = run(&["betti", "/nonexistent/ideal.txt"]);
    assert_eq!(missing.status.code(), Some(1));

    let unit = file("1\n");
    let o = run(&["invariants", unit.path().to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["verify", "--n", "3", "--no-random"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("counterexample [three-way-linearity]"));
}

#[test]
fn from_code_round_trips_through_ideal_parser() {
    let code = file("# two words\n00\n11\n");
    let o = run(&["from-code", code.path().to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text, "# neurons: 2\ny1*x2\nx1*y2\n");

    let ideal = file(&text);
    let v = json(&run(&[
        "invariants",
        ideal.path().to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(
        v["invariants"]["generators"],
        serde_json::json!(["y1*x2", "x1*y2"])
    );
}

#[test]
fn from_code_full_code_is_zero_ideal() {
    let code = file("0\n1\n");
    let o = run(&["from-code", code.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("# zero ideal"));
}

#[test]
fn polarize_pseudomonomials() {
    let f = file("x1*(1-x3)\n(1-x2)\nx1*(1-x2)*(1-x3)\n");
    let o = run(&["polarize", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "# neurons: 3\ny2\nx1*y3\n");
}

#[test]
fn family_check_and_parameter_validation() {
    let o = run(&["family", "prop32", "--n", "4", "--k", "3", "--check"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("# expected pd: 2"));
    assert!(out.contains("-> ok"));

    let v = json(&run(&[
        "family", "thm36", "--n", "3", "--k", "2", "--check", "--json",
    ]));
    assert_eq!(v["check_passed"], true);
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);

    assert_eq!(
        run(&["family", "prop33", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["family", "prop33", "--n", "3", "--k", "2", "--i", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["family", "prop34-pd", "--n", "2", "--i", "9"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn family_output_parses_back() {
    let o = run(&["family", "prop34-reg", "--n", "3", "--j", "5"]);
    let f = file(&stdout(&o));
    let v = json(&run(&["betti", f.path().to_str().unwrap(), "--json"]));
    assert_eq!(v["reg"], 5);
}

#[test]
fn check_linear_reports_both_criteria() {
    let f = file("x1*x2*x3\nx1*y2*x3\nx1*x2*y3\ny1*x2*y3\n");
    let v = json(&run(&[
        "check-linear",
        f.path().to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(v["linear_resolution"], "Linear");
    assert_eq!(v["recursive_containment"], false);
    assert_eq!(v["recursive_intersection"], true);
    assert_eq!(v["linear_quotients"].as_array().unwrap().len(), 4);

    let mixed = file("x1\ny1*x2\n");
    let v = json(&run(&[
        "check-linear",
        mixed.path().to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(v["linear_resolution"], "NotEquigenerated");
    assert!(v["recursive_containment"].is_null());
}

#[test]
fn verify_json_is_deterministic() {
    let args = [
        "verify", "--n", "2", "--json", "--mode", "sample", "--count", "40", "--seed", "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], 1);
    assert!(v.get("timings").is_none());
    assert_eq!(v["scope"]["mode"], "sample");

    let t = json(&run(&[
        "verify",
        "--n",
        "2",
        "--json",
        "--timings",
        "--no-random",
    ]));
    assert!(t["timings"].is_object());
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["betti", "-", "--json"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x1*x2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(json(&o)["reg"], 2);
}
