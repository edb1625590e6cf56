//! Black-box tests of the command-line interface: output shapes, exit codes,
//! the `example:` loader, and determinism of the JSON reports.

use std::io::Write;
use std::process::Command;

use kncover::builtin;
use kncover::Scenario;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_kncover"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: output.status.code().expect("exit code"),
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 stderr"),
    }
}

fn json_report(run: &Run) -> serde_json::Value {
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    serde_json::from_str(&run.stdout).expect("stdout is JSON")
}

fn scenario_file(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(content.as_bytes()).unwrap();
    file
}

#[test]
fn classify_reports_the_documented_components() {
    // theta = nonzero collapses the simple K3 cover to one degree-4 sheet.
    let out = run(&[
        "classify",
        "example:simple-k3",
        "--theta",
        "nonzero",
        "--format",
        "json",
    ]);
    let value = json_report(&out);
    assert_eq!(value["command"], "classify");
    assert_eq!(value["ok"], true);
    let components = value["report"]["components"].as_array().unwrap();
    assert_eq!(components.len(), 1);
    assert_eq!(components[0]["degree"], 4);

    // theta = zero keeps the two components.
    let out = run(&[
        "classify",
        "example:simple-k3",
        "--theta",
        "zero",
        "--format",
        "json",
    ]);
    let value = json_report(&out);
    assert_eq!(value["report"]["components"].as_array().unwrap().len(), 2);

    // The -1 fiber is also accepted on the flag.
    let out = run(&[
        "classify",
        "example:simple-k3",
        "--fiber",
        "-1",
        "--format",
        "json",
    ]);
    let value = json_report(&out);
    assert_eq!(value["report"]["sign"], "-1");
}

#[test]
fn h1_reports_dimension_zero_for_a_rep_without_generators() {
    let file = scenario_file(r#"{"kind": "monodromy", "rank": 2, "generators": []}"#);
    let out = run(&["h1", file.path().to_str().unwrap(), "--format", "json"]);
    let value = json_report(&out);
    assert_eq!(value["report"]["dimension"], 0);
    assert_eq!(value["report"]["truncated"], false);
}

#[test]
fn emitted_examples_reload_and_match_the_builtins() {
    for name in builtin::NAMES {
        let out = run(&["example", name]);
        assert_eq!(out.code, 0);
        let reparsed = Scenario::from_json(&out.stdout).unwrap();
        assert_eq!(reparsed, builtin::by_name(name).unwrap(), "{name}");

        // The emitted file passes validate end to end.
        let file = scenario_file(&out.stdout);
        let check = run_validate(file.path().to_str().unwrap());
        assert_eq!(check.code, 0, "validate {name}: {}", check.stderr);
    }
}

fn run_validate(path: &str) -> Run {
    run(&["validate", path])
}

#[test]
fn text_output_summarizes_instead_of_dumping_json() {
    let out = run(&["classify", "example:quartic-k3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("classify"), "{}", out.stdout);
    assert!(out.stdout.contains("degree 3"), "{}", out.stdout);
    assert!(serde_json::from_str::<serde_json::Value>(&out.stdout).is_err());
}

#[test]
fn classify_output_is_deterministic() {
    let first = run(&["classify", "example:quartic-k3", "--format", "json"]);
    let second = run(&["classify", "example:quartic-k3", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.code, 0);
}

#[test]
fn input_problems_exit_with_code_2() {
    // Missing file.
    let missing = run(&["validate", "/nonexistent/scenario.json"]);
    assert_eq!(missing.code, 2, "{}", missing.stderr);

    // Malformed JSON.
    let file = scenario_file("{");
    let bad = run(&["validate", file.path().to_str().unwrap()]);
    assert_eq!(bad.code, 2, "{}", bad.stderr);

    // Unknown builtin name.
    let unknown = run(&["example", "octic-k3"]);
    assert_eq!(unknown.code, 2, "{}", unknown.stderr);

    // Command/scenario kind mismatch.
    let mismatch = run(&["local-model", "example:simple-k3"]);
    assert_eq!(mismatch.code, 2, "{}", mismatch.stderr);

    // classify needs monodromy data; a local model has none.
    let no_monodromy = run(&["classify", "example:focus-focus"]);
    assert_eq!(no_monodromy.code, 2, "{}", no_monodromy.stderr);
}

#[test]
fn domain_failures_exit_with_code_1() {
    // Break the balancing of the quartic complex by doubling one kink.
    let Some(Scenario::Complex(mut scenario)) = builtin::by_name("quartic-k3") else {
        panic!("quartic-k3 is a complex scenario");
    };
    scenario.kinks.insert("e01".to_string(), 2);
    let json = Scenario::Complex(scenario).to_json();
    let file = scenario_file(&json);
    let out = run_validate(file.path().to_str().unwrap());
    assert_eq!(
        out.code, 1,
        "stdout: {}\nstderr: {}",
        out.stdout, out.stderr
    );
    assert!(out.stdout.contains("violation"), "{}", out.stdout);
}

#[test]
fn local_model_reports_the_focus_focus_invariants() {
    let out = run(&["local-model", "example:focus-focus", "--format", "json"]);
    let value = json_report(&out);
    let report = &value["report"];
    assert_eq!(report["consistent"], true);
    assert_eq!(report["monoid_generators"].as_array().unwrap().len(), 4);
    assert_eq!(report["monodromy_cone"]["is_standard"], true);
    assert_eq!(report["ghost"]["rank"], 2);
    assert_eq!(report["ghost"]["fiber_size"], 4);

    // A larger bound changes nothing for this model.
    let wide = run(&[
        "local-model",
        "example:focus-focus",
        "--bound",
        "6",
        "--format",
        "json",
    ]);
    let wide_value = json_report(&wide);
    assert_eq!(
        wide_value["report"]["monoid_generators"],
        value["report"]["monoid_generators"],
    );
}
