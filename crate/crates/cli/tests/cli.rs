use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.display().to_string()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("quiverkit-{}-{name}", std::process::id()))
}

#[test]
fn jacobian_exit_codes() {
    let o = run(&["jacobian", &fixture("three_cycle.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Finite, dim 6");
    let o = run(&["jacobian", &fixture("a3_qp.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Finite, dim 6");
    assert_eq!(run(&["jacobian", &fixture("loop.json")]).status.code(), Some(2));
    let o = run(&["--dmax", "3", "jacobian", &fixture("three_cycle.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("Inconclusive"));
    let o = run(&["jacobian", "--json", &fixture("three_cycle.json")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "finite");
    assert_eq!(v["dim"], 6);
}

#[test]
fn ginzburg_check_detects_a_corrupted_differential() {
    let o = run(&["ginzburg-check", &fixture("three_cycle.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d^2 = 0: OK"));
    assert!(stdout(&o).contains("d(a*) = b*c"));
    assert_eq!(run(&["ginzburg-check", &fixture("corrupted_differential.json")]).status.code(), Some(4));
    let o = run(&["ginzburg-check", &fixture("a3_qp.json")]);
    assert!(stdout(&o).contains("d(a*) = 0"));
    assert!(stdout(&o).contains("d(b*) = 0"));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(run(&["quiver", "validate", &fixture("bad_quiver.json")]).status.code(), Some(1));
    assert_eq!(run(&["quiver", "validate", &fixture("does_not_exist.json")]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--dmax", "0", "jacobian", &fixture("loop.json")]).status.code(), Some(1));
    let o = run(&["pipeline", &fixture("a3.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pipeline"));
}

#[test]
fn quiver_subcommands() {
    let o = run(&["quiver", "validate", &fixture("a3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid: 3 vertices, 2 arrows"));
    let op: Value = serde_json::from_slice(&run(&["quiver", "op", &fixture("a3.json")]).stdout).unwrap();
    assert_eq!(op["arrows"][0]["source"], "2");
    let double: Value = serde_json::from_slice(&run(&["quiver", "double", &fixture("a3.json")]).stdout).unwrap();
    assert_eq!(double["arrows"].as_array().unwrap().len(), 4);
}

#[test]
fn algebra_subcommands() {
    let f = fixture("a3_radical_square_zero.json");
    assert_eq!(stdout(&run(&["algebra", "gldim", &f])).trim(), "global dimension 2");
    let ext: Value = serde_json::from_slice(&run(&["--json", "algebra", "ext2", &f]).stdout).unwrap();
    assert_eq!(ext["total"], 1);
    let tor: Value = serde_json::from_slice(&run(&["--json", "algebra", "tor2", &f]).stdout).unwrap();
    assert_eq!(tor["agree"], true);
    let tilde: Value = serde_json::from_slice(&run(&["algebra", "tilde-quiver", &f]).stdout).unwrap();
    assert_eq!(tilde["arrows"].as_array().unwrap().len(), 3);
}

#[test]
fn knit_and_coxeter() {
    let o = run(&["--json", "knit", "--depth", "2", &fixture("concealed_quiver.json")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
    let o = run(&["knit", "--postprojective", "--depth", "10", &fixture("a3.json")]);
    assert!(stdout(&o).contains("6 vertices"));
    assert!(stdout(&o).contains("complete: true"));
    let q = fixture("concealed_quiver.json");
    assert_eq!(stdout(&run(&["coxeter", "reduced", &q, "232132"])).trim(), "reduced");
    assert_eq!(stdout(&run(&["coxeter", "reduced", &q, "11"])).trim(), "not reduced");
    assert_eq!(stdout(&run(&["coxeter", "length", &q, "1221"])).trim(), "0");
    assert_eq!(run(&["coxeter", "length", &q, "14"]).status.code(), Some(1));
}

#[test]
fn pipeline_report_for_the_bundled_example() {
    let o = run(&["pipeline", &data("concealed_example.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys[..7], ["M", "B", "phi", "word", "F", "sequence_checks", "tilde_dims"]);
    assert_eq!(v["word"], "232132");
    assert!(v["sequence_checks"].as_array().unwrap().iter().all(|s| s["exact"] == true));
    let again = run(&["pipeline", &data("concealed_example.json")]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn pipeline_initial_setting() {
    let o = run(&["pipeline", &fixture("a4_initial.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"gls_hat_formula"));
    assert!(names.contains(&"gls_birs_formula"));
}

#[test]
fn reproduce_example_matches_and_detects_perturbation() {
    let o = run(&["reproduce-example"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(data("golden.json")).unwrap()).unwrap();
    let mut bad = golden.clone();
    bad["concealed"]["F"][5][1] = Value::from(14);
    let path = temp_path("golden.json");
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let o = run(&["reproduce-example", "--golden", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).contains("concealed.F[5][1]"));
    let o = run(&["reproduce-example", "--json", "--golden", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    let d: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(d["ok"], false);
    assert_eq!(d["mismatches"][0]["key"], "concealed.F[5][1]");
    assert_eq!(d["mismatches"][0]["expected"], 14);
    assert_eq!(d["mismatches"][0]["actual"], 13);
    std::fs::remove_file(&path).ok();
}

#[test]
fn out_flag_writes_a_file() {
    let path = temp_path("out.txt");
    let o = run(&["--out", path.to_str().unwrap(), "jacobian", &fixture("three_cycle.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "Finite, dim 6");
    std::fs::remove_file(&path).ok();
}
