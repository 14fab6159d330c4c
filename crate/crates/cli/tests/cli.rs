use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_onecircuit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    v.sort();
    v
}

/// Writes `text` to a fresh file under the target tmp dir.
fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CONSTANT_BRANCH: &str = "kind = \"circuit\"\nkappa = 1\ncircuit = [\"2\"]\n\n[[branch]]\npoly = [\"3\"]\n";

#[test]
fn verify_passes_on_every_fixture() {
    let files = fixtures();
    assert_eq!(files.len(), 50);
    for f in &files {
        let o = run(&["--format", "json", "verify", s(f)]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(o.status.code(), Some(0), "{}: {v:#}", f.display());
        assert_eq!(v["failed"], 0);
        assert!(v["identities"].as_array().unwrap().iter().all(|i| i["status"] == "PASS"));
    }
}

#[test]
fn fixtures_cover_every_kind() {
    let mut kinds = std::collections::BTreeMap::new();
    for f in fixtures() {
        let v = json(&["inspect", s(&f)]);
        *kinds.entry(v["kind"].as_str().unwrap().to_string()).or_insert(0) += 1;
    }
    assert!(kinds["circuit"] >= 20 && kinds["shift"] >= 5 && kinds["tree"] >= 5, "{kinds:?}");
}

#[test]
fn classify_constant_branch() {
    let f = temp_file("constant.toml", CONSTANT_BRANCH);
    let v = json(&["classify", s(&f), "--m-max", "4"]);
    assert_eq!(v["isometry"]["least_order"], 2);
    assert_eq!(v["isometry"]["holds"], serde_json::json!([false, true, true, true]));
    assert_eq!(v["analytic"], true);
    assert_eq!(v["kernel_condition"], false);
    assert_eq!(v["ranginf"]["dimension"], 0);
}

#[test]
fn complete_circuit_from_measures() {
    let v = json(&["complete-circuit", "--circuit", "2,3", "--eta", "1"]);
    assert_eq!(v["result"], "solved");
    let b = &v["space"]["branches"][0];
    assert_eq!(b["poly"]["coefficients"], serde_json::json!(["2"]));
    assert_eq!(b["q"], "1");
    assert!(b["prefix"].as_array().unwrap().is_empty());
}

#[test]
fn complete_shift_cubic_has_no_solution() {
    // prefix of squared weights from w(x) = -(x - 4)^3 / 64
    let v = json(&["complete-shift", "--prefix", "27/64,8/27,1/8", "--m", "4"]);
    assert_eq!(v["result"], "no solution");
    assert_eq!(v["obstruction"]["kind"], "not_positive");
    assert_eq!(v["obstruction"]["n"], 4);
    assert_eq!(v["obstruction"]["value"], "0");
}

#[test]
fn complete_shift_family_member_is_strict() {
    let v = json(&["complete-shift", "--prefix", "1,2", "--m", "5", "--t", "20"]);
    assert_eq!(v["result"], "family");
    assert_eq!(v["member"]["strict"], true);
    assert_eq!(v["member"]["holds"], serde_json::json!([false, false, false, false, true]));
    let o = run(&["complete-shift", "--prefix", "1,2", "--m", "5", "--t", "-3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn complete_branch_round_trips_through_verify() {
    let v = json(&["complete-branch", "--prefix", "2,5,1", "--m", "5"]);
    assert_eq!(v["result"], "solved");
    let f = temp_file("branch.toml", v["file"].as_str().unwrap());
    let c = json(&["classify", s(&f), "--m-max", "5"]);
    assert_eq!(c["isometry"]["holds"][4], true);
    assert_eq!(run(&["verify", s(&f)]).status.code(), Some(0));
}

#[test]
fn dual_reports_measure_for_kappa_one() {
    let f = temp_file("dual.toml", CONSTANT_BRANCH);
    let v = json(&["dual", s(&f), "--n", "4"]);
    // alpha^2 = mu1 / (mu1 + c) = 2/5
    assert_eq!(v["moments_at_x_1"], serde_json::json!(["1", "2/5", "38/125", "902/3125", "22358/78125"]));
    let atoms = v["representing_measure"].as_array().unwrap();
    assert_eq!(atoms[0]["location"], "4/25");
    assert_eq!(atoms[1]["location"], "1");
    assert_eq!(v["stieltjes"], true);
    assert_eq!(v["delta_regular"], true);
}

#[test]
fn input_errors_exit_one() {
    let zero = temp_file("zero.toml", &CONSTANT_BRANCH.replace("[\"2\"]", "[\"0\"]"));
    let o = run(&["classify", s(&zero)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("circuit"));

    let big_q = temp_file("bigq.toml", &CONSTANT_BRANCH.replace("poly", "q = \"3/2\"\npoly"));
    let o = run(&["classify", s(&big_q)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("branch[1].q"));

    let broken = temp_file("broken.toml", "kind = \"circuit\"\nkappa = [\n");
    let o = run(&["inspect", s(&broken)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    assert_eq!(run(&["classify", "/nonexistent/space.toml"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["complete-shift", "--prefix", "1,x", "--m", "3"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    for f in fixtures().iter().step_by(7) {
        for cmd in ["classify", "inspect", "verify"] {
            let a = run(&[cmd, s(f)]);
            let b = run(&[cmd, s(f)]);
            assert_eq!(a.stdout, b.stdout, "{cmd} {}", f.display());
        }
    }
    let args = ["complete-circuit", "--kappa", "3", "--m", "2", "--branch", "1", "--branch", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn fixtures_are_canonical() {
    for f in fixtures() {
        let canonical = stdout(&run(&["inspect", "--canonical", s(&f)]));
        assert_eq!(canonical, std::fs::read_to_string(&f).unwrap(), "{}", f.display());
        let again = temp_file("canonical.toml", &canonical);
        assert_eq!(stdout(&run(&["inspect", "--canonical", s(&again)])), canonical);
        assert_eq!(
            stdout(&run(&["inspect", s(&f)])).replace(s(&f), ""),
            stdout(&run(&["inspect", s(&again)])).replace(s(&again), "")
        );
    }
}

/// Every scalar leaf of the JSON report appears on some text line.
fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.extend(s.lines().map(str::to_string)),
        Value::Null => out.push("none".into()),
        other => out.push(other.to_string()),
    }
}

#[test]
fn json_mirrors_text() {
    let f = temp_file("mirror.toml", CONSTANT_BRANCH);
    for args in [
        vec!["classify", s(&f)],
        vec!["dual", s(&f)],
        vec!["complete-shift", "--prefix", "1,2", "--m", "4"],
    ] {
        let text = stdout(&run(&args));
        let mut all = vec!["--format", "json"];
        all.extend_from_slice(&args);
        let v: Value = serde_json::from_slice(&run(&all).stdout).unwrap();
        for key in v.as_object().unwrap().keys() {
            assert!(text.contains(&format!("{key}:")), "{key} missing from text");
        }
        let mut vals = Vec::new();
        leaves(&v, &mut vals);
        for leaf in vals {
            assert!(text.contains(&leaf), "{leaf} missing from text");
        }
    }
}

#[test]
fn decimals_are_labelled() {
    let v = json(&["--decimals", "complete-circuit", "--circuit", "1,2", "--eta", "2"]);
    let c = &v["space"]["circuit"][0];
    assert!(c["exact"].is_string() && c["approx"].as_str().unwrap().contains('.'));
    let text = stdout(&run(&["--decimals", "complete-circuit", "--circuit", "1,3", "--eta", "1"]));
    assert!(text.contains("(approx 3.00000000000000000000)"), "{text}");
}
