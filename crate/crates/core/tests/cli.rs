use std::path::{Path, PathBuf};
use std::process::Command;

use ciql::cli::{read_run_log, run};
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn ciql(log: &Path, args: &[&str]) -> Run {
    let log = log.to_string_lossy().into_owned();
    let argv = ["ciql", "--log", log.as_str()].into_iter().chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn scratch() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("runs.jsonl");
    (dir, log)
}

fn error_json(r: &Run) -> Value {
    serde_json::from_str(r.err.lines().last().expect("an error line")).unwrap()
}

#[test]
fn classify_four_collinear() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["classify", "--input", &fixture("four_collinear.json")]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["independent"], false);
    assert_eq!(v["fourCollinear"], true);
}

#[test]
fn porteous_with_psi_zeroed() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["taut", "porteous", "--n", "8", "--a", "4", "--b", "1", "--set", "psi=0"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.trim(), "lambda1^4 - 3*lambda1^2*lambda2 + lambda2^2 + 2*lambda1*lambda3 - lambda4");
}

#[test]
fn taut_json_has_exact_coefficients() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["taut", "expand", "eta1 + 1/3*psi1^2", "--relations", "--json"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["expr"], "1/3*psi1^2 - 1/5*lambda1 + psi1");
    assert_eq!(v["terms"]["psi1^2"], "1/3");
    assert_eq!(v["terms"]["psi1"], 1);
}

#[test]
fn excluded_characteristic_is_a_usage_error() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["verify", "--claim", "prop22-n8", "--p", "5"]);
    assert_eq!(r.code, 2);
    assert_eq!(error_json(&r)["error"], "usage");
    assert!(r.out.is_empty());
    assert!(!log.exists(), "usage errors run no work and log nothing");
}

#[test]
fn usage_errors() {
    let (_d, log) = scratch();
    for args in [
        &["verify"][..],
        &["verify", "--claim", "nope"],
        &["classify"],
        &["classify", "--input", "x", "--bogus"],
        &["taut", "porteous", "--n", "8"],
        &["taut", "todd", "--sign", "2"],
        &["sample-curve", "--p", "37"],
        &["sample-curve", "--p", "12"],
        &["taut", "expand", "psi1 +"],
        &["taut", "expand", "psi1", "--set", "psi1"],
    ] {
        let r = ciql(&log, args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.err);
        error_json(&r);
    }
}

#[test]
fn large_modulus_warns_on_stderr() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["sample-curve", "--p", "37", "--allow-large-p", "--seed", "1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let warning: Value = serde_json::from_str(r.err.lines().next().unwrap()).unwrap();
    assert!(warning["warning"].is_string());
}

#[test]
fn precondition_and_io_errors_exit_3() {
    let (dir, log) = scratch();
    let r = ciql(&log, &["classify", "--input", &dir.path().join("missing.json").to_string_lossy()]);
    assert_eq!(r.code, 3);
    assert_eq!(error_json(&r)["error"], "io");

    let r = ciql(&log, &["recover-eighth", "--input", &fixture("four_collinear.json")]);
    assert_eq!(r.code, 3);
    let e = error_json(&r);
    assert_eq!(e["error"], "dependent");
    assert_eq!(e["details"]["classification"]["fourCollinear"], true);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"characteristic": 31, "ambient_dim": 3, "points": [[0,0,0,0]]}"#).unwrap();
    assert_eq!(ciql(&log, &["classify", "--input", &bad.to_string_lossy()]).code, 3);

    let r = ciql(&log, &["taut", "porteous", "--n", "2", "--a", "4", "--b", "2"]);
    assert_eq!(r.code, 3, "a*b above the truncation");
}

#[test]
fn recover_eighth_and_quadrics_through() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["recover-eighth", "--input", &fixture("seven_general.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["point"].as_array().unwrap().len(), 4);

    let r = ciql(&log, &["quadrics-through", "--input", &fixture("seven_rational.json")]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["characteristic"], 0);
}

#[test]
fn verify_small_sweep_and_report_shape() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["verify", "--claim", "prop22-n8", "--p", "13", "--curves", "2", "--subset-budget", "2000"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["claimId", "p", "seed", "trials", "passes", "skipped", "failures", "runtimeMillis"]);
    assert_eq!(v["trials"], v["passes"]);
    assert_eq!(v["failures"], Value::Array(vec![]));
}

#[test]
fn output_flag_writes_file_and_fixtures_are_untouched() {
    let (dir, log) = scratch();
    let input = fixture("seven_general.json");
    let before = std::fs::read(&input).unwrap();
    let out = dir.path().join("class.json");
    let r = ciql(&log, &["classify", "--input", &input, "--output", &out.to_string_lossy()]);
    assert_eq!(r.code, 0);
    assert!(r.out.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["independent"], true);
    assert_eq!(std::fs::read(&input).unwrap(), before);
}

#[test]
fn run_log_appends_in_order_past_garbage() {
    let (_d, log) = scratch();
    std::fs::write(&log, "this is not json\n").unwrap();
    ciql(&log, &["taut", "todd", "--order", "4"]);
    ciql(&log, &["taut", "relations", "--index", "2"]);
    let (records, bad) = read_run_log(&log).unwrap();
    assert_eq!(bad, vec![1]);
    let cmds: Vec<&str> = records.iter().map(|(_, r)| r.command[3].as_str()).collect();
    assert_eq!(cmds, ["todd", "relations"]);
    assert_eq!(records[0].1.outcome, "pass");
}

#[test]
fn no_log_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let env_log = dir.path().join("env.jsonl");
    let bin = env!("CARGO_BIN_EXE_ciql");
    let status = Command::new(bin)
        .args(["taut", "todd", "--order", "2"])
        .env("CIQL_LOG", &env_log)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&status.stdout).trim(), "1 - 1/2*K + 1/12*K^2");
    assert_eq!(read_run_log(&env_log).unwrap().0.len(), 1);

    let silent = dir.path().join("silent.jsonl");
    let status = Command::new(bin)
        .args(["--no-log", "--log", &silent.to_string_lossy(), "taut", "todd"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(!silent.exists());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ciql");
    let code = |args: &[&str]| Command::new(bin).arg("--no-log").args(args).output().unwrap().status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["verify", "--claim", "prop22-n7", "--p", "3"]), Some(2));
    assert_eq!(code(&["recover-eighth", "--input", &fixture("four_collinear.json")]), Some(3));
    assert_eq!(code(&["verify", "--claim", "lemma31", "--p", "7", "--trials", "50"]), Some(0));
}

#[test]
fn help_documents_sweep_defaults() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["ciql", "--help"], &mut out, &mut err), 0);
    let help = String::from_utf8(out).unwrap();
    assert!(help.contains("--p 31 --curves 20 --subset-budget 200000"));
}

#[test]
fn emitted_json_has_no_floats() {
    fn no_floats(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_i64() || n.is_u64(),
            Value::Array(a) => a.iter().all(no_floats),
            Value::Object(o) => o.values().all(no_floats),
            _ => true,
        }
    }
    let (_d, log) = scratch();
    for args in [
        &["taut", "grr", "--k", "3", "--g", "4", "--json"][..],
        &["taut", "todd", "--order", "8", "--json"],
        &["sample-curve", "--p", "13", "--seed", "5"],
        &["quadrics-through", "--input", &fixture("seven_rational.json")],
    ] {
        let r = ciql(&log, args);
        assert_eq!(r.code, 0);
        assert!(no_floats(&serde_json::from_str(&r.out).unwrap()), "{args:?}");
    }
}

#[test]
fn default_prop22_n7_sweep_is_clean() {
    let (_d, log) = scratch();
    let r = ciql(&log, &["verify", "--claim", "prop22-n7", "--p", "31", "--seed", "7", "--curves", "20"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["failures"], Value::Array(vec![]));
    assert_eq!(v["trials"], v["passes"]);
}
