use std::process::{Command, Output};

fn jk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jk")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn projective_degree_zero_prints_one() {
    let o = jk(&["projective", "--n", "3", "--d", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn grassmannian_json_is_normalized() {
    let o = jk(&["grassmannian", "--r", "2", "--n", "4", "--d", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["space"], "gr:2,4");
    assert_eq!(v["degree"], serde_json::json!([1]));
    assert!(v["value"]["num"].is_array() && v["value"]["den"].is_array());
}

#[test]
fn flag_text_stays_factored() {
    let o = jk(&["flag", "--dims", "1,2", "--n", "3", "--d", "1,0", "--form", "canonical"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1 - q*L[1,1]^-1*L[2,2])^-1*(1 - q*L[1,1]^-1*L[2,1])^-1\n");
}

#[test]
fn chi_examples() {
    assert_eq!(stdout(&jk(&["chi", "--space", "gr:1,2", "--d", "0", "--order", "3"])), "1\n");
    // Two fixed points on P^1: Σ (a+1)^2 q^a.
    assert_eq!(stdout(&jk(&["chi", "--space", "gr:1,2", "--d", "1", "--order", "2"])), "1 + 4*q + 9*q^2\n");
    let o = jk(&["chi", "--space", "gr:2,4", "--d", "0", "--gamma", "detSdual", "--order", "0"]);
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn verify_exit_codes() {
    let pass = jk(&["verify", "abelian-nonabelian", "--r", "2", "--n", "3", "--max-d", "2", "--mode", "unit-tolerant"]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(stdout(&pass).ends_with("verdict: pass\n"));
    assert_eq!(jk(&["verify", "reduction", "--r", "2", "--n", "3", "--max-d", "2"]).status.code(), Some(0));
    let strict = jk(&["verify", "abelian-nonabelian", "--r", "2", "--n", "3", "--d", "1", "--mode", "strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(jk(&["grassmannian", "--r", "3", "--n", "2", "--d", "1"]).status.code(), Some(2));
    assert_eq!(jk(&["grassmannian", "--r", "1"]).status.code(), Some(2));
    assert_eq!(jk(&["chi", "--space", "nope", "--d", "1"]).status.code(), Some(2));
}

#[test]
fn q_pole_is_an_internal_error() {
    // gamma = 1/q puts a pole at q = 0 into the series.
    let o = jk(&["chi", "--space", "gr:1,2", "--d", "1", "--gamma", "(1)/(q)", "--order", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn timing_is_opt_in() {
    let args = ["verify", "--format", "json", "multiplicativity", "--n", "2", "--r", "1", "--cap", "1"];
    let v: serde_json::Value = serde_json::from_slice(&jk(&args).stdout).unwrap();
    assert!(v["millis"].is_null());
    let mut timed = args.to_vec();
    timed.push("--timing");
    let v: serde_json::Value = serde_json::from_slice(&jk(&timed).stdout).unwrap();
    assert!(v["millis"].is_u64());
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("jk-out-{}", std::process::id()));
    let o = jk(&["projective", "--n", "2", "--d", "1", "--output", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&dir).unwrap(), "(1 - q*L[1,1]^-1)^-2\n");
    let _ = std::fs::remove_file(dir);
}
