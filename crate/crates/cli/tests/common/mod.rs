#![allow(dead_code)]

use std::process::Command;

use serde_json::Value;

pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn spinvec(args: &[&str]) -> Output {
    spinvec_env(args, &[])
}

pub fn spinvec_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spinvec"));
    cmd.args(args).env_remove("SPINVEC_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spinvec binary runs");
    Output {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().unwrap_or(-1),
    }
}

pub fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = spinvec(&full);
    let value = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: invalid JSON ({e}): {}{}", out.stdout, out.stderr));
    (value, out.code)
}

pub fn schema() -> Value {
    let text = include_str!("../../schema/spinvec-report-1.schema.json");
    serde_json::from_str(text).expect("schema parses")
}

pub fn validator() -> jsonschema::Validator {
    jsonschema::validator_for(&schema()).expect("schema compiles")
}

/// Schema violations of `doc`, one string per error.
pub fn violations(validator: &jsonschema::Validator, doc: &Value) -> Vec<String> {
    validator
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect()
}

/// Command lines covering every subcommand over a spread of valid inputs.
pub fn valid_invocations() -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for tj in 0..=6i32 {
        for tm in (-tj..=tj).step_by(2) {
            out.push(vec![
                "single".into(),
                "--twice-j".into(),
                tj.to_string(),
                "--twice-m".into(),
                tm.to_string(),
            ]);
        }
    }
    for n in 1..=4usize {
        for tj in (n % 2..=n).step_by(2) {
            for tm in (-(tj as i32)..=tj as i32).step_by(2) {
                out.push(vec![
                    "couple".into(),
                    "--n".into(),
                    n.to_string(),
                    "--twice-j".into(),
                    tj.to_string(),
                    "--twice-m".into(),
                    tm.to_string(),
                ]);
            }
        }
    }
    let words = |s: &str| s.split_whitespace().map(str::to_string).collect::<Vec<_>>();
    out.push(words("couple --n 4 --j 0 --m 0 --path 1,0,1,0"));
    out.push(words("couple --n 3 --j 1/2 --m 1/2 --sample 2000"));
    out.push(words("couple --n 6 --j 3 --m 3"));
    out.push(words("sample --n 1 --j 1/2 --m 1/2 --samples 2000"));
    out.push(words("sample --n 2 --j 0 --m 0 --axis y --samples 2000 --seed 9"));
    out.push(words("sample --n 5 --j 3/2 --m -1/2 --samples 2000"));
    out.push(words("paper-table"));
    out.push(words("paper-table --tolerance 1e-30"));
    out
}

/// Inputs violating the quantum-number constraints.
pub fn invalid_invocations() -> Vec<Vec<&'static str>> {
    vec![
        vec!["single", "--j", "1/2", "--m", "3/2"],
        vec!["single", "--j", "1", "--m", "-2"],
        vec!["single", "--j", "1/2", "--m", "0"],
        vec!["single", "--twice-j", "-1", "--twice-m", "1"],
        vec!["single", "--j", "1/3", "--m", "0"],
        vec!["couple", "--n", "2", "--j", "2", "--m", "0"],
        vec!["couple", "--n", "2", "--j", "1", "--m", "2"],
        vec!["couple", "--n", "3", "--j", "1", "--m", "0"],
        vec!["couple", "--n", "4", "--j", "0", "--m", "0", "--path", "1,2,3,2"],
        vec!["sample", "--n", "2", "--j", "1/2", "--m", "1/2"],
    ]
}
