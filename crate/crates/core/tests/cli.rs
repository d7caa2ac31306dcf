use std::process::{Command, Output};

use serde_json::Value;

fn jdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

#[test]
fn bracket_table_succeeds_with_schema() {
    let out = jdisc(&["bracket-table", "--scenario", "counterexample-r6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "jdisc-report/1");
    assert_eq!(r["command"], "bracket-table");
    assert!(r["result"].is_object() || r["result"].is_array());
    assert!(!has_float(&r));
}

#[test]
fn levi_reports_the_kernel() {
    let out = jdisc(&["levi", "--scenario", "counterexample-r6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(
        r["result"]["levi_at_origin"]["L3"],
        serde_json::json!({"re": "1/1", "im": "0/1"})
    );
    assert_eq!(
        r["result"]["levi_at_origin"]["L5"],
        serde_json::json!({"re": "0/1", "im": "0/1"})
    );
    assert_eq!(
        r["result"]["kernel_in_frame"],
        serde_json::json!([{"L5": "1/1"}])
    );
}

#[test]
fn obstruction_exits_with_one() {
    let out = jdisc(&[
        "freeman",
        "--scenario",
        "counterexample-r6",
        "--x",
        "L5",
        "--mode",
        "subbundle",
        "--span",
        "L5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let ob = &report(&out)["result"]["pipeline"]["obstruction"];
    assert_eq!(ob["k"], 1);
    assert_eq!(ob["verified"], true);
    let v: Vec<&str> = ob["vector"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(v, ["0/1", "0/1", "1/1", "0/1", "0/1", "0/1"]);
}

#[test]
fn certified_pipeline_exits_with_zero() {
    let out = jdisc(&[
        "freeman",
        "--scenario",
        "ex1-r8",
        "--x",
        "L7",
        "--k",
        "4",
        "--order",
        "6",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(report(&out)["result"]["certified"], true);
}

#[test]
fn input_errors_exit_with_two() {
    let out = jdisc(&["levi", "--scenario", "no-such-scenario"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "input");
    assert!(r.get("result").is_none());

    let out = jdisc(&["freeman", "--scenario", "counterexample-r6", "--x", "L1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = jdisc(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn disc_reports_are_exact() {
    let out = jdisc(&[
        "disc",
        "--scenario",
        "counterexample-r6",
        "--x",
        "L5",
        "--order",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(!has_float(&r));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["bracket-table", "--scenario", "ex2-r8"][..],
        &["levi", "--scenario", "ex1-r8"],
        &[
            "disc",
            "--scenario",
            "counterexample-r6",
            "--x",
            "L5",
            "--order",
            "4",
        ],
        &[
            "freeman",
            "--scenario",
            "counterexample-r6",
            "--x",
            "L5",
            "--mode",
            "subbundle",
            "--span",
            "L5",
        ],
    ] {
        let a = jdisc(args);
        let b = jdisc(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_flag_writes_the_report_file() {
    let dir = std::env::temp_dir().join(format!("jdisc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("levi.json");
    let out = jdisc(&[
        "levi",
        "--scenario",
        "counterexample-r6",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        written,
        report(&jdisc(&["levi", "--scenario", "counterexample-r6"]))
    );
    std::fs::remove_dir_all(&dir).ok();
}
