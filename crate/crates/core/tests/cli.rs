use std::process::{Command, Output};

use serde_json::Value;

fn sdwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdwave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn records(v: &Value) -> &Vec<Value> {
    v["records"].as_array().expect("records array")
}

#[test]
fn symbols_default_passes() {
    let out = sdwave(&["symbols", "--json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let recs = records(&v);
    assert_eq!(recs.len(), 3);
    assert!(recs.iter().all(|r| r["status"] == "pass"));
    assert!(recs
        .iter()
        .all(|r| r["anchor"].is_string() && r["provenance"].is_string()));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["symbols", "--dim", "4"][..],
        &["symbols", "--tmin", "0.5"],
        &["symbols", "--resolution", "100"],
        &["symbols", "--u0", "{\"kind\": \"nope\"}"],
        &["symbols", "--u1", "/no/such/file.json"],
        &["symbols", "--tpoints", "1"],
        &["frobnicate"],
    ] {
        let out = sdwave(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn csv_header() {
    let out = sdwave(&["rates", "--format", "csv", "--only", "little-o"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value,fit_slope,anchor"));
    assert!(lines.count() >= 14);
}

#[test]
fn violated_condition_is_not_applicable() {
    let out = sdwave(&["rates", "--dim", "1", "--gamma", "0.4", "--only", "Thm 3.1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rate = records(&v)
        .iter()
        .find(|r| r["id"] == "rates.e1-rate")
        .unwrap();
    assert_eq!(rate["status"], "not-applicable");
    assert_eq!(rate["note"], "condition (3.1) violated");
}

#[test]
fn stated_slope_is_recorded() {
    let out = sdwave(&["rates", "--only", "rates.e1"]);
    let v = json(&out);
    let rate = records(&v)
        .iter()
        .find(|r| r["id"] == "rates.e1-rate")
        .unwrap();
    assert_eq!(rate["anchor"], "Thm 3.1 (3.2)");
    assert_eq!(rate["expected"], -0.25);
    assert_eq!(rate["tolerance"], 0.05);
    assert!(rate["fit_slope"].is_f64());
}

#[test]
fn only_filter_selects_matching_records() {
    let out = sdwave(&["report", "--only", "Lemma 6.3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ids: Vec<&str> = records(&v)
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "bounds.growth-3d.bracket",
            "bounds.growth-3d.limit",
            "quadrature.richardson.growth"
        ]
    );
    assert!(records(&v).iter().all(|r| r["anchor"] == "Lemma 6.3 (6.3)"));
}

#[test]
fn case_split_records() {
    let out = sdwave(&["bounds", "--dim", "1", "--only", "case-split"]);
    let v = json(&out);
    let find = |id: &str| records(&v).iter().find(|r| r["id"] == id).cloned().unwrap();
    let first = find("bounds.case-split.first-moment");
    assert_eq!(first["measured"]["case"], "first-moment");
    assert!(first["measured"]["value"].as_f64().unwrap() > 0.0);
    let both = find("bounds.case-split.both-masses");
    assert_eq!(both["measured"]["delta"], both["measured"]["delta_formula"]);
    assert_eq!(both["measured"]["delta"], 4.0);
}

#[test]
fn reruns_are_identical_apart_from_timestamp() {
    let run = || {
        let mut v = json(&sdwave(&["report", "--only", "Lemma"]));
        v.as_object_mut().unwrap().remove("generated_unix");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn out_file_replaces_partial_log() {
    let dir = std::env::temp_dir().join(format!("sdwave-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = sdwave(&["symbols", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(records(&v).len(), 3);
    assert!(!dir.join("report.json.partial.jsonl").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("sdwave-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"dim": 2, "gamma": 1.0, "t_points": 5}"#).unwrap();
    let out = sdwave(&[
        "rates",
        "--config",
        path.to_str().unwrap(),
        "--gamma",
        "1.5",
        "--only",
        "admissibility",
    ]);
    let v = json(&out);
    assert_eq!(v["config"]["dim"], 2);
    assert_eq!(v["config"]["gamma"], 1.5);
    assert_eq!(v["config"]["t_points"], 5);
    std::fs::remove_dir_all(&dir).unwrap();
}
