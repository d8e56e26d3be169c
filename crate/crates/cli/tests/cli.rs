use assert_cmd::Command;
use serde_json::Value;

fn wps() -> Command {
    let mut cmd = Command::cargo_bin("wps").unwrap();
    cmd.env_remove("WPS_CATALOG");
    cmd
}

fn stdout(cmd: &mut Command) -> String {
    let out = cmd.assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn json(args: &[&str]) -> Value {
    let text = stdout(wps().arg("--json").args(args));
    serde_json::from_str(&text).unwrap()
}

#[test]
fn analyze_e12_table() {
    let out = stdout(wps().args(["analyze", "E12"]));
    assert!(out.contains("(21,14,6; 42)"), "{out}");
    assert!(out.contains("{1/2(1,1), 1/3(1,1), 1/7(1,1)}"), "{out}");
}

#[test]
fn analyze_json_matches_across_input_forms() {
    let by_name = json(&["analyze", "E12"]);
    let by_class = json(&["analyze", "--class", "I", "--exponents", "2,3,7"]);
    let by_weights = json(&["analyze", "--weights", "21,14,6", "--degree", "42"]);
    assert_eq!(by_name["command"], "analyze");
    let r = &by_name["result"];
    assert_eq!(r["weights"], serde_json::json!([21, 14, 6]));
    assert_eq!(r["milnor"], 12);
    assert_eq!(r["exponent"], 1);
    assert_eq!(r["genus"], 0);
    for other in [&by_class, &by_weights] {
        for key in ["weights", "degree", "milnor", "b", "chat_squared", "exponent", "genus"] {
            assert_eq!(other["result"][key], r[key], "{key}");
        }
    }
}

#[test]
fn monodromy_e12() {
    let r = json(&["monodromy", "E12"]);
    assert_eq!(r["result"]["theta_degree"], 12);
    assert_eq!(r["result"]["unipotent_exponent"], 42);
}

#[test]
fn search_e20_finds_two_hits() {
    let r = json(&["search", "E20", "--w3-range", "1..6"]);
    let w3: Vec<i64> = r["result"]["hits"].as_array().unwrap().iter().map(|h| h["w3"].as_i64().unwrap()).collect();
    assert_eq!(w3, [1, 5]);
    let seq = json(&["--sequential", "search", "E20", "--w3-range", "1..=6"]);
    assert_eq!(seq, r);
}

#[test]
fn intersect_e12() {
    let out = stdout(wps().args(["intersect", "E12"]));
    assert!(out.contains("1/42"), "{out}");
}

#[test]
fn verify_all_passes() {
    let out = stdout(wps().args(["verify", "--all"]));
    assert_eq!(out.lines().filter(|l| l.contains("PASS") && !l.starts_with(' ')).count(), 17, "{out}");
}

#[test]
fn verify_fails_on_a_wrong_recorded_value() {
    let mut cat: Value = serde_json::from_str(include_str!("../../core/data/catalog.json")).unwrap();
    cat[0]["expected"]["c_squared"] = serde_json::json!({"num": 1, "den": 41});
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    std::fs::write(&path, serde_json::to_string_pretty(&cat).unwrap()).unwrap();
    let out = wps().env("WPS_CATALOG", &path).args(["verify", "E12"]).assert().code(1).get_output().stdout.clone();
    let out = String::from_utf8(out).unwrap();
    assert!(out.contains("FAIL") && out.contains("c_squared"), "{out}");
}

#[test]
fn malformed_catalog_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    std::fs::write(&path, "[{\"name\": 3}]").unwrap();
    wps().env("WPS_CATALOG", &path).arg("list").assert().code(2);
}

#[test]
fn usage_errors_exit_2() {
    wps().args(["analyze"]).assert().code(2);
    wps().args(["analyze", "E12", "--weights", "1,1,1", "--degree", "3"]).assert().code(2);
    wps().args(["analyze", "X99"]).assert().code(2);
    wps().args(["search", "E12", "--w3-range", "5..2"]).assert().code(2);
    wps().args(["verify"]).assert().code(2);
}

#[test]
fn list_has_every_entry() {
    let r = json(&["list"]);
    assert_eq!(r["result"].as_array().unwrap().len(), 17);
}
