use std::process::{Command, Output};

use serde_json::Value;

fn torsec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn rank_exceptional_and_generic_j() {
    let o = torsec(&["rank", "--n", "5", "--p", "31", "--j", "19"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.matches("c = 1  vanishing {0}").count(), 1, "{s}");
    assert!(s.contains("characters = rank-deficiency: OK"));

    let o = torsec(&["rank", "--n", "5", "--p", "31", "--j", "7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cs: Vec<u64> = v["subgroups"].as_array().unwrap().iter().map(|r| r["c"].as_u64().unwrap()).collect();
    assert_eq!(cs, vec![0; 6]);
}

#[test]
fn rank_in_characteristic_two() {
    let o = torsec(&["rank", "--p", "2", "--j", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["subgroups"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["c"] == 1 && r["orbit"] == 0));
}

#[test]
fn rank_from_coefficients_and_single_subgroup() {
    // y^2 = x^3 + x + 7 over F_11
    let o = torsec(&["rank", "--p", "11", "--curve", "0,0,0,1,7", "--subgroup", "2", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 1);
    assert_eq!(torsec(&["rank", "--p", "11", "--curve", "0,0,0,0,0"]).status.code(), Some(2));
}

#[test]
fn survey_report_schema() {
    let o = torsec(&["survey", "--n", "5", "--p", "11", "--scope", "j=5,4"]);
    assert_eq!(code(&o), 0);
    let raw = stdout(&o);
    let v: Value = serde_json::from_str(&raw).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = vec!["command", "N", "p", "extension_degrees", "seed", "rows", "aggregate", "checks", "partial"];
    want.sort();
    assert_eq!(keys, want);
    let order: Vec<usize> = ["\"command\"", "\"N\"", "\"p\"", "\"extension_degrees\"", "\"seed\"", "\"rows\"", "\"aggregate\""]
        .iter()
        .map(|k| raw.find(k).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
    let ex: Vec<(String, u64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["c"] != 0)
        .map(|r| (r["j"].as_str().unwrap().to_string(), r["c"].as_u64().unwrap()))
        .collect();
    assert_eq!(ex, vec![("[4]".to_string(), 2), ("[5]".to_string(), 1)]);
    assert_eq!(v["aggregate"]["c_other"], 0);
    assert_eq!(v["partial"], false);
}

#[test]
fn survey_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = torsec(&["survey", "--p", "13", "--scope", "j=2,9", "--seed", "9", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn extension_cap_gives_partial_exit() {
    let o = torsec(&["survey", "--p", "31", "--scope", "j=7", "--ext-cap", "1"]);
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["partial"], true);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "PARTIAL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&torsec(&["survey", "--p", "5"])), 2);
    assert_eq!(code(&torsec(&["survey", "--p", "9"])), 2);
    assert_eq!(code(&torsec(&["survey", "--n", "4", "--p", "11"])), 2);
    assert_eq!(code(&torsec(&["survey", "--p", "11", "--scope", "some"])), 2);
    assert_eq!(code(&torsec(&["qexp", "--n", "11"])), 2);
    assert_eq!(code(&torsec(&["qexp", "--n", "7", "--prec", "10"])), 2);
    assert_eq!(code(&torsec(&["frobnicate"])), 2);
    assert_eq!(code(&torsec(&["ngon", "--r", "1,0,0"])), 2);
    assert_eq!(code(&torsec(&["--help"])), 0);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# survey\np = 11\nscope = j=5\nseed = 4\nformat = json\n").unwrap();
    let o = torsec(&["survey", "--config", cfg.to_str().unwrap(), "--seed", "8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["p"], 11);
    assert_eq!(v["seed"], 8);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    std::fs::write(&cfg, "p = 11\nflavour = sweet\n").unwrap();
    assert_eq!(code(&torsec(&["survey", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn qexp_level_five() {
    let o = torsec(&["qexp", "--n", "5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["f1"], "t + 5");
    assert_eq!(v["f2"], "t + 10");
    assert_eq!(v["F1"], "j - 1600");
    assert_eq!(v["F2"], "2j + 25");
    assert_eq!(v["Q"], "t");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "OK"));
}

#[test]
fn qexp_level_seven_flags_the_one_mismatching_line() {
    let o = torsec(&["qexp", "--n", "7"]);
    let s = stdout(&o);
    assert!(s.contains("Disc f2 = -3^3 * 7^6"));
    assert!(s.contains("F2(j) = 15j^4 - 28857j^3 + 20163177j^2 - 5403404499j - 141176604743"));
    let failed: Vec<&str> = s.lines().filter(|l| l.ends_with(": FAIL")).collect();
    assert_eq!(failed, vec!["golden Disc F2 = -3 * 7^18 * 43^2 * 139^2 * 421^2 * 591751^2: FAIL"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn ngon_profiles() {
    let o = torsec(&["ngon", "--e", "5", "--r", "4,-1,-1,-1,-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("n = (2, 0, -1, -1, 0)\n"));
    let o = torsec(&["ngon", "--e", "5", "--r=-20,5,5,5,5"]);
    assert!(stdout(&o).starts_with("n = (-10, 0, 5, 5, 0)\n"));
    let o = torsec(&["ngon", "--r", "0,0,0", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], serde_json::json!(["0", "0", "0"]));
}
