use std::path::PathBuf;
use std::process::{Command, Output};

fn cosimp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosimp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn e2_of_the_orbit_example_matches_the_golden_file() {
    let o = cosimp(&["page", "--s", "1", "--t", "1", "--r", "2", "--P", "2", "--Q", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("hpi_omega_1_1_e2.json"));
}

#[test]
fn golden_file_carries_its_window() {
    let v: serde_json::Value = serde_json::from_str(&golden("hpi_omega_1_1_e2.json")).unwrap();
    assert_eq!(v["r"], 2);
    assert_eq!(v["window"]["P"], 2);
    assert_eq!(v["window"]["Q"], 5);
    let nonzero: Vec<(u64, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["dim"] != 0)
        .map(|e| (e["s"].as_u64().unwrap(), e["t"].as_u64().unwrap()))
        .collect();
    assert_eq!(nonzero, vec![(1, 2), (1, 3), (1, 4), (2, 2)]);
}

#[test]
fn a_different_window_does_not_match_the_golden_file() {
    let o = cosimp(&["page", "--s", "1", "--t", "1", "--r", "2", "--P", "2", "--Q", "6"]);
    assert!(o.status.success());
    assert_ne!(stdout(&o), golden("hpi_omega_1_1_e2.json"));
}

#[test]
fn empty_report_has_the_schema() {
    let o = cosimp(&["report"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], serde_json::json!(["check", "params", "verdict", "duration_ms", "witnesses"]));
    assert_eq!(v["reports"], serde_json::json!([]));
    let o = cosimp(&["report", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "check,s,t,m,P,Q,ell,verdict,duration_ms,witness_s,witness_t,witness_detail\n"
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["report", "--all"][..],
        &["report", "--all", "--format", "csv"],
        &["check", "tensor-products", "--corrupt-shuffles"],
        &["universal", "--s", "1", "--t", "2"],
        &["tot-homology", "--s", "1", "--t", "2"],
    ] {
        let a = cosimp(args);
        let b = cosimp(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn report_matches_the_schema() {
    let o = cosimp(&["check", "main-convergence", "--m", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["check"], "main-convergence");
    assert_eq!(r["params"], serde_json::json!({"s": 1, "t": 1, "m": 1, "P": 2, "Q": 5, "ell": 2}));
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["duration_ms"], 0);
    assert_eq!(r["witnesses"], serde_json::json!([]));
}

#[test]
fn corrupted_shuffles_fail_with_a_witness() {
    let o = cosimp(&["check", "tensor-products", "--s", "1", "--t", "1", "--corrupt-shuffles"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["witnesses"][0]["s"], 1);
    assert_eq!(r["witnesses"][0]["t"], 1);
}

#[test]
fn exit_code_reflects_every_check() {
    assert_eq!(cosimp(&["report", "fig2-shape", "comodule-map"]).status.code(), Some(0));
    let o = cosimp(&["report", "fig2-shape", "tensor-products", "--corrupt-shuffles"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reports"][0]["verdict"], "pass");
    assert_eq!(v["reports"][1]["verdict"], "fail");
}

#[test]
fn faults_on_unknown_ids_and_windows() {
    assert_eq!(cosimp(&["check", "no-such-check"]).status.code(), Some(2));
    assert_eq!(cosimp(&["check", "main-convergence", "--m", "9"]).status.code(), Some(2));
    assert_eq!(cosimp(&["check", "bottom-op", "--P", "1"]).status.code(), Some(2));
    assert_eq!(cosimp(&["check", "fig2-shape", "--s", "2", "--t", "1"]).status.code(), Some(2));
    let o = cosimp(&["page", "--v", "orbits(nothing)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nothing"));
}

#[test]
fn timing_is_opt_in() {
    let o = cosimp(&["check", "fig1-shape", "--timing"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["reports"][0]["duration_ms"].as_u64().unwrap() > 0);
}

#[test]
fn config_files_describe_v_and_flags_override_them() {
    let dir = std::env::temp_dir().join(format!("cosimp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v.toml");
    std::fs::write(&path, "v = \"suspension(cofiber(cosimplicial, 1))\"\nell = 2\nQ = 2\n").unwrap();
    let p = path.to_str().unwrap();
    let o = cosimp(&["tot-homology", "--config", p]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["v"], "suspension(cofiber(cosimplicial,1))");
    assert_eq!(v["homology"][1]["dim"], 1);
    assert_eq!(v["homology"][1]["filtration"], serde_json::json!([1]));
    let o = cosimp(&["tot-homology", "--config", p, "--Q", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["levels"], 3);
    std::fs::write(&path, "v = \"omega(1,1)\"\nbogus = 1\n").unwrap();
    assert_eq!(cosimp(&["tot-homology", "--config", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn custom_v_for_the_comodule_check() {
    let o = cosimp(&["check", "comodule-map", "--v", "product(omega(1,1), simplex(1))", "--Q", "2", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().contains(",pass,"));
}
