//! End-to-end CLI tests: file formats, exit codes, golden outputs.

use assert_cmd::Command;
use serde_json::Value;

fn ahg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ahg"))
}

fn json_stdout(cmd: &mut Command) -> Value {
    let out = cmd.assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).expect("valid JSON on stdout")
}

#[test]
fn classify_named_family_member() {
    let v = json_stdout(ahg().args(["classify", "--named", "A^(2)_3", "--dmax", "6"]));
    assert_eq!(v["outcome"], "algebraic_via_family");
    assert_eq!(v["matched_name"], "A^(2)_3");
    assert_eq!(v["volume"], 7);
    assert_eq!(v["polygon_type"][0], 3);
    assert_eq!(v["polygon_type"][1], 3);
}

#[test]
fn classify_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hexagon.json");
    std::fs::write(
        &path,
        r#"{"r":3,"points":[[0,-1,1],[1,-1,1],[-1,0,1],[0,0,1],[1,0,1],[-1,1,1],[0,1,1]]}"#,
    )
    .unwrap();
    let v = json_stdout(ahg().args([
        "classify",
        "--config",
        path.to_str().unwrap(),
        "--dmax",
        "6",
    ]));
    assert_eq!(v["outcome"], "algebraic_isolated");
    assert_eq!(v["isolated"][0][0], "1/3");
    assert_eq!(v["matched_name"], "A_9");
}

#[test]
fn classify_pyramid_outcome() {
    let v = json_stdout(ahg().args(["classify", "--named", "A^(2)_0", "--dmax", "6"]));
    assert_eq!(v["outcome"], "pyramid");
}

#[test]
fn classify_reduction_evidence_carries_triangulations() {
    let v = json_stdout(ahg().args(["classify", "--named", "A_8", "--dmax", "6"]));
    assert_eq!(v["outcome"], "no_algebraic_beta");
    assert_eq!(v["evidence"]["kind"], "reduction");
    let sub = v["evidence"]["sub_triangulation"]["cells"].as_array().unwrap();
    let ext = v["evidence"]["extended_triangulation"]["cells"]
        .as_array()
        .unwrap();
    assert!(sub.len() < ext.len());
    assert_eq!(ext.len(), 6); // cells of a volume-6 polygon
    for cell in ext {
        assert_eq!(cell.as_array().unwrap().len(), 3);
    }
}

#[test]
fn search_json_and_csv() {
    let v = json_stdout(ahg().args([
        "search", "--named", "A_2", "--dmax", "6", "--families",
    ]));
    assert_eq!(v["volume"], 3);
    assert_eq!(v["families"].as_array().unwrap().len(), 4);
    assert!(v["eliminated"]["resonant"].as_u64().unwrap() > 0);

    let out = ahg()
        .args(["search", "--named", "A_2", "--dmax", "6", "--families", "--csv"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("kind,"));
    assert!(text.lines().any(|l| l.starts_with("family,")));
}

#[test]
fn apex_output() {
    let v = json_stdout(ahg().args([
        "apex",
        "--named",
        "A^(1)_{1,1}",
        "--beta",
        "1/2,5/6,2/3",
    ]));
    assert_eq!(v["signature"], 2);
    assert_eq!(v["volume"], 2);
    assert_eq!(v["apex_points"].as_array().unwrap().len(), 2);
}

#[test]
fn apex_rejects_resonant_parameter() {
    ahg()
        .args(["apex", "--named", "A_2", "--beta", "0,0,0"])
        .assert()
        .failure()
        .code(2);
}

#[test]
fn cells_output_for_the_collinear_configuration() {
    let v = json_stdout(ahg().args(["cells", "--named", "collinear_4"]));
    let cells = v.as_array().unwrap();
    let maximal: Vec<&Value> = cells.iter().filter(|c| c["sigma"] == 3).collect();
    assert_eq!(maximal.len(), 2);
}

#[test]
fn census_counts_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("census.json");
    let v = json_stdout(ahg().args([
        "census",
        "--interior",
        "1",
        "--boundary",
        "4",
        "--cache",
        cache.to_str().unwrap(),
    ]));
    assert_eq!(v[0]["type"][0], 1);
    assert_eq!(v[0]["count"], 3);
    assert!(cache.exists());
    // second run reads the cache
    let v2 = json_stdout(ahg().args([
        "census",
        "--interior",
        "1",
        "--boundary",
        "4",
        "--cache",
        cache.to_str().unwrap(),
    ]));
    assert_eq!(v2[0]["count"], 3);
    // infeasible type gives an empty list
    let v3 = json_stdout(ahg().args(["census", "--interior", "1", "--boundary", "10"]));
    assert_eq!(v3[0]["count"], 0);
}

#[test]
fn tables_check_exit_codes() {
    // matching table: exit 0
    ahg()
        .args(["tables", "--id", "2", "--check"])
        .assert()
        .success();
    // a denominator bound too small to reproduce the rows: exit 1
    ahg()
        .args(["tables", "--id", "4", "--check", "--dmax", "2"])
        .assert()
        .code(1);
    // invalid input: exit 2
    ahg()
        .args(["tables", "--id", "9", "--check"])
        .assert()
        .code(2);
}

#[test]
fn invalid_configs_exit_2() {
    ahg()
        .args(["classify", "--named", "A_99"])
        .assert()
        .code(2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // duplicate point
    std::fs::write(&path, r#"{"r":2,"points":[[0,1],[0,1]]}"#).unwrap();
    ahg()
        .args(["classify", "--config", path.to_str().unwrap()])
        .assert()
        .code(2);
    // not at height one
    std::fs::write(&path, r#"{"r":3,"points":[[0,0,2],[1,0,1],[0,1,1]]}"#).unwrap();
    ahg()
        .args(["search", "--config", path.to_str().unwrap(), "--dmax", "4"])
        .assert()
        .code(2);
}

#[test]
fn tables_listing_without_check() {
    let v = json_stdout(ahg().args(["tables", "--id", "6"]));
    assert_eq!(v["table"], 6);
    assert!(v["keys"].as_array().unwrap().len() >= 10);
}
