use std::process::{Command, Output};

use serde_json::Value;

fn modpoints(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modpoints"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = modpoints(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn run_all_json_report() {
    let v = json(&["run", "all", "--format", "json", "--parallel"]);
    assert_eq!(v["version"], 1);
    let check = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap())
        .find(|c| c["id"] == "betti.M_K")
        .unwrap();
    assert_eq!(check["payload"], serde_json::json!([1, 2, 3, 3, 2, 1]));
    assert_eq!(check["status"], "pass");
}

#[test]
fn run_is_byte_stable() {
    let a = modpoints(&["run", "--suite", "betti", "--format", "json"]);
    let b = modpoints(&["run", "betti", "--format", "json", "--parallel"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn run_fq_text() {
    let out = modpoints(&["run", "fq"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("[PASS] fq.census (section:preparation) [1,35,28]"),
        "{text}"
    );
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = modpoints(&["run", "nosuchsuite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("modpoints-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = modpoints(&[
        "run",
        "stability",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suites"][0]["name"], "stability");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn fq_commands() {
    let c = json(&["fq", "census"]);
    assert_eq!(
        (
            c["zero"].as_u64(),
            c["isotropic"].as_u64(),
            c["nonisotropic"].as_u64()
        ),
        (Some(1), Some(35), Some(28))
    );
    let p = json(&["fq", "perp", "0x20"]);
    assert_eq!(
        (p["isotropic"].as_u64(), p["nonisotropic"].as_u64()),
        (Some(19), Some(12))
    );
    let g = json(&["fq", "group"]);
    assert_eq!(g["order"], 40320);
    assert_eq!(g["orbit_sizes"], serde_json::json!([28, 35]));
    assert_eq!(g["stab_order"], 1152);
    assert_eq!(modpoints(&["fq", "perp", "0x30"]).status.code(), Some(2));
    assert_eq!(modpoints(&["fq", "perp", "zz"]).status.code(), Some(2));
}

#[test]
fn slice_commands() {
    let r = json(&["slice", "transversality", "--chart", "R"]);
    assert_eq!(r[0]["multiplicity"], 6);
    assert_eq!(r[0]["factors"][0]["restriction"], "256");
    assert_eq!(
        json(&["slice", "transversality"]).as_array().unwrap().len(),
        3
    );
    let s = json(&["slice", "stabilizers"]);
    assert_eq!(s["scan"]["lcm"], 8);
    assert_eq!(
        modpoints(&["slice", "transversality", "--chart", "S"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn betti_commands_keyed_by_degree() {
    let k = json(&["betti", "kirwan"]);
    assert_eq!(k["betti"]["4"], 3);
    assert_eq!(k["betti"]["10"], 1);
    let keys: Vec<&String> = k["betti"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["0", "2", "4", "6", "8", "10"]);
    assert_eq!(json(&["betti", "tor", "--ordered"])["2"], 43);
    assert_eq!(json(&["betti", "tor", "--unordered"])["4"], 3);
    assert_eq!(json(&["betti", "boundary"])["4"], 2);
}

#[test]
fn picard_commands() {
    let v = json(&["picard", "verify"]);
    assert!(v.as_array().unwrap().iter().all(|i| i["status"] == "pass"));
    let i = json(&["picard", "intersections"]);
    assert_eq!(i["self_intersections"]["unordered"], "1/192");
    assert_eq!(
        i["normal_bundle"]["bidegree"],
        serde_json::json!(["-1", "-1"])
    );
    let o = json(&["picard", "obstruction"]);
    assert_eq!(o["required_delta_fifth"], "16807/600000");
    assert_eq!(o["obstructed"], true);
}

#[test]
fn stability_commands() {
    let c = json(&["stability", "classify", "--config", "4,4"]);
    assert_eq!(c["stability"], "StrictlySemistable");
    assert_eq!(c["polystable"], true);
    assert_eq!(
        json(&["stability", "table", "--n", "8"])
            .as_array()
            .unwrap()
            .len(),
        22
    );
    assert_eq!(
        modpoints(&["stability", "table", "--n", "40"])
            .status
            .code(),
        Some(2)
    );
}
