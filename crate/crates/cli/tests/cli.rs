use std::process::{Command, Output};

use serde_json::Value;

const S3: &str = r#"{"type":"symmetric","n":3}"#;
const A4: &str = r#"{"type":"alternating","n":4}"#;
const C9: &str = r#"{"type":"cyclic","n":9}"#;
const C7_C3: &str = r#"{"type":"semidirect_cyclic","n":7,"k":3,"action":2}"#;

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .env("RUST_LOG", "warn")
        .env_remove("BRAUER_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn blocks_of_s3() {
    let out = brauer(&["blocks", S3, "--p", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0]["dim"], 6);
    assert_eq!(blocks[0]["simple_dims"], serde_json::json!([1, 1]));
    assert_eq!(blocks[0]["defect"]["order"], 3);
    assert_eq!(blocks[0]["defect"]["cyclic"], true);

    let v = json(&brauer(&["blocks", S3, "--p", "5"]));
    let dims: Vec<u64> = v["blocks"].as_array().unwrap().iter().map(|b| b["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 4]);
    assert!(v["blocks"].as_array().unwrap().iter().all(|b| b["defect"]["order"] == 1));
}

#[test]
fn klein_four_defect_is_flagged() {
    let out = brauer(&["blocks", A4, "--p", "2", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("tree unavailable: defect not cyclic"));
    let out = brauer(&["tree", A4, "--p", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("defect not cyclic"));
}

#[test]
fn trees_of_small_groups() {
    for (spec, p, edges, m) in [(C7_C3, "7", 3, 2), (C9, "3", 1, 8), (S3, "3", 2, 1)] {
        let out = brauer(&["tree", spec, "--p", p, "--format", "json"]);
        assert_eq!(code(&out), 0, "{spec}: {}", stderr(&out));
        let t = json(&out);
        assert_eq!(t["edges"].as_array().unwrap().len(), edges, "{spec}");
        assert_eq!(t["multiplicity"], m, "{spec}");
    }
    let dot = brauer(&["tree", C9, "--p", "3"]);
    let dot = String::from_utf8_lossy(&dot.stdout);
    assert!(dot.starts_with("graph brauer_tree"));
    assert!(dot.contains("fillcolor=black"));
}

#[test]
fn trivial_defect_has_no_tree() {
    let out = brauer(&["tree", S3, "--p", "5", "--block", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("trivial defect"));
    assert_eq!(code(&brauer(&["tree", S3, "--p", "3", "--block", "7"])), 2);
}

#[test]
fn cyclic_tower_verdict() {
    let out = brauer(&["tower", r#"{"type":"cyclic_tower","p":3,"depth":4}"#]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["multiplicity"], "inf");
    assert_eq!(v["dims"], serde_json::json!([3, 9, 27, 81]));
    assert_eq!(v["defect"]["kind"], "pro-p-cyclic");
    assert_eq!(v["star"], true);
    assert_eq!(v["levels_used"], 4);
    assert_eq!(v["cycle_quiver"]["uniserial"], true);
}

#[test]
fn constant_tower_verdict() {
    let spec = r#"{"type":"constant_tower","group":{"type":"symmetric","n":3},"depth":3}"#;
    let out = brauer(&["tower", spec, "--p", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["defect"]["kind"], "finite");
    assert_eq!(v["defect"]["order_sequence"], serde_json::json!([3, 3, 3]));
    assert_eq!(v["dims"], serde_json::json!([6, 6, 6]));
    assert_eq!(v["dim_verdict"]["kind"], "finite");
    assert!(v.get("star").is_none());
}

#[test]
fn verify_and_corrupted_tree() {
    for (spec, p) in [(C9, "3"), (C7_C3, "7")] {
        let out = brauer(&["verify", spec, "--p", p]);
        assert_eq!(code(&out), 0, "{spec}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    }
    for (spec, p) in [(C9, "3"), (S3, "3")] {
        let out = brauer(&["verify", spec, "--p", p, "--corrupt-tree"]);
        assert_eq!(code(&out), 3, "{spec}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&brauer(&["tower", r#"{"type":"cyclic_tow"#])), 1);
    assert_eq!(code(&brauer(&["tower", r#"{"type":"cyclic_chain","orders":[3,9]}"#])), 1);
    assert_eq!(code(&brauer(&["blocks", S3])), 1);
    assert_eq!(code(&brauer(&["blocks", S3, "--p", "4"])), 1);
    assert_eq!(code(&brauer(&["blocks", S3, "--p", "3", "--format", "dot"])), 1);
    assert_eq!(code(&brauer(&["blocks", "/nonexistent/spec.json", "--p", "3"])), 1);
    assert_eq!(code(&brauer(&["frobnicate"])), 1);
    assert_eq!(code(&brauer(&["tree", C9, "--p", "3", "--cap", "0"])), 1);
    let out = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(["blocks", S3, "--p", "3"])
        .env("BRAUER_SEED", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn output_is_deterministic_and_reads_files() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("c7c3.json");
    std::fs::write(&path, C7_C3).unwrap();
    let path = path.to_str().unwrap();
    let a = brauer(&["blocks", path, "--p", "7"]);
    let b = brauer(&["blocks", path, "--p", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let seeded = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(["blocks", path, "--p", "7"])
        .env("RUST_LOG", "warn")
        .env("BRAUER_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(code(&seeded), 0);
    assert_eq!(json(&seeded)["blocks"].as_array().unwrap().len(), json(&a)["blocks"].as_array().unwrap().len());
}
