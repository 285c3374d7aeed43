use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

fn labels(block: &Value) -> Vec<String> {
    block["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn group_report() {
    let (v, code) = json(&["group", "--group", "Sn:3:permutation"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["degrees"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["data"]["order"], 6);
    let irreps = v["data"]["irreducibles"].as_array().unwrap();
    let hook = irreps.iter().find(|r| r["label"] == "(2,1)").unwrap();
    assert_eq!(hook["fake_polynomial"]["text"], "q + q^2");
    assert_eq!(hook["b_invariant"], 1);
    assert_eq!(v["job"]["group"], serde_json::json!(["Sn:3:permutation"]));
    assert_eq!(v["all_pass"], true);
}

#[test]
fn trivial_group() {
    let (v, code) = json(&["group", "--group", "Zm:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["order"], 1);
    assert_eq!(v["data"]["irreducibles"].as_array().unwrap().len(), 1);
}

#[test]
fn malformed_group_is_usage_error() {
    let out = run(&["group", "--group", "Q7:banana"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn cm_partition_z2() {
    let (v, code) = json(&["cm-partition", "--group", "Zm:2", "--c", "1"]);
    assert_eq!(code, 0);
    let blocks = v["data"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    assert!(blocks.iter().all(|b| labels(b).len() == 1));
    assert_eq!(v["data"]["verified"]["e_dims"], true);
    assert_eq!(v["data"]["verified"]["center_surjectivity"], true);

    let (v, code) = json(&["cm-partition", "--group", "Zm:2", "--c", "zero"]);
    assert_eq!(code, 0);
    let blocks = v["data"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0]["distinguished"], "chi0");
}

#[test]
fn cm_partition_cap_exceeded() {
    let out = run(&["cm-partition", "--group", "Sn:4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn characters_hook_and_eis() {
    let (v, code) = json(&["characters", "--group", "Sn:3", "--check-hook", "--trunc", "12"]);
    assert_eq!(code, 0);
    let hook = v["data"]["hook"].as_object().unwrap();
    assert_eq!(hook.len(), 3);
    assert!(hook.values().all(|b| b == true));
    let chars = v["data"]["characters"].as_array().unwrap();
    let hook_block = chars.iter().find(|c| c["distinguished"] == "(2,1)").unwrap();
    assert_eq!(hook_block["eis"]["degrees"], serde_json::json!([1, 1, 3]));
    assert_eq!(hook_block["endo"]["truncation"], 12);
    // t-degree 0 slice of Ext starts with the constant 1
    let ext_terms = hook_block["ext"]["terms"].as_array().unwrap();
    assert!(ext_terms.contains(&serde_json::json!([0, 0, "1", "1"])));
}

#[test]
fn characters_non_singleton_block() {
    let (v, code) = json(&["characters", "--group", "Zm:2", "--c", "zero"]);
    assert_eq!(code, 0);
    let chars = v["data"]["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 1);
    assert!(chars[0]["eis"]["degrees"].is_null());
    assert!(chars[0]["eis_note"].is_string());
}

#[test]
fn hook_check_rejects_non_symmetric_group() {
    assert_eq!(run(&["characters", "--group", "Zm:3", "--check-hook"]).status.code(), Some(2));
}

#[test]
fn verify_small_grid_and_faults() {
    let args = ["verify", "--group", "Zm:2", "--group", "Sn:2", "--bv-samples", "10", "--seed", "3"];
    let (v, code) = json(&args);
    assert_eq!(code, 0, "{}", v["data"]["failing"]);
    let (w, _) = json(&args);
    assert_eq!(v, w);

    let mut faulty = args.to_vec();
    faulty.extend(["--inject-fault", "center-surjects"]);
    let (v, code) = json(&faulty);
    assert_eq!(code, 1);
    let failing = v["data"]["failing"].as_array().unwrap();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|f| f.as_str().unwrap().contains("center-surjects")));

    let mut unknown = args.to_vec();
    unknown.extend(["--inject-fault", "no-such-check"]);
    assert_eq!(run(&unknown).status.code(), Some(2));
}

#[test]
fn verify_empty_grid_is_usage_error() {
    assert_eq!(run(&["verify", "--empty-grid"]).status.code(), Some(2));
}

#[test]
fn reduce_at_a_point() {
    let (v, code) = json(&["reduce", "--group", "Sn:3", "--point", "1,0,0", "--trunc", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["orbit_size"], 3);
    assert_eq!(v["data"]["stabilizer"]["order"], 2);
    assert_eq!(run(&["reduce", "--group", "Sn:3", "--point", "1,0"]).status.code(), Some(1));
}

#[test]
fn bv_check_report() {
    let (v, code) = json(&["bv-check", "--n", "2", "--trunc", "6", "--samples", "50", "--seed", "7"]);
    assert_eq!(code, 0);
    let homology = v["data"]["homology"].as_array().unwrap();
    assert_eq!(homology.len(), 2);
    assert!(homology.iter().all(|h| h["total"] == 1));
    assert_eq!(v["data"]["koszul"]["tor_degrees"], serde_json::json!([0]));
    assert_eq!(v["data"]["koszul"]["ext_degrees"], serde_json::json!([2]));
}

#[test]
fn pbw_product() {
    // y x = x y + [y, x] with [y, x] = c s
    let (v, code) = json(&["pbw", "--group", "Zm:2", "--c", "1", "--a", "y1", "--b", "x1"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["product"], "g1 + x1*y1");
    let (v, _) = json(&["pbw", "--group", "Zm:2", "--c", "zero", "--a", "y1", "--b", "x1"]);
    assert_eq!(v["data"]["product"], "x1*y1");
    assert_eq!(run(&["pbw", "--group", "Zm:2", "--a", "("]).status.code(), Some(2));
}

#[test]
fn formats_and_out_file() {
    let csv = run(&["group", "--group", "Zm:3", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("irrep,dim,b,fake degree,dual\n"));
    assert!(text.contains("check,status,detail\n"));

    let table = run(&["group", "--group", "Zm:3", "--format", "table"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.contains("all checks pass"));

    let dir = std::env::temp_dir().join(format!("cherednik-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["group", "--group", "Zm:3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"]["order"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn custom_group_file() {
    let dir = std::env::temp_dir().join(format!("cherednik-custom-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z2.json");
    // the reflection x -> -x
    std::fs::write(&path, r#"{"conductor": 1, "generators": [[[[[0, -1, 1]]]]]}"#).unwrap();
    let (v, code) = json(&["group", "--group", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["order"], 2);
    assert_eq!(v["data"]["degrees"], serde_json::json!([2]));
    std::fs::remove_dir_all(&dir).unwrap();
}
