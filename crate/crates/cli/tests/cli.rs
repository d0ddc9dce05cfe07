use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn vlplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vlplus"))
        .args(args)
        .env_remove("VLPLUS_GRAM")
        .env_remove("VLPLUS_ORDER")
        .env_remove("VLPLUS_FORMAT")
        .env_remove("VLPLUS_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gram(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn rank_one_vacuum_character_as_tsv() {
    let o = vlplus(&["--gram", &gram("a1.json"), "--order", "3", "--format", "tsv", "char", "--module", "V+"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\t1\n1\t1\n2\t2\n");
}

#[test]
fn module_listing_is_json() {
    let o = vlplus(&["--gram", &gram("diag24.json"), "modules"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 18);
}

#[test]
fn fusion_single_and_batch() {
    let o = vlplus(&["--gram", &gram("a1.json"), "--format", "tsv", "fusion", "V-", "T[0]+", "T[0]-"]);
    assert_eq!(stdout(&o), "V-\tT[0]+\tT[0]-\t1\n");
    let o = vlplus(&["--gram", &gram("a1.json"), "--format", "tsv", "fusion", "--batch", &gram("a1_fusion_batch.json")]);
    assert_eq!(o.status.code(), Some(0));
    let answers: Vec<String> =
        stdout(&o).lines().map(|l| l.rsplit('\t').next().unwrap().to_string()).collect();
    assert_eq!(answers, ["1", "0", "1"]);
}

#[test]
fn sign_table_resolves_unknown_fusion() {
    let g = gram("diag24.json");
    let bare = vlplus(&["--gram", &g, "--format", "tsv", "fusion", "C[1/2,0]+", "C[1/2,0]+", "V+"]);
    assert!(stdout(&bare).contains("unknown"), "{}", stdout(&bare));
    let signed = vlplus(&[
        "--gram", &g, "--signs", &gram("diag24_signs.json"), "--format", "tsv", "fusion", "C[1/2,0]+", "C[1/2,0]+", "V+",
    ]);
    assert_eq!(signed.status.code(), Some(0));
    assert!(!stdout(&signed).contains("unknown"), "{}", stdout(&signed));
}

#[test]
fn decompose_reports_verified_parts() {
    let o = vlplus(&["--gram", &gram("diag24.json"), "--format", "tsv", "decompose", "--module", "U[0,1/4]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "U[0,1/4]\tok\tV+ ⊗ U[1/4] + V- ⊗ U[1/4]\n");
    let o = vlplus(&["--gram", &gram("a2.json"), "decompose", "--sublattice", "auto"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn certificate_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let o = vlplus(&["--gram", &gram("diag224.json"), "certify", "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(vlplus(&["certify", "--verify", p]).status.code(), Some(0));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut cert: serde_json::Value = serde_json::from_str(&text).unwrap();
    // claim a weight-gap argument for the pair (V-, V+), whose gap is 1
    let pairs = cert["pairs"].as_array_mut().unwrap();
    let target = pairs.iter_mut().find(|r| r["m1"] == "V-" && r["m2"] == "V+").unwrap();
    target["justification"] = serde_json::json!({"rule": "WeightGap", "gap": "1", "citation": "forged"});
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(vlplus(&["certify", "--verify", p]).status.code(), Some(3));
}

#[test]
fn output_does_not_depend_on_jobs() {
    let g = gram("a3.json");
    let one = vlplus(&["--gram", &g, "--jobs", "1", "certify"]);
    let many = vlplus(&["--gram", &g, "--jobs", "4", "certify"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn exit_codes() {
    // 1: the Gram file cannot be read
    assert_eq!(vlplus(&["--gram", "/nonexistent/gram.json", "modules"]).status.code(), Some(1));
    // 2: invalid input
    assert_eq!(vlplus(&["modules"]).status.code(), Some(2));
    assert_eq!(vlplus(&["--gram", &gram("a1.json"), "--order", "0", "char"]).status.code(), Some(2));
    assert_eq!(vlplus(&["--gram", &gram("a1.json"), "fusion", "V-", "X", "V+"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let odd = dir.path().join("odd.json");
    std::fs::write(&odd, "[[3]]").unwrap();
    assert_eq!(vlplus(&["--gram", odd.to_str().unwrap(), "modules"]).status.code(), Some(2));
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "[[2,1],[1").unwrap();
    assert_eq!(vlplus(&["--gram", broken.to_str().unwrap(), "analyze"]).status.code(), Some(2));
}

#[test]
fn gram_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_vlplus"))
        .args(["--format", "tsv", "char", "--module", "V+"])
        .env("VLPLUS_GRAM", gram("a1.json"))
        .env("VLPLUS_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "0\t1\n1\t1\n");
}
