use coxcone::cli::{run, Outcome};
use serde_json::Value;

fn system(name: &str) -> String {
    format!("{}/../../systems/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn cx(args: &[&str]) -> Outcome {
    run(std::iter::once("coxcone").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = cx(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

#[test]
fn classify_a2_exact_bytes() {
    let out = cx(&["classify", &system("a2")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "{\"components\":[{\"indices\":[1,2],\"type\":\"Fin\"}]}\n");
}

#[test]
fn facial_special_case_d() {
    let v = json(&["facial", "special", &system("six_cycle_d")]);
    assert_eq!(v["count"], 5);
    let sets: Vec<Vec<u64>> = serde_json::from_value(v["sets"].clone()).unwrap();
    assert_eq!(sets, vec![vec![], vec![1, 2, 4, 5], vec![1, 3, 4, 6], vec![2, 3, 5, 6], vec![1, 2, 3, 4, 5, 6]]);
}

#[test]
fn arrangement_case_a_has_twelve_sign_vectors() {
    let v = json(&["facial", "arrangement", &system("six_cycle_a")]);
    assert_eq!(v["kernel"]["count"], 12);
    assert_eq!(v["relations"]["count"], 0);
}

#[test]
fn facial_test_reports_both_routes() {
    let v = json(&["facial", "test", &system("six_cycle_b"), "{2,3,4}"]);
    assert_eq!(v["lp"], true);
    assert_eq!(v["sign_vectors"], true);
    let v = json(&["facial", "test", &system("six_cycle_b"), "1,2,3"]);
    assert_eq!(v["lp"], false);
    assert_eq!(v["sign_vectors"], false);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["facial", "list", "SYS"],
        vec!["subcone", "build", "HEX", "--seed", "1,1,1"],
        vec!["imaginary", "k", "AFF"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| match *a {
                "SYS" => system("six_cycle_c"),
                "HEX" => system("a2_hexagonal"),
                "AFF" => system("affine_a1_degenerate"),
                s => s.to_string(),
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = cx(&refs);
        let b = cx(&refs);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a, b);
    }
}

#[test]
fn jobs_flag_does_not_change_output() {
    let one = cx(&["--jobs", "1", "facial", "list", &system("six_cycle_a")]);
    let four = cx(&["--jobs", "4", "facial", "list", &system("six_cycle_a")]);
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    assert_eq!(cx(&["classify", "/nonexistent.json"]).code, 2);
    assert_eq!(cx(&["tits", "face", &system("six_cycle_d"), "{1,2}"]).code, 2);
    assert_eq!(cx(&["subcone", "build", &system("a2")]).code, 2);
    assert_eq!(cx(&["facial", "arrangement", &system("a2"), "--dot"]).code, 2);
    assert_eq!(cx(&["no-such-command"]).code, 2);
    // -ρ needs three reflections.
    assert_eq!(cx(&["tits", "normalize", &system("a2"), "-1,-1", "--cap", "0"]).code, 3);
    assert_eq!(cx(&["--help"]).code, 0);
}

#[test]
fn malformed_input_names_the_field() {
    let dir = std::env::temp_dir().join(format!("coxcone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "cartan": [["2", "-1"], ["-1", "x"]]}"#).unwrap();
    let out = cx(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("cartan[1][1]"), "{}", out.stderr);
    std::fs::write(&bad, r#"{"n": 2, "cartan": [["2", "-1"], ["0", "2"]]}"#).unwrap();
    let out = cx(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("(1,2)") || out.stderr.contains("(2,1)") || out.stderr.contains("(0,1)"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tits_and_imaginary_faces() {
    let d = system("six_cycle_d");
    let v = json(&["tits", "face", &d, "{1,2,4,5}@3"]);
    assert_eq!(v["dim"], 3);
    let b = system("six_cycle_b");
    assert_eq!(json(&["tits", "meet", &b, "1,2", "4,5"])["meet"]["theta"], serde_json::json!([1, 2, 4, 5]));
    assert_eq!(json(&["imaginary", "join", &b, "1,2", "4,5"])["join"]["theta"], serde_json::json!([1, 2, 4, 5]));
    let k = json(&["imaginary", "k", &system("affine_a1_degenerate")]);
    assert_eq!(k["k"]["generators"], serde_json::json!([["1", "1"]]));
    let n = json(&["tits", "normalize", &system("a2"), "-1,2"]);
    assert_eq!(n["sigma"], serde_json::json!([1]));
    assert_eq!(n["chamber_point"], serde_json::json!(["1", "1"]));
}

#[test]
fn subcone_commands_on_hexagonal_cone() {
    let hex = system("a2_hexagonal");
    let s = ["--seed", "1,1,1"];
    let with = |args: &[&str]| {
        let mut v: Vec<&str> = args.to_vec();
        v.extend(s);
        json(&v)
    };
    let b = with(&["subcone", "build", &hex]);
    assert_eq!(b["faces"].as_array().unwrap().len(), 14);
    assert_eq!(b["group_order"], 6);
    let cs = with(&["subcone", "cross-section", &hex]);
    assert_eq!(cs["entries"].as_array().unwrap().len(), 5);
    let chains = with(&["subcone", "chains", &hex]);
    assert_eq!(chains["violations"], serde_json::json!([]));
    assert_eq!(with(&["subcone", "check-dimc", &hex])["contained"], "in");
    let dot = cx(&["subcone", "cross-section", &hex, "--seed", "1,1,1", "--dot"]);
    assert!(dot.stdout.starts_with("digraph"));
}

#[test]
fn subcone_commands_on_tits_cone() {
    let d = system("six_cycle_d");
    let cs = json(&["subcone", "cross-section", &d, "--tits"]);
    assert_eq!(cs["entries"].as_array().unwrap().len(), 5);
    let sweep = json(&["subcone", "chains", &d, "--tits", "--depth", "2"]);
    assert_eq!(sweep["violations"], serde_json::json!([]));
    let t = json(&["subcone", "typemap", &d, "--tits", "{1,2,4,5}@3"]);
    assert_eq!(t["upper"], serde_json::json!([]));
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest"]);
    assert_eq!(v["failed"], 0);
}
