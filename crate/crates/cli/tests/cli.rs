use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use splitfield::{AbelianField, Limits};
use splitfield_cli::FieldDocument;

fn splitfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitfield"))
        .args(args)
        .env_remove("SEED")
        .env_remove("OUTPUT_FORMAT")
        .env_remove("MODULUS_CAP")
        .env_remove("PRIME_SEARCH_BOUND")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = splitfield(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    splitfield(args).status.code().unwrap()
}

#[test]
fn lambda_command() {
    let v = ok_json(&["lambda", "--count", "3"]);
    let qs: Vec<u64> = v.as_array().unwrap().iter().map(|e| e["q"].as_u64().unwrap()).collect();
    assert_eq!(qs, vec![2, 3, 7]);
    assert_eq!(v[2]["factors_of_q_minus_1"], serde_json::json!([2, 3]));
    assert_eq!(ok_json(&["lambda", "--count", "0"]), serde_json::json!([]));
    let ten = ok_json(&["lambda", "--count", "10"]);
    assert_eq!(ten[9]["q"], 67);
}

#[test]
fn local_degree_command() {
    let v = ok_json(&["local-degree", "--conductor", "7", "--prime", "2"]);
    assert_eq!((v["e"].as_u64(), v["f"].as_u64(), v["g"].as_u64()), (Some(1), Some(3), Some(2)));
    assert_eq!(v["local_degree"], 3);
    let v = ok_json(&["local-degree", "--conductor", "7", "--prime", "7"]);
    assert_eq!((v["e"].as_u64(), v["f"].as_u64(), v["local_degree"].as_u64()), (Some(6), Some(1), Some(6)));
    for p in ["2", "3", "101"] {
        assert_eq!(ok_json(&["local-degree", "--conductor", "1", "--prime", p])["local_degree"], 1);
    }
    let v = ok_json(&["local-degree", "--conductor", "7", "--subgroup", "2", "--prime", "2"]);
    assert_eq!(v["local_degree"], 1);
}

#[test]
fn construct_cyclic_command() {
    let v = ok_json(&["construct-cyclic", "--q", "3"]);
    assert_eq!(v["conductor"], 7);
    assert_eq!(v["degree"], 3);
    let v = ok_json(&["construct-cyclic", "--q", "5", "--split", "2,3"]);
    assert_eq!(v["trace"]["chosen_ells"], serde_json::json!([11, 31, 41]));
    for row in v["splitting"].as_array().unwrap() {
        assert_eq!(row["local_degree"], 1);
    }
    let avoid = r#"{"conductor": 3, "subgroup_generators": [], "degree": 2, "canonical": true}"#;
    let v = ok_json(&["construct-cyclic", "--q", "2", "--avoid", avoid]);
    assert_eq!(v["conductor"], 5);
    assert_eq!(v["subgroup_generators"], serde_json::json!([4]));
}

#[test]
fn realize_command() {
    let v = ok_json(&["realize", "--kind", "unbounded", "--depth", "4", "--probe", "2"]);
    assert_eq!(v["local_degrees"]["2"], 330);
    let v = ok_json(&["realize", "--kind", "bounded", "--depth", "1", "--primes", "2"]);
    assert_eq!(v["claimed_bounds"]["2"], 2);
    assert_eq!(v["local_degrees"]["2"], 1);
    assert!(v["verdicts"].as_object().unwrap().values().all(|b| b == true));
    let v = ok_json(&["realize", "--kind", "bounded", "--depth", "0"]);
    assert_eq!(v["components"], serde_json::json!([]));
    assert_eq!(v["compositum"]["degree"], 1);
}

#[test]
fn dedekind_command() {
    let v = ok_json(&["dedekind", "--poly", "1,0,1", "--prime", "2"]);
    assert_eq!(v["index_divisible"], false);
    assert_eq!(v["splitting"], serde_json::json!([{"e": 2, "f": 1}]));
    let v = ok_json(&["dedekind", "--poly", "-8,-2,-1,1", "--prime", "2"]);
    assert_eq!(v["index_divisible"], true);
    assert_eq!(v["splitting"], Value::Null);
    let v = ok_json(&["dedekind", "--poly", "-1,1", "--prime", "5"]);
    assert_eq!(v["splitting"], serde_json::json!([{"e": 1, "f": 1}]));
}

#[test]
fn dedekind_family_scan() {
    let dir = std::env::temp_dir().join(format!("splitfield-family-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("family.json");
    let family: Vec<Value> = (2..=6u32)
        .map(|n| {
            let phi = splitfield::IntPolynomial::cyclotomic(1 << n);
            serde_json::json!({"label": format!("Phi_{}", 1 << n), "polynomial": phi})
        })
        .collect();
    std::fs::write(&path, serde_json::to_string(&family).unwrap()).unwrap();
    let v = ok_json(&["dedekind", "--family", path.to_str().unwrap(), "--prime", "2", "--bound", "1"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    assert!(entries.iter().all(|e| e["index_divisible"] == false));
    // degrees above 2^2 * 1 with 2 index-free: the family lives in a field of unbounded local degree at 2
    assert_eq!(v["degree_bound"], "4");
    assert_eq!(v["refutation_witnesses"], serde_json::json!(["Phi_16", "Phi_32", "Phi_64"]));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn eisenstein_command() {
    for (p, disc) in [("2", "148"), ("3", "621"), ("5", "3325")] {
        let v = ok_json(&["eisenstein-disc", "--p", p]);
        assert_eq!(v["discriminant"], disc);
        assert_eq!(v["eisenstein"], true);
        assert_eq!(v["matches_formula"], true);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["lambda", "--count", "2"]), 0);
    assert_eq!(code(&["local-degree", "--conductor", "7", "--prime", "9"]), 2);
    assert_eq!(code(&["local-degree", "--conductor", "0", "--prime", "2"]), 2);
    assert_eq!(code(&["local-degree", "--conductor", "7", "--subgroup", "14", "--prime", "2"]), 2);
    assert_eq!(code(&["dedekind", "--poly", "1,0,2", "--prime", "2"]), 2);
    assert_eq!(code(&["dedekind", "--poly", "1,x,1", "--prime", "2"]), 2);
    assert_eq!(code(&["construct-cyclic", "--q", "4"]), 2);
    assert_eq!(code(&["construct-cyclic", "--q", "3", "--avoid", "{not json"]), 2);
    assert_eq!(code(&["lambda"]), 2);
    assert_eq!(code(&["construct-cyclic", "--q", "7", "--split", "2,3,5", "--prime-search-bound", "50"]), 3);
    assert_eq!(code(&["local-degree", "--conductor", "49", "--prime", "2", "--modulus-cap", "10"]), 4);
    assert_eq!(code(&["lambda", "--count", "1", "--modulus-cap", "0"]), 2);
}

#[test]
fn environment_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_splitfield"))
        .args(["construct-cyclic", "--q", "7", "--split", "2,3,5"])
        .env("PRIME_SEARCH_BOUND", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_splitfield"))
        .args(["lambda", "--count", "2"])
        .env("OUTPUT_FORMAT", "table")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[0].factors_of_q_minus_1  []\n[0].q                     2\n[1].factors_of_q_minus_1  [2]\n[1].q                     3\n");
}

#[test]
fn byte_identical_reruns() {
    for args in [
        vec!["realize", "--kind", "bounded", "--depth", "2"],
        vec!["dedekind", "--poly", "1,1,1,1,1,1,1", "--prime", "2", "--seed", "9"],
        vec!["construct-cyclic", "--q", "5", "--split", "2,3,7"],
    ] {
        let a = splitfield(&args);
        let b = splitfield(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let s1 = splitfield(&["dedekind", "--poly", "1,1,1,1,1,1,1", "--prime", "2", "--seed", "1"]);
    let s2 = splitfield(&["dedekind", "--poly", "1,1,1,1,1,1,1", "--prime", "2", "--seed", "2"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn field_command_canonicalizes() {
    let doc = r#"{"conductor": 24, "subgroup_generators": [5, 13], "degree": 2, "canonical": false}"#;
    let v = ok_json(&["field", "--doc", doc, "--split-at", "2,3"]);
    assert_eq!(v["conductor"], 4);
    assert_eq!(v["splitting"][0]["e"], 2);
    let bad = r#"{"conductor": 24, "subgroup_generators": [5, 13], "degree": 2}"#;
    assert_eq!(code(&["field", "--doc", bad]), 2);
    let wrong_degree = r#"{"conductor": 7, "subgroup_generators": [], "degree": 3}"#;
    assert_eq!(code(&["field", "--doc", wrong_degree]), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn field_documents_round_trip(m in 1u64..=400, gens in prop::collection::vec(1u64..400, 0..=3)) {
        let lim = Limits::default();
        let gens: Vec<u128> = gens.iter().map(|&g| g % m).filter(|&g| splitfield::arith::gcd(g, m) == 1).map(u128::from).collect();
        let field = AbelianField::from_generators(m as u128, &gens, lim).unwrap();
        let text = serde_json::to_string(&FieldDocument::from_field(&field)).unwrap();
        prop_assert_eq!(&text, &serde_json::to_string(&field).unwrap());
        let back = FieldDocument::parse(&text).unwrap().to_field(lim).unwrap();
        prop_assert_eq!(back, field);
    }
}
