use std::process::{Command, Output};

use serde_json::Value;

fn kr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kr")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = kr(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn set_c3_node_2() {
    let out = kr(&["set", "--algebra", "C3", "--node", "2", "--level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"[{"weight":[0,2,0],"grade":0},{"weight":[2,0,0],"grade":1},{"weight":[0,0,0],"grade":2}]"#
    );
}

#[test]
fn set_type_a_is_single_weight() {
    let v = json(&["set", "--algebra", "A2", "--node", "1", "--level", "3"]);
    assert_eq!(v, serde_json::json!([{"weight": [3, 0], "grade": 0}]));
}

#[test]
fn set_twisted_marker_and_flag_agree() {
    let a = json(&["set", "--algebra", "A4~", "--node", "2", "--level", "4"]);
    let b = json(&["set", "--algebra", "A4", "--twisted", "--node", "2", "--level", "4"]);
    assert_eq!(a, b);
    let grades: Vec<u64> = a.as_array().unwrap().iter().map(|e| e["grade"].as_u64().unwrap()).collect();
    assert_eq!(grades, [0, 1, 2]);
}

#[test]
fn set_is_sorted_by_grade_then_weight() {
    let v = json(&["set", "--algebra", "B4", "--node", "3", "--level", "2"]);
    let keys: Vec<(u64, Vec<i64>)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let w = e["weight"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            (e["grade"].as_u64().unwrap(), w)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn char_dimension_polynomials() {
    let c2 = json(&["char", "--algebra", "C2", "--node", "1", "--level", "2"]);
    assert_eq!(c2["dimension_polynomial"], serde_json::json!([10, 1]));
    assert_eq!(c2["total_dimension"], 11);
    assert!(c2.get("g0").is_none());
    let b4 = json(&["char", "--algebra", "B4", "--node", "3", "--level", "1"]);
    assert_eq!(b4["dimension_polynomial"], serde_json::json!([84, 9]));
}

#[test]
fn char_twisted_reports_fixed_points() {
    let v = json(&["char", "--algebra", "D4~", "--node", "2", "--level", "1"]);
    assert_eq!(v["g0"], "B3");
    assert_eq!(v["twisted"], true);
    let grades = v["grades"].as_array().unwrap();
    assert_eq!(grades.len(), 3);
    let tops: Vec<&Value> = grades.iter().map(|g| &g["constituents"][0]["weight"]).collect();
    assert_eq!(tops, [&serde_json::json!([0, 1, 0]), &serde_json::json!([1, 0, 0]), &serde_json::json!([0, 0, 0])]);
    assert_eq!(v["dimension_polynomial"], serde_json::json!([21, 7, 1]));
}

#[test]
fn char_total_is_sum_of_constituents() {
    let v = json(&["char", "--algebra", "C3", "--node", "2", "--level", "4"]);
    let mut total = 0;
    for g in v["grades"].as_array().unwrap() {
        let piece: u64 = g["constituents"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["dimension"].as_u64().unwrap() * c["multiplicity"].as_u64().unwrap())
            .sum();
        assert_eq!(g["dimension"].as_u64().unwrap(), piece);
        total += piece;
    }
    assert_eq!(v["total_dimension"].as_u64().unwrap(), total);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["set", "--algebra", "E6", "--node", "1", "--level", "1"][..],
        &["set", "--algebra", "C3", "--node", "4", "--level", "1"],
        &["char", "--algebra", "C3", "--node", "1", "--level", "0"],
        &["set", "--algebra", "C1~", "--node", "1", "--level", "1"],
        &["verify", "nonsense"],
        &["verify", "homs", "--algebra", "B2", "--node", "3"],
    ] {
        assert_eq!(kr(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_chains_up_to_rank_5() {
    let out = kr(&["verify", "chains", "--max-rank", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));
}

#[test]
fn verify_homs_shows_vanishing() {
    let out = kr(&["verify", "homs", "--algebra", "C3", "--node", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Hom(wedge2(g) (x) V[0,2,0], V[0,0,0]): dim 0"), "{text}");
}

#[test]
fn verify_modforge_c2_level_4() {
    let out = kr(&["verify", "modforge", "--algebra", "C2", "--node", "1", "--level", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("submodule 46 of 121"));
}

#[test]
fn verify_wedge_and_tensor_bound() {
    for suite in ["wedge", "tensor-bound"] {
        let out = kr(&["verify", suite, "--max-rank", "4", "--max-level", "3"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn dimension_guard_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_kr"))
        .args(["verify", "modforge", "--algebra", "C2", "--node", "1", "--level", "4"])
        .env("KR_MAX_DIM", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[SKIP]"));
}
