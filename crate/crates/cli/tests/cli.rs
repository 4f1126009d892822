use std::process::{Command, Output};

fn hallcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallcx")).args(args).output().expect("spawn hallcx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

#[test]
fn enumerate_a2_has_five_rows() {
    let o = hallcx(&["enumerate", "--quiver", "A2", "--p", "2", "--max-dim", "1,1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], "0");
}

#[test]
fn enumerate_zero_bound_has_one_row() {
    let o = hallcx(&["enumerate", "--max-dim", "0,0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_rows(&o).len(), 1);
}

#[test]
fn enumerate_json_matches_csv() {
    let o = hallcx(&["enumerate", "--p", "3", "--max-dim", "1,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let simple = rows.iter().find(|r| r["key"] == "[0,1]#0+[1,0]#0").unwrap();
    assert_eq!(simple["aut"], "4");
}

#[test]
fn quiver_from_file() {
    let dir = std::env::temp_dir().join(format!("hallcx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("a3.json");
    std::fs::write(&good, r#"{"vertices": 3, "arrows": [[1, 2], [2, 3]]}"#).unwrap();
    let o = hallcx(&["enumerate", "--quiver", good.to_str().unwrap(), "--max-dim", "1,1,1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    // 0, three simples, two length-two intervals, the projective P1, and the sums among them.
    assert!(csv_rows(&o).len() > 7);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"vertices\": 2, \"arrows\": [[1,").unwrap();
    let o = hallcx(&["enumerate", "--quiver", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let cyclic = dir.join("cyclic.json");
    std::fs::write(&cyclic, r#"{"vertices": 2, "arrows": [[1, 2], [2, 1]]}"#).unwrap();
    let o = hallcx(&["enumerate", "--quiver", cyclic.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bad_config_exits_two() {
    assert_eq!(hallcx(&["enumerate", "--p", "4"]).status.code(), Some(2));
    assert_eq!(hallcx(&["enumerate", "--max-dim", "1,1,1"]).status.code(), Some(2));
    assert_eq!(hallcx(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(hallcx(&["verify", "rel-5-5", "--levels", "nonsense"]).status.code(), Some(2));
}

#[test]
fn product_of_simples_has_two_rows() {
    let o = hallcx(&["product", "[1,0]#0", "[0,1]#0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert_eq!((r[3].as_str(), r[4].as_str()), ("1", "1"));
    }
}

#[test]
fn product_with_identity_echoes() {
    let o = hallcx(&["product", "0", "[1,1]#0", "--format", "csv"]);
    assert_eq!(csv_rows(&o), vec![vec!["0", "[1,1]#0", "[1,1]#0", "1", "1"]]);
    let o = hallcx(&["product", "S<P1>", "0", "--ambient", "window", "--format", "csv"]);
    assert_eq!(csv_rows(&o), vec![vec!["S<P1>", "0", "S<P1>", "1", "1"]]);
}

#[test]
fn twisted_product_scales_by_euler_form() {
    // <S1, S2> = -1 on A2, so every coefficient is divided by p.
    let plain = csv_rows(&hallcx(&["product", "[1,0]#0", "[0,1]#0", "--p", "3", "--format", "csv"]));
    let twisted = csv_rows(&hallcx(&["product", "[1,0]#0", "[0,1]#0", "--p", "3", "--twisted", "--format", "csv"]));
    assert_eq!(plain.len(), 2);
    assert_eq!(twisted.len(), 2);
    for (a, b) in plain.iter().zip(&twisted) {
        assert_eq!(a[2], b[2]);
        assert_eq!((a[4].as_str(), b[4].as_str()), ("1", "3"));
        assert_eq!(a[3], b[3]);
    }
}

#[test]
fn unknown_key_is_rejected() {
    assert_eq!(hallcx(&["product", "[1,0,0]#0", "[0,1]#0"]).status.code(), Some(2));
    assert_eq!(hallcx(&["product", "garbage", "[0,1]#0"]).status.code(), Some(2));
}

#[test]
fn verify_chi_suite_passes() {
    let o = hallcx(&["verify", "thm-3-4", "--p", "2", "--m", "2", "--max-dim", "1,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "thm-3-4");
    assert_eq!(v["pass"], true);
    assert!(!v["instances"].as_array().unwrap().is_empty());
}

#[test]
fn verify_empty_grid_warns() {
    let o = hallcx(&["verify", "rel-5-5", "--levels", "1..0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn integration_needs_two_terms() {
    let o = hallcx(&["verify", "integration-7", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tiny_budget_exits_three() {
    let o = hallcx(&["verify", "assoc", "--budget", "2", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "basis-6-1", "--samples", "10", "--seed", "7"];
    let (a, b) = (hallcx(&args), hallcx(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn out_file_and_csv_report() {
    let path = std::env::temp_dir().join(format!("hallcx-report-{}.csv", std::process::id()));
    let o = hallcx(&["verify", "psi-hat", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("relation,params,pass,lhs,rhs"));
    std::fs::remove_file(&path).ok();
}
