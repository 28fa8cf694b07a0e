use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rowlab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rowlab"))
        .args(args)
        .env("ROWLAB_CACHE_DIR", cache)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn orbits_of_the_three_by_three_rectangle() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["orbits", "--poset", "rect:3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mut sizes: Vec<u64> = v["sizes"].as_array().unwrap().iter().map(|s| s.as_u64().unwrap()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [2, 6, 6, 6]);
    assert_eq!(v["ideals"], 20);
}

#[test]
fn toggles_method_gives_the_same_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let a = json(&rowlab(dir.path(), &["orbits", "--poset", "trap:2,4", "--no-cache"]));
    let b = json(&rowlab(dir.path(), &["orbits", "--poset", "trap:2,4", "--method", "toggles", "--no-cache"]));
    assert_eq!(a["sizes"], b["sizes"]);
}

#[test]
fn commuting_square_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["verify", "commute", "--pair", "rect-trap", "--a", "3", "--b", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["violation_count"], 0);
    assert_eq!(v["commutes"], true);
}

#[test]
fn exceptional_pair_orbits_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["verify", "commute", "--pair", "q-i2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = rowlab(dir.path(), &["verify", "commute", "--pair", "og612-h3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oversized_poset_is_refused_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["orbits", "--poset", "trap:99,99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn bad_arguments_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(rowlab(dir.path(), &["orbits", "--poset", "cube:3"]).status.code(), Some(2));
    assert_eq!(rowlab(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(rowlab(dir.path(), &["verify", "commute", "--pair", "rect-trap", "--a", "2"]).status.code(), Some(2));
}

#[test]
fn refuted_claim_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["lp", "--poset", "trap:2,3", "--mode", "elements"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "COUNTEREXAMPLE");
    assert_eq!(v["min"], "13/11");
    assert_eq!(v["max"], "11/9");
    assert_eq!(v["target"], "6/5");
}

#[test]
fn antichain_lp_on_a_small_trapezoid_is_pinned() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["lp", "--poset", "trap:2,3", "--mode", "antichains"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["min"], "6/5");
    assert_eq!(v["max"], "6/5");
}

#[test]
fn homomesy_csv_has_one_row_per_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["--format", "csv", "homomesy", "--poset", "rect:2,3", "--stat", "ddeg"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("orbit_id,size,ddeg_sum,average_as_fraction"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.ends_with(",6/5")));
}

#[test]
fn cardinality_is_homomesic_on_the_square_but_not_the_trapezoid() {
    let dir = tempfile::tempdir().unwrap();
    let rect = rowlab(dir.path(), &["homomesy", "--poset", "rect:2,2", "--stat", "cardinality"]);
    assert_eq!(rect.status.code(), Some(0));
    // T(2,2) is a chain of two with two maxima on top. Orbits by hand:
    // sizes 0,1,2,4 (average 7/4) and the two three-element ideals (average 3).
    let out = rowlab(dir.path(), &["--format", "csv", "homomesy", "--poset", "trap:2,2", "--stat", "cardinality"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "orbit_id,size,cardinality_sum,average_as_fraction\n0,4,7,7/4\n1,2,6,3\n");
}

#[test]
fn rook_check_on_four_five() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["rook-check", "--a", "4", "--b", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn phi_on_an_ideal_of_the_small_square() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["phi", "--ideal", "(1,1) (2,1)", "--a", "2", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ideal"], serde_json::json!(["(1,1)", "(1,2)", "(1,3)"]));
}

#[test]
fn phi_reads_a_tableau_file_and_records_its_hash() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    let text = r#"{"shape":{"kind":"ordinary","outer":[3,3,3],"inner":[]},"entries":[[1,3,4],[2,4,5],[3,5,6]],"ell":6}"#;
    fs::write(&file, text).unwrap();
    let out_dir = dir.path().join("out");
    let out = rowlab(dir.path(), &["--out", out_dir.to_str().unwrap(), "phi", "--tableau", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    let digest = manifest["inputs"][file.display().to_string()].as_str().unwrap().to_string();
    assert_eq!(digest.len(), 64);
    let result: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("phi.json")).unwrap()).unwrap();
    assert_eq!(result["output"]["entries"], serde_json::json!([[1, 2, 3, 4, 5], [4, 5, 6], [6]]));
}

#[test]
fn cache_hit_then_tamper_then_recompute() {
    let dir = tempfile::tempdir().unwrap();
    let first = rowlab(dir.path(), &["orbits", "--poset", "rect:2,3"]);
    assert!(!String::from_utf8_lossy(&first.stderr).contains("cache: hit"));
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);

    let second = rowlab(dir.path(), &["orbits", "--poset", "rect:2,3"]);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache: hit"));
    assert_eq!(first.stdout, second.stdout);

    // Swap two ideals inside an orbit: still ideals, but the rowmotion spot check fails.
    let path = &entries[0];
    let mut entry: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let orbit = entry["orbits"][0].as_array_mut().unwrap();
    orbit.swap(0, 1);
    fs::write(path, serde_json::to_vec(&entry).unwrap()).unwrap();
    let third = rowlab(dir.path(), &["orbits", "--poset", "rect:2,3"]);
    let err = String::from_utf8_lossy(&third.stderr);
    assert!(err.contains("invalid"), "{err}");
    assert!(!err.contains("cache: hit"));
    assert_eq!(first.stdout, third.stdout);

    let fourth = rowlab(dir.path(), &["orbits", "--poset", "rect:2,3"]);
    assert!(String::from_utf8_lossy(&fourth.stderr).contains("cache: hit"));
}

#[test]
fn garbage_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    rowlab(dir.path(), &["orbits", "--poset", "trap:2,2"]);
    let path = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    fs::write(&path, "not json").unwrap();
    let out = rowlab(dir.path(), &["orbits", "--poset", "trap:2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid"));
}

#[test]
fn distinct_posets_and_actions_get_distinct_keys() {
    let dir = tempfile::tempdir().unwrap();
    rowlab(dir.path(), &["orbits", "--poset", "rect:2,3"]);
    rowlab(dir.path(), &["orbits", "--poset", "rect:2,4"]);
    rowlab(dir.path(), &["orbits", "--poset", "trap:2,3"]);
    rowlab(dir.path(), &["orbits", "--poset", "trap:2,3", "--method", "toggles"]);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 4);
}

#[test]
fn outputs_are_byte_identical_under_a_fixed_epoch() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let code = rowlab(dir.path(), &["--out", out.to_str().unwrap(), "--format", "ascii", "homomesy", "--poset", "trap:3,3"]).status.code();
        assert_eq!(code, Some(0));
    }
    for file in ["homomesy.txt", "manifest.json"] {
        assert_eq!(fs::read(a.join(file)).unwrap(), fs::read(b.join(file)).unwrap(), "{file}");
    }
    let manifest: Value = serde_json::from_slice(&fs::read(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["timestamp"], "2023-11-14T22:13:20Z");
    assert_eq!(manifest["command"], "homomesy");
    assert_eq!(manifest["result"]["exit_code"], 0);
}

#[test]
fn small_report_passes_and_writes_both_forms() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("r");
    let out = rowlab(
        dir.path(),
        &["--out", out_dir.to_str().unwrap(), "report", "--max-sum", "4", "--max-boxes", "5", "--samples", "100"],
    );
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&fs::read(out_dir.join("report.json")).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 14);
    assert!(checks.iter().all(|c| c["status"] == "PASS"), "{report:#}");
    let text = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert_eq!(text.matches("[PASS]").count(), 14);
}

#[test]
fn single_check_by_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = rowlab(dir.path(), &["verify", "check", "phi-trace"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "PASS");
    assert_eq!(rowlab(dir.path(), &["verify", "check", "99"]).status.code(), Some(2));
}
