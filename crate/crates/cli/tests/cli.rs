use std::path::Path;
use std::process::{Command, Output};

use dlcusp_core::chartable::{validate_table, CharTableDocument};
use serde_json::Value;

fn dlcusp(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlcusp"))
        .args(args)
        .env("DLCUSP_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn cache() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn non_prime_is_a_usage_error() {
    let c = cache();
    for args in [["chartable", "6"], ["decompose", "5"], ["classes", "9"]] {
        let o = dlcusp(c.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("p must be prime ≥ 7"), "{}", stderr(&o));
    }
}

#[test]
fn bad_ranges_are_usage_errors() {
    let c = cache();
    for args in [
        vec!["verify", "--mod12", "3"],
        vec!["verify", "--range", "20", "10"],
        vec!["verify", "--range", "3", "10"],
        vec!["verify", "--range", "24", "28"],
        vec!["papertable", "--reading", "both"],
        vec!["verify", "--jobs", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(dlcusp(c.path(), &args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn classes_at_seven() {
    let c = cache();
    let o = dlcusp(c.path(), &["classes", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group_order"], 336);
    let sizes: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [1, 1, 24, 24, 24, 24, 56, 56, 42, 42, 42]);
    assert_eq!(sizes.iter().sum::<u64>(), 336);
}

#[test]
fn chartable_json_round_trips() {
    let c = cache();
    let o = dlcusp(c.path(), &["chartable", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = CharTableDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.p, 7);
    let report = validate_table(&doc.into_table().unwrap()).unwrap();
    assert_eq!(report.count, 11);
    assert_eq!(report.sum_degree_squares, 336);
}

#[test]
fn decompose_seven_is_one_nonsplit_term() {
    let c = cache();
    let o = dlcusp(c.path(), &["decompose", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"], true);
    assert_eq!(v["table_match"], true);
    let nonzero: Vec<&Value> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["c"] != "0")
        .collect();
    assert_eq!(nonzero.len(), 1);
    let e = nonzero[0];
    assert_eq!(
        (&e["torus"], &e["k_orbit"], &e["set_label"], &e["c"]),
        (&"nonsplit".into(), &4.into(), &"C".into(), &"-1".into())
    );
}

// The printed A_s entry at 1 mod 12 is one too large; the run must say so.
#[test]
fn decompose_thirteen_reports_the_a_s_difference() {
    let c = cache();
    let o = dlcusp(c.path(), &["decompose", "13", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"], true);
    assert_eq!(v["table_match"], false);
    let diffs = v["diffs"].as_array().unwrap();
    assert_eq!(diffs.len(), 1);
    assert_eq!(diffs[0]["cell"], "A_s");
    assert_eq!(diffs[0]["expected"], "2");
    assert_eq!(diffs[0]["computed"], "1");
    let line: Value = serde_json::from_str(stderr(&o).lines().next().unwrap()).unwrap();
    assert_eq!(line["p"], 13);
}

#[test]
fn both_readings_at_23() {
    let c = cache();
    let o = dlcusp(
        c.path(),
        &["decompose", "23", "--reading", "both", "--format", "json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["matching_readings"],
        serde_json::json!(["primary", "alternative"])
    );
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
}

#[test]
fn only_primary_matches_at_19() {
    let c = cache();
    let o = dlcusp(
        c.path(),
        &["decompose", "19", "--reading", "both", "--format", "json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matching_readings"], serde_json::json!(["primary"]));
    let o = dlcusp(c.path(), &["decompose", "19", "--reading", "alternative"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_seven_mod_twelve_passes() {
    let c = cache();
    let o = dlcusp(
        c.path(),
        &[
            "verify",
            "--mod12",
            "7",
            "--format",
            "json",
            "--no-timestamp",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    let ps: Vec<u64> = v["primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["p"].as_u64().unwrap())
        .collect();
    assert_eq!(ps, [7, 19, 31, 43, 67, 79]);
    assert!(v.get("generated_at").is_none());
}

#[test]
fn verify_over_thirteen_fails_with_a_diff() {
    let c = cache();
    let o = dlcusp(
        c.path(),
        &["verify", "--range", "11", "13", "--format", "json"],
    );
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["generated_at"].is_string());
    assert_eq!(v["primes"][0]["pass"], true);
    assert_eq!(v["primes"][1]["pass"], false);
    assert_eq!(v["primes"][1]["degree_identity"], true);
    assert_eq!(v["primes"][1]["pipeline_agrees"], true);
    let lines: Vec<Value> = stderr(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["p"], 13);
    assert_eq!(lines[0]["diffs"][0]["cell"], "A_s");
}

// p = 23 is 23 mod 24, where the split exceptional constituents have
// multiplicity 0 rather than an odd number.
#[test]
fn corollaries_fail_at_23_mod_24() {
    let c = cache();
    let o = dlcusp(
        c.path(),
        &[
            "corollaries",
            "--range",
            "23",
            "30",
            "--format",
            "json",
            "--no-timestamp",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p23 = &v["primes"][0];
    assert_eq!(p23["p"], 23);
    assert_eq!(p23["pass"], false);
    assert_eq!(p23["all_appear"]["holds"], true);
    let odd = &p23["odd_multiplicity"];
    assert_eq!(
        (&odd["split_plus"], &odd["split_minus"]),
        (&"0".into(), &"0".into())
    );
    assert_eq!(odd["split_alpha_trivial_on_z"], false);
    assert_eq!(odd["nonsplit_plus"], "3");
    assert_eq!(odd["nonsplit_both_odd"], true);
    assert_eq!(v["primes"][1]["pass"], true);
}

#[test]
fn all_appear_from_29_to_43() {
    let c = cache();
    let o = dlcusp(c.path(), &["corollaries", "--range", "29", "43"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn papertable_names_the_defective_cells() {
    let c = cache();
    let o = dlcusp(c.path(), &["papertable", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matches"], false);
    assert_eq!(v["linearity_passed"], true);
    let cells: Vec<(String, u64)> = v["differences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| {
            (
                d["cell"].as_str().unwrap().to_string(),
                d["residue_mod12"].as_u64().unwrap(),
            )
        })
        .collect();
    assert!(cells.contains(&("A_s".into(), 1)));
    assert!(cells.contains(&("A_a".into(), 5)));
    assert!(cells.contains(&("D_a".into(), 5)));
    let text = dlcusp(c.path(), &["papertable"]);
    assert!(stderr(&text).contains("A_s at 1 mod 12"));
    assert!(stdout(&text).starts_with("| "));
}

#[test]
fn cached_runs_match_cold_runs() {
    let c = cache();
    let args = [
        "verify",
        "--range",
        "7",
        "31",
        "--format",
        "json",
        "--no-timestamp",
    ];
    let cold = dlcusp(c.path(), &args);
    assert!(c.path().join("sl2_p31.json").exists());
    let warm = dlcusp(c.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stderr, warm.stderr);
    assert_eq!(cold.status.code(), warm.status.code());
    let fresh = dlcusp(
        c.path(),
        &[
            "verify",
            "--range",
            "7",
            "31",
            "--format",
            "json",
            "--no-timestamp",
            "--no-cache",
        ],
    );
    assert_eq!(cold.stdout, fresh.stdout);
}

#[test]
fn corrupt_cache_entries_are_rebuilt() {
    let c = cache();
    std::fs::write(c.path().join("sl2_p11.json"), "{not json").unwrap();
    let o = dlcusp(c.path(), &["chartable", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let on_disk = std::fs::read_to_string(c.path().join("sl2_p11.json")).unwrap();
    assert!(CharTableDocument::from_json(&on_disk).is_ok());
}

#[test]
fn cache_location_flags() {
    let env_dir = cache();
    let flag_dir = cache();
    dlcusp(env_dir.path(), &["chartable", "7"]);
    assert!(env_dir.path().join("sl2_p7.json").exists());
    let flag = flag_dir.path().to_str().unwrap();
    dlcusp(env_dir.path(), &["chartable", "11", "--cache-dir", flag]);
    assert!(flag_dir.path().join("sl2_p11.json").exists());
    assert!(!env_dir.path().join("sl2_p11.json").exists());
    dlcusp(env_dir.path(), &["chartable", "13", "--no-cache"]);
    assert!(!env_dir.path().join("sl2_p13.json").exists());
}

#[test]
fn csv_and_markdown_outputs() {
    let c = cache();
    let o = dlcusp(c.path(), &["decompose", "7", "--format", "csv"]);
    let text = stdout(&o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "p",
            "reading",
            "torus",
            "k_orbit",
            "set_label",
            "c",
            "expected",
            "match"
        ]
    );
    assert!(r.records().all(|rec| &rec.unwrap()[7] == "true"));
    let md = stdout(&dlcusp(c.path(), &["classes", "7", "--format", "markdown"]));
    assert_eq!(md.lines().count(), 2 + 11);
}
