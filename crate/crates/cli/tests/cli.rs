use bhl_core::coxeter::CoxeterGroup;
use bhl_core::sigma::SigmaEngine;
use std::process::{Command, Output};

fn bhl(args: &[&str]) -> Output {
    bhl_env(args, &[])
}

fn bhl_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bhl"));
    cmd.args(args).env_remove("BHL_CACHE_DIR").env_remove("BHL_MAX_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("run bhl")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "bhl failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn group(t: &str) -> CoxeterGroup {
    CoxeterGroup::new(t.parse().unwrap()).unwrap()
}

#[test]
fn sigma_text_matches_library_rendering() {
    let g = group("A2");
    let engine = SigmaEngine::new(&g);
    let p = |s: &str| g.parse_element(s).unwrap();
    let expected = format!("σ = {}\n", engine.sigma(p("1"), p("1"), p("12")));
    let out = bhl(&["sigma", "--type", "A2", "-u", "1", "-v", "1", "-w", "12", "--format", "text"]);
    assert_eq!(stdout(&out), expected);
}

#[test]
fn sigma_json_fields() {
    let out = bhl(&["sigma", "--type", "A2", "-u", "e", "-v", "1", "-w", "e", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sigma"], "(1 - q^-1*x1) / (1 - x1)");
    assert_eq!(v["is_gk"], true);
    let out = bhl(&["sigma", "--type", "A2", "-u", "12", "-v", "e", "-w", "e", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sigma"], "0");
    assert!(v["is_gk"].is_null());
}

#[test]
fn classify_a2_json() {
    let out = bhl(&["classify", "--type", "A2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["type"], "A2");
    assert_eq!(v["total"], 216);
    assert_eq!(v["nonzero"], 167);
    assert_eq!(v["gk"], 147);
    let exceptions = v["exceptions"].as_array().unwrap();
    assert_eq!(exceptions.len(), 20);
    assert!(exceptions.iter().any(|t| t["u"] == "12" && t["v"] == "121" && t["w"] == "12"));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 5);
}

#[test]
fn printed_words_round_trip() {
    for t in ["A2", "B2", "G2"] {
        let g = group(t);
        let csv = stdout(&bhl(&["classify", "--type", t, "--format", "csv"]));
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("type,u,v,w,is_gk,sigma0"));
        let mut rows = 0;
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[0], t);
            for word in &fields[1..4] {
                let x = g.parse_element(word).unwrap();
                assert_eq!(&g.format_element(x), word);
            }
            rows += 1;
        }
        assert!(rows > 0);
    }
    let g = group("B3");
    let info = stdout(&bhl(&["group", "--type", "B3", "--info"]));
    for word in info.lines().filter_map(|l| l.split("reflection ").nth(1)) {
        let x = g.parse_element(word).unwrap();
        assert_eq!(g.format_element(x), word);
        assert_eq!(g.mul(x, x), g.identity());
    }
    let meet = stdout(&bhl(&["meet", "--type", "A2", "-u", "12", "-w", "21"]));
    assert_eq!(meet, "1\n");
    let vmin = stdout(&bhl(&["vmin", "--type", "A2", "-u", "12", "-w", "21"]));
    assert_eq!(vmin, "2\n");
}

#[test]
fn group_summary() {
    let out = stdout(&bhl(&["group", "--type", "B3"]));
    assert_eq!(out, "type: B3\norder: 48\nlengths: 1 3 5 7 8 8 7 5 3 1\n");
}

#[test]
fn output_independent_of_jobs() {
    for format in ["json", "csv"] {
        let one = stdout(&bhl(&["classify", "--type", "B2", "--format", format, "--jobs", "1"]));
        let many = stdout(&bhl(&["classify", "--type", "B2", "--format", format, "--jobs", "4"]));
        assert_eq!(one, many);
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let direct = stdout(&bhl(&["classify", "--type", "C2"]));
    let out = bhl(&["classify", "--type", "C2", "--out", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn cache_hit_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold = stdout(&bhl(&["classify", "--type", "B2", "--format", "csv"]));
    let first = stdout(&bhl(&["classify", "--type", "B2", "--format", "csv", "--cache", cache]));
    let file = dir.path().join("B2.rtable");
    let written = std::fs::read_to_string(&file).unwrap();
    assert!(written.starts_with("BHLCACHE v1\n"));
    let warm = stdout(&bhl(&["classify", "--type", "B2", "--format", "csv", "--cache", cache]));
    assert_eq!(cold, first);
    assert_eq!(cold, warm);
    // the environment variable is the default cache location
    let via_env = stdout(&bhl_env(&["classify", "--type", "B2", "--format", "csv"], &[("BHL_CACHE_DIR", cache)]));
    assert_eq!(cold, via_env);
}

#[test]
fn bad_cache_falls_back() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold = stdout(&bhl(&["classify", "--type", "B2"]));

    std::fs::write(dir.path().join("B2.rtable"), "BHLCACHE v0\n{}").unwrap();
    let out = bhl(&["classify", "--type", "B2", "--cache", cache]);
    assert_eq!(stdout(&out), cold);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ignoring cache"));

    // a table for another group under this group's name
    stdout(&bhl(&["classify", "--type", "C2", "--cache", cache]));
    let c2 = std::fs::read_to_string(dir.path().join("C2.rtable")).unwrap();
    std::fs::write(dir.path().join("B2.rtable"), c2).unwrap();
    let out = bhl(&["classify", "--type", "B2", "--cache", cache]);
    assert_eq!(stdout(&out), cold);
    assert!(String::from_utf8_lossy(&out.stderr).contains("fingerprint"));

    // the fallback rewrote a good cache
    let out = bhl(&["classify", "--type", "B2", "--cache", cache]);
    assert_eq!(stdout(&out), cold);
    assert!(out.stderr.is_empty());
}

#[test]
fn verify_passes() {
    let out = bhl(&["verify", "--type", "B2", "--suite", "all"]);
    let text = stdout(&out);
    assert!(text.lines().count() > 20);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.starts_with("    ")));
    let out = bhl(&["verify", "--type", "A2", "--suite", "main-theorem", "--jobs", "2"]);
    assert!(stdout(&out).starts_with("PASS main-theorem"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["sigma", "--type", "X9", "-u", "1", "-v", "1", "-w", "1"],
        &["sigma", "--type", "A2", "-u", "13", "-v", "1", "-w", "1"],
        &["sigma", "--type", "A2", "-u", "", "-v", "1", "-w", "1"],
        &["verify", "--type", "A2", "--suite", "nonsense"],
        &["classify", "--type", "A2", "--format", "xml"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = bhl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn caps_exit_2() {
    let out = bhl_env(&["group", "--type", "A3"], &[("BHL_MAX_ORDER", "10")]);
    assert_eq!(out.status.code(), Some(2));
    let out = bhl(&["classify", "--type", "A4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = bhl_env(&["classify", "--type", "A2"], &[("BHL_MAX_ORDER", "many")]);
    assert_eq!(out.status.code(), Some(2));
}
