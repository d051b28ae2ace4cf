use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use wmd_cli::output::SegmentDoc;
use wmd_core::{propagate_path, Configuration, VehicleSpec};

fn wmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmd"))
        .args(args)
        .env("WMD_THREADS", "1")
        .output()
        .expect("spawn wmd")
}

const HALF_TURN: &[&str] = &["--start", "0,0,0", "--goal", "0,0,3.141592653589793", "--rl", "1", "--rr", "1"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

fn plan_json(args: &[&str]) -> Value {
    let mut full = vec!["plan"];
    full.extend_from_slice(args);
    let out = wmd(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn segments(doc: &Value) -> Vec<SegmentDoc> {
    serde_json::from_value(doc["best"]["segments"].clone()).unwrap()
}

#[test]
fn plan_weighted_half_turn() {
    let doc = plan_json(&with(HALF_TURN, &["--mul", "1", "--mur", "1"]));
    assert_eq!(doc["mode"], "weighted");
    assert_eq!(doc["best"]["family"], "LSRSL");
    let cost = doc["best"]["cost"].as_f64().unwrap();
    assert!((cost - 13.377).abs() < 0.01, "{cost}");
    let segs = segments(&doc);
    assert_eq!(segs.len(), 5);
    assert_eq!(segs[0].measure_unit, "rad");
    assert_eq!(segs[1].measure_unit, "m");
}

#[test]
fn plan_classical_half_turn() {
    let doc = plan_json(HALF_TURN);
    assert_eq!(doc["mode"], "classical");
    assert_eq!(doc["best"]["family"], "LRL");
    let cost = doc["best"]["cost"].as_f64().unwrap();
    assert!((cost - 7.33038).abs() < 1e-4, "{cost}");
}

#[test]
fn plan_same_pose_is_empty() {
    let doc = plan_json(&["--start", "1,2,0.5", "--goal", "1,2,0.5", "--rl", "1", "--rr", "2", "--mul", "0.3"]);
    assert_eq!(doc["best"]["cost"].as_f64().unwrap(), 0.0);
    assert!(segments(&doc).iter().all(|s| s.measure == 0.0));
}

#[test]
fn degree_input_matches_radians() {
    let rad = plan_json(&["--start", "0,0,0", "--goal", "3,-2,1.0471975511965976", "--rl", "1", "--rr", "1.5", "--mul", "0.5", "--mur", "0.2"]);
    let deg = plan_json(&["--deg", "--start", "0,0,0", "--goal", "3,-2,60", "--rl", "1", "--rr", "1.5", "--mul", "0.5", "--mur", "0.2"]);
    assert_eq!(rad["best"]["family"], deg["best"]["family"]);
    let (a, b) = (rad["best"]["cost"].as_f64().unwrap(), deg["best"]["cost"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-9, "{a} vs {b}");
}

#[test]
fn json_round_trip_reaches_goal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plan.json");
    let out = wmd(&[
        "plan", "--start", "1,-1,0.3", "--goal", "-2,4,2.5", "--rl", "0.8", "--rr", "1.3", "--mul", "0.7",
        "--mur", "1.1", "--all-candidates", "--json", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let spec = VehicleSpec::new(0.8, 1.3, 0.7, 1.1).unwrap();
    let start = Configuration::new(1.0, -1.0, 0.3).unwrap();
    let segs: Vec<_> = segments(&doc).iter().map(|s| s.to_segment().unwrap()).collect();
    let end = propagate_path(&start, &segs, &spec);
    assert!((end.x + 2.0).abs() < 1e-6 && (end.y - 4.0).abs() < 1e-6, "{end:?}");
    let res = &doc["residual"];
    for k in ["dx", "dy", "dtheta"] {
        assert!(res[k].as_f64().unwrap().abs() < 1e-6);
    }
    assert!(doc["candidates"].as_array().unwrap().len() > 1);
}

fn read_csv(text: &str) -> Vec<[f64; 4]> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,x,y,cost"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|p| p.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

#[test]
fn sample_ends_at_goal_with_plan_cost() {
    let args = with(HALF_TURN, &["--mul", "1", "--mur", "1"]);
    let cost = plan_json(&args)["best"]["cost"].as_f64().unwrap();
    let mut full = vec!["sample", "--step", "0.1"];
    full.extend_from_slice(&args);
    let out = wmd(&full);
    assert!(out.status.success());
    let rows = read_csv(&String::from_utf8(out.stdout).unwrap());
    assert!(rows.len() > 10);
    assert_eq!(rows[0], [0.0, 0.0, 0.0, 0.0]);
    let last = rows.last().unwrap();
    assert!(last[1].abs() < 1e-6 && last[2].abs() < 1e-6, "{last:?}");
    assert!((last[3] - cost).abs() <= 1e-9 * cost, "{} vs {cost}", last[3]);
    for w in rows.windows(2) {
        assert!(w[1][0] - w[0][0] <= 0.1 + 1e-9);
        assert!(w[1][3] >= w[0][3]);
    }
}

#[test]
fn sample_rejects_non_positive_step() {
    for step in ["0", "-1"] {
        let mut full = vec!["sample", "--step", step];
        full.extend_from_slice(HALF_TURN);
        assert_eq!(wmd(&full).status.code(), Some(1));
    }
}

#[test]
fn bad_input_exits_with_usage_error() {
    assert_eq!(wmd(&["plan", "--start", "0,0", "--goal", "1,1,1", "--rl", "1", "--rr", "1"]).status.code(), Some(1));
    assert_eq!(wmd(&["plan", "--start", "0,0,0", "--goal", "1,1,1", "--rl", "-1", "--rr", "1"]).status.code(), Some(1));
    assert_eq!(wmd(&["plan", "--start", "0,0,0", "--goal", "1,1,1", "--rl", "1"]).status.code(), Some(1));
}

fn svg(args: &[&str], path: &Path) -> Output {
    let mut full = vec!["svg", "--svg", path.to_str().unwrap()];
    full.extend_from_slice(args);
    wmd(&full)
}

#[test]
fn svg_is_well_formed_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    let args = with(HALF_TURN, &["--mul", "1", "--mur", "1", "--compare-classical"]);
    assert!(svg(&args, &a).status.success());
    assert!(svg(&args, &b).status.success());
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let lines: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("polyline")).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].attribute("stroke-dasharray").is_some());
    for id in ["start", "goal"] {
        assert!(doc.descendants().any(|n| n.attribute("id") == Some(id)));
    }
}

#[test]
fn svg_of_empty_path_has_only_glyphs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("e.svg");
    assert!(svg(&["--start", "0,0,0", "--goal", "0,0,0", "--rl", "1", "--rr", "1"], &p).status.success());
    let text = std::fs::read_to_string(&p).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polyline")).count(), 0);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("g")).count(), 2);
}

#[test]
fn svg_to_unwritable_path_fails() {
    let out = svg(HALF_TURN, Path::new("/nonexistent-dir/x.svg"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scenario_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    std::fs::write(
        &p,
        r#"{"label":"u-turn","start":{"x":0,"y":0,"heading":0},"goal":{"x":0,"y":0,"heading":3.141592653589793},
            "spec":{"r_l":1,"r_r":1,"mu_l":1,"mu_r":1}}"#,
    )
    .unwrap();
    let doc = plan_json(&["--scenario", p.to_str().unwrap()]);
    assert_eq!(doc["best"]["family"], "LSRSL");
    let doc = plan_json(&["--scenario", p.to_str().unwrap(), "--mode", "classical"]);
    assert_eq!(doc["best"]["family"], "LRL");
}

#[test]
fn verify_zero_count_is_empty_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let out = wmd(&["verify", "--count", "0", "--report", p.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(doc["count"], 0);
    assert!(doc["instances"].as_array().unwrap().is_empty());
}

#[test]
fn verify_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = wmd(&["verify", "--seed", "7", "--count", "3", "--box", "6", "--report", p.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let doc: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(doc["consistent"], 3);
    assert_eq!(doc["instances"][0]["report"]["verdict"], "consistent");
}

#[test]
fn verify_rejects_bad_ranges() {
    assert_eq!(wmd(&["verify", "--r-range", "2,1"]).status.code(), Some(1));
    assert_eq!(wmd(&["verify", "--r-range", "0,1", "--count", "1"]).status.code(), Some(1));
}
