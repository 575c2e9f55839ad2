use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn planewalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planewalk")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = planewalk(args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), json)
}

#[test]
fn xwalk_is_not_approximable_by_every_method() {
    let (code, r) = report(&["analyze", "XWALK", "--method", "all", "--no-timings"]);
    assert_eq!(code, 1);
    assert_eq!(r["schema"], "planewalk-report/1");
    assert_eq!(r["verdict"], "no");
    for method in ["derivative", "obstruction", "oracle"] {
        assert_eq!(r["methods"][method]["verdict"], "no", "{method}");
    }
    assert_eq!(r["methods"]["geometric"]["agrees"], true);
    assert_eq!(r["witnesses"][0]["kind"], "transversal");
    assert_eq!(r["obstruction"]["vector"], serde_json::json!([0, 1, 0]));
    assert!(r.get("timings").is_none());
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn triple_winding_reports_the_gap() {
    let (code, r) = report(&["analyze", "C3WIND(3)", "--method", "all", "--no-timings"]);
    assert_eq!(code, 1);
    assert_eq!(r["methods"]["derivative"]["verdict"], "no");
    assert_eq!(r["methods"]["obstruction"]["verdict"], "inconclusive");
    assert!(r["gap"].is_string());
}

#[test]
fn backforth_is_approximable() {
    let (code, r) = report(&["analyze", "BACKFORTH", "--no-timings"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "yes");
    assert!(r["methods"].get("oracle").is_none());
    assert!(r["methods"].get("geometric").is_some());
}

#[test]
fn obstruction_alone_is_inconclusive_on_cycles() {
    let (code, _) = report(&["analyze", "C3WIND(3)", "--method", "obstruction", "--no-timings"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_deterministic_without_timings() {
    let a = planewalk(&["analyze", "STARPASS", "--method", "all", "--no-timings"]).stdout;
    let b = planewalk(&["analyze", "STARPASS", "--method", "all", "--no-timings"]).stdout;
    assert_eq!(a, b);
    let (_, timed) = report(&["analyze", "STARPASS"]);
    assert!(timed["timings"].is_object());
}

#[test]
fn degrees() {
    let out = planewalk(&["degree", "C3WIND(-2)"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-2");
    let out = planewalk(&["degree", "THETACYCLE"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim().trim_start_matches('-'), "1");
    let out = planewalk(&["degree", "XWALK"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn disjoinability() {
    let (code, r) = report(&["disjoint", "PAIRX", "--no-timings"]);
    assert_eq!((code, r["verdict"].as_str()), (1, Some("not-disjoinable")));
    let (code, r) = report(&["disjoint", "PAIRPAR", "--no-timings"]);
    assert_eq!((code, r["verdict"].as_str()), (2, Some("inconclusive")));
    let (code, r) = report(&["disjoint", "PAIRPAR", "--method", "all", "--no-timings"]);
    assert_eq!((code, r["verdict"].as_str()), (0, Some("disjoinable")));
    let (code, _) = report(&["disjoint", "XSPLIT", "--no-timings"]);
    assert_eq!(code, 1);
}

#[test]
fn documents_from_files_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("poly.json");
    fs::write(&poly, r#"{"polyline": {"closed": false, "points": [[-2,0],[2,0],[2,2],[0,2],[0,-2]]}}"#).unwrap();
    let (code, r) = report(&["analyze", poly.to_str().unwrap(), "--no-timings"]);
    assert_eq!(code, 1);
    assert_eq!(r["instance"]["vertices"].as_array().unwrap().len(), 6);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"graph\": [1,\n").unwrap();
    let out = planewalk(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let json = dir.path().join("report.json");
    let out = planewalk(&["analyze", "PATH3", "--json", json.to_str().unwrap(), "--no-timings"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "verdict: yes");
    let written: Value = serde_json::from_slice(&fs::read(&json).unwrap()).unwrap();
    assert_eq!(written["verdict"], "yes");
    assert_eq!(planewalk(&["analyze", "NOSUCHTHING"]).status.code(), Some(3));
    assert_eq!(planewalk(&["analyze", "PATH3", "--method", "magic"]).status.code(), Some(3));
}

#[test]
fn rendering() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(planewalk(&["render", "XWALK", "--what", "table", "--out", out]).status.success());
    let table = fs::read_to_string(dir.path().join("table.svg")).unwrap();
    assert!(table.contains(r#"class="cell black" data-cell="1,3""#));
    assert!(table.contains(r#"class="cell black" data-cell="3,5""#));
    assert!(table.contains(r#"class="parity" data-cell="2,5""#));

    assert!(planewalk(&["render", "C3WIND(2)", "--what", "tower", "--out", out]).status.success());
    let tower = fs::read_to_string(dir.path().join("tower.svg")).unwrap();
    assert_eq!(tower.matches(r#"<g class="level""#).count(), 2);

    assert!(planewalk(&["render", "PATH3", "--what", "drawing", "--out", out]).status.success());
    let first = fs::read(dir.path().join("drawing.svg")).unwrap();
    assert!(planewalk(&["render", "PATH3", "--what", "drawing", "--out", out]).status.success());
    assert_eq!(first, fs::read(dir.path().join("drawing.svg")).unwrap());

    assert!(planewalk(&["render", "PAIRX", "--what", "table", "--out", out]).status.success());
    let svg_dir = dir.path().join("svgs");
    let status = planewalk(&["analyze", "XWALK", "--svg", svg_dir.to_str().unwrap(), "--no-timings"]).status;
    assert_eq!(status.code(), Some(1));
    for name in ["drawing.svg", "tower.svg", "table.svg"] {
        assert!(svg_dir.join(name).exists());
    }
}

#[test]
fn fixture_listing() {
    let out = String::from_utf8(planewalk(&["fixtures"]).stdout).unwrap();
    assert!(out.lines().any(|l| l.starts_with("XWALK")));
    assert!(out.lines().any(|l| l.starts_with("C3WIND(d)")));
}
