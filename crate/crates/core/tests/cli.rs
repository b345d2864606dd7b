use std::io::Write;
use std::process::Command;

use lct_core::cli::run_command;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_command(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = run(args);
    (code, serde_json::from_str(out.trim()).expect("one JSON record"))
}

#[test]
fn binary_runs_and_exits_cleanly() {
    let out = Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(["sylvester", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "2 3 7 43 1807 3263443 10650056950807"
    );

    let out = Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(["ht2", "401"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn record_schema() {
    let (code, rec) = json(&["lct", "x^2+y^3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(rec["schema"], "lct/1");
    assert_eq!(rec["command"], "lct");
    assert_eq!(rec["input"], "lct x^2+y^3 --json");
    assert_eq!(rec["digest"].as_str().unwrap().len(), 64);
    assert!(rec.get("error").is_none());
    let r = &rec["result"];
    assert_eq!(r["value"], "5/6");
    assert_eq!(r["exact"], true);
    assert_eq!(r["exactness"], "exact");
    assert_eq!(r["witness"]["kind"], "facet");
    assert_eq!(r["witness"]["facet"]["normal"], serde_json::json!([3, 2]));
    assert_eq!(r["witness"]["facet"]["offset"], 6);
    assert_eq!(r["witness"]["diagonal"], "6/5");
    assert_eq!(r["bounds"]["lower"], "1/2");
    assert_eq!(r["bounds"]["upper"], "1/1");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["lct", "x^2*y + y^5 + x^3", "--json"][..],
        &["toric", "3", "8", "40", "11", "--json"][..],
        &["hull", "x^6 + x^4*y + x^2*y^3 + x^5*y^3 + y^7", "--json"][..],
    ] {
        assert_eq!(run(args), run(args));
    }
    let (_, a) = json(&["toric", "3", "8", "40", "11", "--json"]);
    let (_, b) = json(&["toric", "3", "8", "40", "12", "--json"]);
    assert_ne!(a["digest"], b["digest"]);
}

#[test]
fn degenerate_flag_reports_upper_bound() {
    let (code, rec) = json(&["lct", "x^2+y^3", "--degenerate", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(rec["result"]["value"], "5/6");
    assert_eq!(rec["result"]["exact"], false);
    assert_eq!(rec["result"]["exactness"], "upper_bound");
}

#[test]
fn special_values() {
    let (_, rec) = json(&["lct", "0", "--dim", "2", "--json"]);
    assert_eq!(rec["result"]["value"], "0/1");
    let (_, rec) = json(&["lct", "1 + x*y", "--json"]);
    assert_eq!(rec["result"]["value"], "inf");
    let (_, rec) = json(&["lct", "x*y*z", "--json"]);
    assert_eq!(rec["result"]["value"], "1/1");
}

#[test]
fn gap_json() {
    let (code, rec) = json(&["gap", "3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(rec["result"]["max"], "41/42");
    assert_eq!(rec["result"]["gap"], "1/42");
    assert_eq!(rec["result"]["witness"], serde_json::json!([2, 3, 7]));
}

#[test]
fn gap_text() {
    let (code, out, _) = run(&["gap", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "1805/1806");
    assert!(lines[1].ends_with("2 3 7 43"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lct", "x^^2"]).0, 1);
    assert_eq!(run(&["lct", "x^-2"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["ht2", "401"]).0, 3);
    assert_eq!(run(&["gap", "6"]).0, 3);
    assert_eq!(run(&["family", "1/2", "10"]).0, 0);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["restrict", "x^2+y^3", "3"]).0, 1);
    assert_eq!(run(&["subadd", "x^2", "y^3"]).0, 0);
}

#[test]
fn errors_in_json_mode_are_records() {
    let (code, out, err) = run(&["ht2", "401", "--json"]);
    assert_eq!(code, 3);
    let rec: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(rec["error"]["code"], 3);
    assert!(rec.get("result").is_none());
    assert!(err.contains("exceeds"));
}

#[test]
fn json_and_csv_conflict() {
    assert_eq!(run(&["ht1", "3", "--json", "--csv"]).0, 1);
}

#[test]
fn csv_on_stdout_and_file() {
    let (code, out, _) = run(&["ht1", "3", "--csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "value_num,value_den,value_decimal");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "1,1,1.00000000000000000000");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ht2.csv");
    let (code, out, _) = run(&["ht2", "10", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("1021 values written to"));
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 1022);
    assert!(body.lines().any(|l| l.starts_with("5,6,0.8333")));
}

#[test]
fn accumulate_reads_csv_and_plain_lists() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("set.csv");
    run(&["ht1", "50", "--output", csv.to_str().unwrap()]);
    let (code, rec) = json(&["accumulate", csv.to_str().unwrap(), "1/20", "5", "--json"]);
    assert_eq!(code, 0);
    let intervals = rec["result"]["intervals"].as_array().unwrap();
    assert!(!intervals.is_empty());
    assert_eq!(intervals[0]["lo"], "0/1");

    let plain = dir.path().join("set.txt");
    let mut f = std::fs::File::create(&plain).unwrap();
    writeln!(f, "# a few points near 1/2").unwrap();
    for v in ["1/2", "51/100", "26/51", "27/53", "1"] {
        writeln!(f, "{v}").unwrap();
    }
    drop(f);
    let (code, rec) = json(&["accumulate", plain.to_str().unwrap(), "1/50", "4", "--json"]);
    assert_eq!(code, 0);
    let intervals = rec["result"]["intervals"].as_array().unwrap();
    assert_eq!(intervals.len(), 1);
    assert_eq!(intervals[0]["count"], 4);
}

#[test]
fn batch_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("polys.txt");
    std::fs::write(&path, "x^2+y^3\n# comment\n\nx*y\nx^^\n").unwrap();
    let (code, out, _) = run(&["lct", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 1);
    let recs: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["result"]["value"], "5/6");
    assert_eq!(recs[1]["result"]["value"], "1/1");
    assert_eq!(recs[2]["error"]["code"], 1);
}

#[test]
fn family_failure_is_a_validation_error() {
    let (code, rec) = json(&["family", "1/2", "5", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(rec["result"]["passed"], true);
    assert_eq!(run(&["family", "1", "5"]).0, 1);
}

#[test]
fn restrict_and_truncate() {
    let (_, rec) = json(&["restrict", "x^2+y^3+z^7", "1", "2", "--json"]);
    assert_eq!(rec["result"]["restricted"], "5/6");
    assert_eq!(rec["result"]["full"], "41/42");
    assert_eq!(rec["result"]["holds"], true);
    assert_eq!(rec["result"]["keep"], serde_json::json!([0, 1]));

    let (_, rec) = json(&["truncate", "x^2+y^3", "2", "--json"]);
    assert_eq!(rec["result"]["poly"], "x^2");
    assert_eq!(rec["result"]["bound"], "2/3");
}

#[test]
fn quiet_suppresses_text() {
    let (code, out, _) = run(&["-q", "ht2", "20"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
}
