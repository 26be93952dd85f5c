use std::path::Path;
use std::process::{Command, Output};

fn sasaki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).output().unwrap()
}

fn corpus() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = sasaki(&["emit-corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    dir
}

fn path(dir: &Path, rel: &str) -> String {
    dir.join(rel).to_str().unwrap().to_string()
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_h5_passes() {
    let d = corpus();
    let out = sasaki(&["validate", &path(d.path(), "models/h5.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["verdict"], "pass");
}

#[test]
fn every_corpus_file_validates() {
    let d = corpus();
    for dim in [3, 5, 7] {
        let mut args = vec!["validate".to_string(), path(d.path(), &format!("models/h{dim}.json"))];
        for kind in sasaki_cli::corpus::LINE_BUNDLES {
            args.push("--bundle".into());
            args.push(path(d.path(), &format!("bundles/h{dim}-{kind}.json")));
        }
        if dim == 5 {
            args.extend(["--bundle".into(), path(d.path(), "bundles/h5-rank2.json")]);
            for g in ["gamma3", "gamma5", "gamma5-rank2"] {
                args.extend(["--group".into(), path(d.path(), &format!("groups/{g}.json"))]);
            }
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = sasaki(&args);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn h3_quadraticity_fails_with_verdict() {
    let d = corpus();
    let out = sasaki(&["quadraticity", &path(d.path(), "models/h3.json"), "--rank", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["outcome"], "hypothesis-violated");
    assert_eq!(r["verdict"], "fail");
}

#[test]
fn cup_vanishing_outside_range_is_an_input_error() {
    let d = corpus();
    let out = sasaki(&["cup-vanishing", &path(d.path(), "models/h5.json"), "--degrees", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside the range"));
}

#[test]
fn malformed_json_reports_line_and_column() {
    let d = tempfile::tempdir().unwrap();
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"name\": \"x\",\n  \"dimension\": 3,\n  oops\n}\n").unwrap();
    let out = sasaki(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn non_sasakian_model_is_rejected_by_checks_and_reported_by_validate() {
    let d = corpus();
    let text = std::fs::read_to_string(d.path().join("models/h3.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["xi"][0] = "2".into();
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let out = sasaki(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = sasaki(&["kahler-check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threads_flag_does_not_change_output() {
    let d = corpus();
    let m = path(d.path(), "models/h5.json");
    let a = sasaki(&["kahler-check", &m, "--threads", "1"]);
    let b = sasaki(&["--threads", "3", "kahler-check", &m]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
