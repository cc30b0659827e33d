use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn troplink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_troplink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    let v: Value = serde_json::from_str(&stdout(o)).expect("json report");
    v["report"].clone()
}

fn fixtures_in(dir: &Path) {
    let o = troplink(&["fixtures", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn fixtures_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    fixtures_in(a.path());
    fixtures_in(b.path());
    let listed = stdout(&troplink(&["fixtures", a.path().to_str().unwrap()]));
    assert!(listed.lines().count() >= 27);
    for line in listed.lines() {
        let rel = Path::new(line).strip_prefix(a.path()).unwrap();
        assert_eq!(fs::read(line).unwrap(), fs::read(b.path().join(rel)).unwrap(), "{line}");
    }
}

#[test]
fn link_reports_are_byte_identical_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    fixtures_in(dir.path());
    let fan = dir.path().join("fans/p2.json");
    let run = || troplink(&["--json", "link", fan.to_str().unwrap()]);
    let (x, y) = (run(), run());
    assert_eq!(code(&x), 0);
    let (vx, vy): (Value, Value) = (serde_json::from_str(&stdout(&x)).unwrap(), serde_json::from_str(&stdout(&y)).unwrap());
    assert_eq!(vx["report"].to_string(), vy["report"].to_string());
    assert_eq!(vx["report_sha256"], vy["report_sha256"]);
    assert_eq!(vx["report"]["betti"], serde_json::json!([0, 1]));
    assert_eq!(vx["report"]["top_concentrated"], true);
}

#[test]
fn fixture_commands_pass() {
    let dir = tempfile::tempdir().unwrap();
    fixtures_in(dir.path());
    let p = |rel: &str| dir.path().join(rel).to_str().unwrap().to_string();

    let o = troplink(&["--json", "link", &p("fans/bergman-u23.json"), "--geometric"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["betti"], serde_json::json!([2]));

    let o = troplink(&["--json", "bergman", &p("matroids/k4.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["betti"], serde_json::json!([0, 6]));

    let o = troplink(&["--json", "skeleton", &p("fans/p3.json"), "--codim", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["betti"], serde_json::json!([0, 3]));

    let o = troplink(&["--json", "weightrow", &p("strata/three-lines.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["betti"], serde_json::json!([0, 1]));

    let o = troplink(&["--json", "hatlink", &p("fans/p2.json"), "--mult", "4:3,5:2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(report(&o)["betti"], serde_json::json!([0, 4]));

    let o = troplink(&["link", &p("fans/trees5.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("reduced Betti numbers: (0, 6)"));
}

#[test]
fn string_commands() {
    let o = troplink(&["--json", "trees", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["betti"], serde_json::json!([0, 6]));

    let o = troplink(&["--json", "hypersurface", "x1 + x2 + 1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["betti"], serde_json::json!([2]));

    let o = troplink(&["initial", "x1 + x2 + 1", "--w", "-1,-1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "x1 + x2");
}

#[test]
fn a_failed_verdict_exits_one() {
    // a plane cone and a separate ray: the link is a segment plus a point
    let dir = tempfile::tempdir().unwrap();
    let fan = dir.path().join("split.json");
    fs::write(
        &fan,
        r#"{"ambient_rank": 3, "rays": [[1,0,0],[0,1,0],[0,0,1]], "cones": [{"rays": [0,1]}, {"rays": [2]}]}"#,
    )
    .unwrap();
    let o = troplink(&["--json", "link", fan.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = report(&o);
    assert_eq!(r["betti"], serde_json::json!([1, 0]));
    assert_eq!(r["top_concentrated"], false);
    assert_eq!(r["verdict"], "fail");
}

#[test]
fn bad_inputs_exit_two_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"ambient_rank\": 2,\n \"rays\": [[1,0]],\n \"cones\": [").unwrap();
    let o = troplink(&["link", broken.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("broken.json") && err.contains("line 3"), "{err}");

    let o = troplink(&["link", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);

    let o = troplink(&["hypersurface", "x1 + * x2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("at position 5"));

    let o = troplink(&["trees", "3"]);
    assert_eq!(code(&o), 2);

    fixtures_in(dir.path());
    let fan = dir.path().join("fans/bergman-u23.json");
    let o = troplink(&["skeleton", fan.to_str().unwrap(), "--codim", "1"]);
    assert_eq!(code(&o), 2, "an incomplete fan is rejected");
    let p2 = dir.path().join("fans/p2.json");
    let o = troplink(&["hatlink", p2.to_str().unwrap(), "--mult", "1:2"]);
    assert_eq!(code(&o), 2, "a ray is not a top cell of the P2 link");
    let o = troplink(&["hatlink", p2.to_str().unwrap(), "--mult", "4:0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn markdown_is_the_default() {
    let o = troplink(&["trees", "4"]);
    let md = stdout(&o);
    assert!(md.starts_with("# troplink trees"));
    assert!(md.contains("**verdict: PASS**"));
    let o = troplink(&["--md", "trees", "4"]);
    assert_eq!(stdout(&o).lines().next(), md.lines().next());
}
