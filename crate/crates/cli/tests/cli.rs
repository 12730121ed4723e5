use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn racah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racah"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("racah-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const EXAMPLE: [&str; 8] = ["--a", "-1/2", "--b", "-1/2", "--c", "-1/2", "--d", "4"];

fn with(cmd: &str, rest: &[&str]) -> Vec<String> {
    std::iter::once(cmd)
        .chain(rest.iter().copied())
        .map(String::from)
        .collect()
}

fn run(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    racah(&refs)
}

#[test]
fn analyze_example() {
    let o = run(&with("analyze", &EXAMPLE));
    assert!(o.status.success(), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["irreducible"]["oracle"], true);
    assert_eq!(r["irreducible"]["criterion"], true);
    for g in r["diagonalizable"].as_array().unwrap() {
        assert_eq!(g["oracle"], false);
        assert_eq!(g["criterion"], false);
    }
    assert_eq!(r["traces"]["computed"][0], "35/4");
    assert_eq!(
        r["canonical"],
        serde_json::json!({"a": "-1/2", "b": "-1/2", "c": "-1/2"})
    );
}

#[test]
fn output_is_deterministic() {
    let a = run(&with("analyze", &EXAMPLE));
    let b = run(&with("analyze", &EXAMPLE));
    assert_eq!(a.stdout, b.stdout);
    let grid = ["sweep", "--grid", "a=-1/2,0,1;b=0,1/2;c=1/2;d=1,2"];
    assert_eq!(racah(&grid).stdout, racah(&grid).stdout);
}

#[test]
fn reduce_commutator_relation() {
    let o = racah(&["reduce", "--expr", "[A,B]-2*D"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
    let o = racah(&["reduce", "--expr", "B*A"]);
    assert_eq!(stdout(&o), "A*B - 2*D\n");
    let o = racah(&["reduce", "--expr", "B*A", "--format", "json"]);
    assert_eq!(json(&o)["normal_form"], "A*B - 2*D");
}

#[test]
fn usage_errors_exit_two() {
    let o = racah(&["analyze", "--a", "0.5", "--b", "0", "--c", "0", "--d", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rationals must be given as p/q"));

    let o = racah(&["analyze", "--a", "0", "--b", "0", "--c", "0", "--d", "-1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = racah(&[
        "analyze", "--a", "0", "--b", "0", "--c", "0", "--d", "1", "--bogus",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let o = racah(&["reduce", "--expr", "("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position 1"));

    let o = racah(&["sweep", "--grid", "a=;b=0;c=0;d=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"));

    let o = racah(&[
        "diagonalizable",
        "--a",
        "0",
        "--b",
        "0",
        "--c",
        "0",
        "--d",
        "2",
        "--generator",
        "A",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("use oracle mode"));
}

#[test]
fn sweep_grid_of_192() {
    let grid = "a=-1/2,0,1/2,1;b=-1/2,0,1/2,1;c=-1/2,0,1/2,1;d=1,2,3";
    let o = racah(&["sweep", "--grid", grid]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["summary"]["points"], 192);
    assert_eq!(r["summary"]["disagreements"], 0);
    assert_eq!(r["points"].as_array().unwrap().len(), 192);
    // lexicographic order: d varies fastest
    assert_eq!(r["points"][0]["d"], 1);
    assert_eq!(r["points"][1]["d"], 2);
    assert_eq!(r["points"][3]["params"]["c"], "0");
}

#[test]
fn sweep_reducible_point_has_witness() {
    let o = racah(&["sweep", "--grid", "a=1;b=1;c=2;d=2"]);
    let r = json(&o);
    let report = &r["points"][0]["report"];
    assert_eq!(report["irreducible"]["oracle"], false);
    assert!(report["irreducible"]["witness"]["basis"]
        .as_array()
        .is_some());
}

#[test]
fn single_point_sweep_matches_analyze() {
    let o = racah(&["sweep", "--grid", "a=-1/2;b=-1/2;c=-1/2;d=4"]);
    let sweep = json(&o);
    let analyze = json(&run(&with("analyze", &EXAMPLE)));
    assert_eq!(sweep["points"][0]["report"], analyze);
}

#[test]
fn golden_passes() {
    let o = racah(&["golden", "--format", "text"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("identified as R_4(-1/2, -1/2, -1/2)"));
    assert!(!text.contains("FAIL"));
    assert_eq!(json(&racah(&["golden"]))["passed"], true);
}

#[test]
fn golden_negative_control_names_first_mismatch() {
    let o = racah(&["golden", "--negate-varphi", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let first_fail = stdout(&o)
        .lines()
        .find(|l| l.starts_with("FAIL"))
        .unwrap()
        .to_string();
    assert_eq!(first_fail, "FAIL B matches fixture at (0, 1): 9 vs -9");
}

#[test]
fn construct_then_verify_input() {
    let path = scratch("module.json");
    let mut args = with("construct", &EXAMPLE);
    args.extend(["--basis", "w", "--out"].map(String::from));
    args.push(path.display().to_string());
    assert!(run(&args).status.success());

    let p = path.display().to_string();
    let o = racah(&["verify", "--input", &p]);
    assert!(o.status.success(), "{}", stdout(&o));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["A"][0][0] = Value::from("4");
    let bad = scratch("tampered.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let o = racah(&[
        "verify",
        "--input",
        &bad.display().to_string(),
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL [A,B]=2D"));
}

#[test]
fn identify_from_document() {
    let path = scratch("identify.json");
    let p = path.display().to_string();
    let o = racah(&[
        "construct",
        "--a",
        "2/3",
        "--b",
        "-7/4",
        "--c",
        "1/5",
        "--d",
        "3",
        "--out",
        &p,
    ]);
    assert!(o.status.success());
    let r = json(&racah(&["identify", "--input", &p]));
    assert_eq!(
        r["canonical"],
        serde_json::json!({"a": "2/3", "b": "3/4", "c": "1/5"})
    );
}

#[test]
fn intertwine_flip_and_partner() {
    let base = ["--a", "1/3", "--b", "2/7", "--c", "-3/5", "--d", "3"];
    let flipped = run(&with(
        "intertwine",
        &[&base[..], &["--a2", "1/3", "--b2", "-9/7", "--c2", "-3/5"]].concat(),
    ));
    let r = json(&flipped);
    assert_eq!(r["dimension"], 1);
    assert_eq!(r["invertible"], true);
    let other = run(&with(
        "intertwine",
        &[&base[..], &["--a2", "1/3", "--b2", "2/7", "--c2", "4/5"]].concat(),
    ));
    assert_eq!(json(&other)["dimension"], 0);
}

#[test]
fn eval_delta_on_example() {
    let o = run(&with(
        "eval",
        &[&["--expr", "delta"][..], &EXAMPLE].concat(),
    ));
    let m = json(&o);
    assert_eq!(m[0][0], "21/4");
    assert_eq!(m[0][1], "0");
    let o = run(&with(
        "eval",
        &[&["--expr", "alpha", "--central-matrices"][..], &EXAMPLE].concat(),
    ));
    assert!(json(&o)
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .all(|x| x == "0"));
}

#[test]
fn verma_exit_status() {
    let o = racah(&[
        "verma", "--a", "-1/2", "--b", "-1/2", "--c", "-1/2", "--nu", "4",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = racah(&[
        "verma", "--a", "-1/2", "--b", "-1/2", "--c", "-1/2", "--nu", "9/2", "--d", "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = racah(&["verma", "--a", "0", "--b", "0", "--c", "0", "--nu", "9/2"]);
    assert_eq!(o.status.code(), Some(2));
}
