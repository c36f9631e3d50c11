use std::fs;
use std::process::{Command, Output};

fn gmonoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmonoid"))
        .args(args)
        .output()
        .expect("run gmonoid")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const B2: &str = "builtin:semilattice-from-poset(2:)";

#[test]
fn props_on_t7() {
    let o = gmonoid(&["props", "builtin:paper-T7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "conical: true\n\
         cancellative: false (1,0,1)\n\
         refinement: false (1,1,x,x)\n\
         minimal (literal): 0\n\
         minimal (nonzero): x z\n"
    );
}

#[test]
fn ideals_on_t7() {
    let o = gmonoid(&["ideals", "builtin:paper-T7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("ideals: 4\n  I0 {0}\n  I1 {0,1,x}\n  I2 {0,y,z}\n  I3 {0,1,x,y,z,s,b}\n"));
    assert!(text.contains("height: 2\n"));
}

#[test]
fn json_props() {
    let o = gmonoid(&["--json", "props", "builtin:paper-T7"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["refinement"]["holds"], false);
    assert_eq!(v["refinement"]["witness"], serde_json::json!(["1", "1", "x", "x"]));
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.gm");
    fs::write(&path, "").unwrap();
    let o = gmonoid(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 1"));
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let printed = gmonoid(&["builtin", "paper-T7"]);
    let path = dir.path().join("t7.gm");
    fs::write(&path, &printed.stdout).unwrap();
    let o = gmonoid(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid Γ-monoid, n=7, Γ trivial\n");
}

#[test]
fn jh_equivalent_series() {
    let o = gmonoid(&["jh", B2, "--series1", "0; 0,a; 0,a,b,ab", "--series2", "0; 0,b; 0,a,b,ab"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("equivalent: true\n"));
}

#[test]
fn jh_rejects_non_refinement() {
    let o = gmonoid(&[
        "jh",
        "builtin:paper-T7",
        "--series1",
        "0; 0,1,x; 0,1,x,y,z,s,b",
        "--series2",
        "0; 0,y,z; 0,1,x,y,z,s,b",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(1,1,x,x) cannot be refined"));
}

#[test]
fn quotient_by_non_ideal_fails() {
    let o = gmonoid(&["quotient", "builtin:paper-T7", "--ideal", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn demos_run() {
    for name in ["paper-counterexample", "paper-shift"] {
        let o = gmonoid(&["demo", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn corpus_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = gmonoid(&["corpus", "--max-size", "3", "--actions", "trivial", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let manifest = fs::read_to_string(dir.path().join("manifest.tsv")).unwrap();
    assert_eq!(manifest.lines().count(), 8);
    assert!(dir.path().join("m3-4-a0.gm").exists());
}
