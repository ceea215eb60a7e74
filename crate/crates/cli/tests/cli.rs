use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bredon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bredon")).args(args).env_remove("BREDON_GROUP_CAP").env_remove("BREDON_MINOR_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bredon-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn sl2z_homology_and_cohomology() {
    let o = bredon(&["homology", "sl2z.gcw", "--coefficients=rep"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "# homology sl2z.gcw\nH_0 = Z^8\nH_1 = 0\n");
    let o = bredon(&["cohomology", "sl2z", "--degrees", "-1..2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("H^0 = Z^8"));
    let o = bredon(&["homology", "sl2z", "--coefficients", "burnside"]);
    assert!(stdout(&o).contains("H_0 = Z^5"));
    let o = bredon(&["cohomology", "torsion_demo", "--coefficients", "constant"]);
    assert!(stdout(&o).contains("Z/2"));
}

#[test]
fn machine_output_is_deterministic() {
    let args = ["--format", "machine", "homology", "sl3z", "--coefficients", "rep"];
    let (a, b) = (bredon(&args), bredon(&args));
    assert_eq!(a.stdout, b.stdout);
    let recs = records(&a);
    assert_eq!(recs[0]["schema"], "bredon-result/1");
    assert_eq!(recs[0]["command"], "homology");
    assert_eq!(recs[0]["input_sha256"].as_str().unwrap().len(), 64);
    assert!(recs.iter().all(|r| r.get("seconds").is_none()));
    assert_eq!(recs[1]["degree"], 0);
    assert_eq!(recs[1]["free_rank"], 8);
}

#[test]
fn disk_files_hash_their_contents() {
    let text = "name p\ngroup C2 perm\ngen 2 1\ncell p dim=0 stab=C2\n";
    let path = temp_file("point.gcw", text);
    let o = bredon(&["--format", "machine", "homology", path.to_str().unwrap()]);
    assert!(o.status.success());
    let recs = records(&o);
    let sha = recs[0]["input_sha256"].as_str().unwrap().to_string();
    std::fs::write(&path, format!("{text}\n")).unwrap();
    let o = bredon(&["--format", "machine", "homology", path.to_str().unwrap()]);
    assert_ne!(records(&o)[0]["input_sha256"].as_str().unwrap(), sha);
    assert_eq!(records(&o)[1]["free_rank"], 2);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn checks_kunneth_and_e2() {
    let o = bredon(&["check", "sl3z", "dsquare"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = bredon(&["check", "sl2z", "uct"]);
    assert!(o.status.success());
    let o = bredon(&["kunneth", "torsion_demo", "torsion_demo", "--coefficients", "constant"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=1: predicted Z/2, computed Z/2"));
    let o = bredon(&["e2", "sl2z"]);
    assert!(stdout(&o).contains("collapses-for-dimension-reasons"));
    assert!(stdout(&o).contains("K^0 rank 8"));
    let o = bredon(&["--format", "machine", "check", "sl2z", "torsionfree"]);
    assert!(o.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(bredon(&["homology", "no_such_complex"]).status.code(), Some(1));
    assert_eq!(bredon(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bredon(&["--help"]).status.code(), Some(0));

    let bad = "name bad\ngroup 1 perm\ncell a dim=0 stab=1\ncell b dim=0 stab=1\ncell e dim=1 stab=1\n\
               cell f dim=2 stab=1\nface e a coeff=-1\nface e b coeff=1\nface f e coeff=1\n";
    let path = temp_file("bad.gcw", bad);
    let o = bredon(&["homology", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d∘d"));
    std::fs::remove_file(path).unwrap();

    assert_eq!(bredon(&["--group-cap", "2", "homology", "sl2z"]).status.code(), Some(3));
    assert_eq!(bredon(&["--minor-cap", "1", "check", "sl2z", "torsionfree"]).status.code(), Some(3));
    assert_eq!(bredon(&["homology", "sl2z", "--coefficients", "kcentral:1"]).status.code(), Some(4));
    assert_eq!(bredon(&["check", "sl2z", "uct", "--coefficients", "burnside"]).status.code(), Some(4));
    assert_eq!(bredon(&["check", "sl3z", "torsionfree"]).status.code(), Some(5));
}

#[test]
fn flag_overrides_environment() {
    let run = |env: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_bredon")).args(args).env("BREDON_GROUP_CAP", env).output().unwrap().status.code()
    };
    assert_eq!(run("2", &["homology", "sl2z"]), Some(3));
    assert_eq!(run("2", &["--group-cap", "100", "homology", "sl2z"]), Some(0));
    assert_eq!(run("100", &["--group-cap", "2", "homology", "sl2z"]), Some(3));
}

#[test]
fn twisted_coefficients() {
    let o = bredon(&["cohomology", "sl2z_twisted", "--coefficients", "kcentral:1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = bredon(&["homology", "sl2z_n1", "--coefficients", "kcentral:0"]);
    assert!(stdout(&o).contains("H_0 = Z^8"));
}
