use std::path::Path;
use std::process::{Command, Output};

fn ybh(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybh")).arg("--cache-dir").arg(cache).args(args).output().expect("ybh runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn homology_of_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = ybh(dir.path(), &["homology", "--spec", "final:m=3", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "H_3(final:m=3) = (1,8,2)\ntorsion: 1-y^2 ×8, 1-y^4 ×2\ncertified: true\n");

    let out = ybh(dir.path(), &["homology", "--spec", "final:m=3", "--n", "3", "--at-y", "2"]);
    assert!(stdout(&out).contains("torsion: Z_3 ×8, Z_15 ×2"));
}

#[test]
fn table1_csv_matches_reference_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cold = ybh(dir.path(), &["--format", "csv", "table1"]);
    assert!(cold.status.success());
    let text = stdout(&cold);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,m=1,m=2,m=3,m=4,m=5"));
    for (n, line) in lines.enumerate() {
        let expected: Vec<String> = (1..=5)
            .map(|m| {
                let [a, b, c] = ybh_core::reference::table1(n + 1, m);
                format!("\"({a},{b},{c})\"")
            })
            .collect();
        assert_eq!(line, format!("{},{}", n + 1, expected.join(",")));
    }
    let warm = ybh(dir.path(), &["--format", "csv", "table1"]);
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn ranks_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = ybh(dir.path(), &["ranks", "--max-n", "3", "--max-m", "3", "--csv"]);
    assert_eq!(stdout(&out), "m,n=1,n=2,n=3\n1,1,1,1\n2,1,3,7\n3,0,2,12\n");
}

#[test]
fn invalid_spec_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = ybh(dir.path(), &["homology", "--spec", "usetop:m=2,u=3,l=0", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = ybh(dir.path(), &["boundary", "--spec", "nonsense", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cache_gc_removes_debris() {
    let dir = tempfile::tempdir().unwrap();
    assert!(ybh(dir.path(), &["homology", "--spec", "final:m=2", "--n", "2"]).status.success());
    let sub = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(sub.join(".tmp-leftover"), "partial").unwrap();
    std::fs::write(sub.join("boundary-n9.json"), "{not json").unwrap();
    let out = ybh(dir.path(), &["--format", "json", "cache", "gc"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["removed_temp"], 1);
    assert_eq!(report["removed_corrupt"], 1);
    assert!(report["kept"].as_u64().unwrap() > 0);
}

#[test]
fn verify_maps_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = ybh(dir.path(), &["verify-maps", "--m", "3", "--n", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["checks"].as_object().unwrap().len() >= 5);
}

#[test]
fn filtration_report_is_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let out = ybh(dir.path(), &["--format", "json", "conjecture", "mfl", "--n", "4", "--m", "2", "--cap", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cells = v[0]["cells"].as_array().unwrap();
    assert!(cells.iter().all(|c| c["verdict"] == "consistent"), "{v}");
}
