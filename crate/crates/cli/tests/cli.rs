use std::path::Path;
use std::process::{Command, Output};

fn ghzsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghzsep"))
        .args(args)
        .env_remove("GHZSEP_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn assert_golden(args: &[&str], name: &str) {
    let o = ghzsep(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), golden(name), "{args:?}");
}

#[test]
fn threshold_outputs() {
    assert_golden(&["threshold", "--n", "3", "--j", "1"], "threshold_n3_j1.txt");
    assert_golden(&["threshold", "--n", "6", "--k", "3", "--format", "json"], "threshold_n6_k3.json");
    assert_golden(
        &["threshold", "--n", "4", "--k", "4", "--p", "1/2", "--format", "csv"],
        "threshold_n4_k4_p.csv",
    );
    let o = ghzsep(&["threshold", "--n", "4", "--k", "4"]);
    assert!(stdout(&o).starts_with("1/9 (iff)\n"));
}

#[test]
fn table_outputs() {
    assert_golden(&["table1", "--format", "csv"], "table1.csv");
    assert_golden(&["table1"], "table1.txt");
    let text = golden("table1.txt");
    assert!(text.contains("\n7 3 1|3^2,2^2|3 7,21/2 35/2 35/163\n"));
    assert!(text.contains(" 115 115/627\n"));
}

#[test]
fn table_check_reports_mismatched_rows() {
    let o = ghzsep(&["table1", "--check"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("4 row(s) differ"), "{err}");
    for row in ["(9, 3)", "(11, 4)", "(11, 5)", "(12, 4)"] {
        assert!(err.contains(row), "{err}");
    }
}

#[test]
fn table_beyond_published_rows() {
    let o = ghzsep(&["table1", "--nmax", "13", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with(&golden("table1.csv")));
    assert_eq!(text.lines().filter(|l| l.starts_with("1,13,")).count(), 4);
}

#[test]
fn lp_outputs() {
    assert_golden(&["lp", "--n", "6", "--k", "3"], "lp_n6_k3.txt");
    assert_golden(&["lp", "--n", "12", "--k", "4", "--format", "json"], "lp_n12_k4.json");
    let o = ghzsep(&["lp", "--n", "8", "--k", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tau"], "1/1");
    assert_eq!(v["p_s"], "1/129");
}

#[test]
fn figure_output_and_file() {
    assert_golden(&["figure", "--nmin", "3", "--nmax", "12"], "figure.csv");
    let dir = std::env::temp_dir().join(format!("ghzsep-figure-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.csv");
    let o = ghzsep(&["figure", "--nmax", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("figure.csv"));
    let o = ghzsep(&["figure", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ghzsep"))
        .args(["threshold", "--n", "6", "--k", "3"])
        .env("GHZSEP_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), golden("threshold_n6_k3.json"));
}

#[test]
fn verify_suites() {
    let o = ghzsep(&["verify", "--suite", "appendix", "--limits", "l=100,n=100"]);
    assert_eq!(o.status.code(), Some(0));
    let line: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(line["pass"], true);

    for suite in ["wident", "charfn", "phase-oracle"] {
        let o = ghzsep(&["verify", "--suite", suite, "--limits", "l=6,n=5"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        for line in stdout(&o).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["pass"], true, "{line}");
        }
    }
    let o = ghzsep(&["verify", "--suite", "lemma1", "--limits", "n=6,samples=200", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = ghzsep(&["verify", "--suite", "witness-max", "--limits", "n=4,restarts=16,samples=500"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn deterministic_output() {
    let a = ghzsep(&["verify", "--suite", "witness-max", "--limits", "n=3,restarts=8,samples=100"]);
    let b = ghzsep(&["verify", "--suite", "witness-max", "--limits", "n=3,restarts=8,samples=100"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["threshold", "--n", "4", "--j", "2"],
        vec!["threshold", "--n", "4", "--j", "1", "--k", "3"],
        vec!["threshold", "--n", "4", "--k", "1"],
        vec!["threshold", "--n", "4", "--k", "2", "--p", "abc"],
        vec!["lp", "--n", "21", "--k", "3"],
        vec!["lp", "--n", "5", "--k", "6"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--suite", "charfn", "--limits", "x=1"],
        vec!["table1", "--nmax", "5"],
    ] {
        let o = ghzsep(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
