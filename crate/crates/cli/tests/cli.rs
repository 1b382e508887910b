use std::fs;
use std::process::{Command, Output};

fn abcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_covered_exit_codes() {
    // K6 is matching covered.
    let out = abcover(&["check-covered", "--a", "1", "--b", "1", "--graph6", "E~~w"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "E~~w yes");

    // H(6,3) is not.
    let out = abcover(&["check-covered", "--a", "1", "--b", "1", "--graph6", "E~~?"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("E~~? no structural"));
}

#[test]
fn check_covered_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.g6");
    fs::write(&path, ">>graph6<<E~~w\r\nE~~?\n\n").unwrap();
    let out = abcover(&[
        "check-covered",
        "--a",
        "1",
        "--b",
        "1",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "E~~w yes");
    assert!(lines[1].starts_with("E~~? no"));
}

#[test]
fn check_factor_deficiency() {
    // The star K_{1,3} has no perfect matching.
    let out = abcover(&["check-factor", "--a", "1", "--b", "1", "--graph6", "Cs"]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("no deficiency"));
    let out = abcover(&["check-factor", "--a", "1", "--b", "2", "--graph6", "C~"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&abcover(&[])), 2);
    assert_eq!(code(&abcover(&["rho"])), 2);
    assert_eq!(code(&abcover(&["rho", "--graph6", "zz"])), 2);
    assert_eq!(
        code(&abcover(&[
            "check-covered",
            "--a",
            "2",
            "--b",
            "1",
            "--graph6",
            "C~"
        ])),
        2
    );
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.txt");
    let r = report.to_str().unwrap();
    // Parity: n*a odd with a = b.
    let out = abcover(&[
        "verify",
        "--theorem",
        "main0",
        "--n",
        "7",
        "--a",
        "1",
        "--b",
        "1",
        "--report",
        r,
    ]);
    assert_eq!(code(&out), 2);
    // A dense budget below the coverage threshold is refused.
    let out = abcover(&[
        "verify",
        "--theorem",
        "main0",
        "--n",
        "10",
        "--a",
        "2",
        "--b",
        "2",
        "--corpus",
        "dense:3",
        "--report",
        r,
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corpus insufficient"));
    assert!(!report.exists());
    // Suites are not campaigns.
    let out = abcover(&[
        "verify",
        "--theorem",
        "lemma21",
        "--n",
        "6",
        "--a",
        "1",
        "--b",
        "1",
        "--report",
        r,
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn resource_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("g.g6");
    let out = abcover(&["enumerate", "--n", "9", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn rho_of_h_graph() {
    let out = abcover(&["rho", "--H", "6", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rho: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("rho "))
        .unwrap()
        .parse()
        .unwrap();
    // Largest root of x^3 - 3x^2 - 6x + 4.
    let p = |x: f64| x * x * x - 3.0 * x * x - 6.0 * x + 4.0;
    assert!(p(rho).abs() < 1e-7, "{rho}");
    assert!(rho > 4.2 && rho < 4.21);
}

#[test]
fn enumerate_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    let p = path.to_str().unwrap();
    assert_eq!(code(&abcover(&["enumerate", "--n", "5", "--out", p])), 0);
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 34);
    let args = [
        "enumerate",
        "--n",
        "10",
        "--complement-budget",
        "2",
        "--out",
        p,
    ];
    assert_eq!(code(&abcover(&args)), 0);
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 4);
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let p = path.to_str().unwrap();
    for jobs in ["1", "3"] {
        let out = abcover(&[
            "verify",
            "--theorem",
            "main0",
            "--n",
            "6",
            "--a",
            "1",
            "--b",
            "1",
            "--jobs",
            jobs,
            "--report",
            p,
        ]);
        assert_eq!(code(&out), 0);
        let reports =
            abcover::harness::report::parse_reports(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert!(r.passed());
        assert_eq!(r.extremal_value.to_string(), "12");
        assert_eq!(r.extremal_set.len(), 2);
        r.replay_witnesses().unwrap();
    }
}

#[test]
fn verify_accepts_hyphenated_ids() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let out = abcover(&[
        "verify",
        "--theorem",
        "hao-li-size",
        "--n",
        "4",
        "--a",
        "1",
        "--b",
        "2",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("theorem = hao_li_size"));
    assert!(text.contains("extremal_value = 3"));
}

#[test]
fn suite_to_stdout() {
    let out = abcover(&[
        "suite",
        "--names",
        "lemma21,lemma32",
        "--corpus",
        "all-upto",
        "--n",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let reports = abcover::harness::report::parse_reports(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.passed()));
    let out = abcover(&["suite", "--names", "main0"]);
    assert_eq!(code(&out), 2);
}
