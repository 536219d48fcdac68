use std::process::{Command, Output};

fn eqtheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqtheta"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theta_tables() {
    let o = eqtheta(&["theta", "--f", "3", "--T", "2", "--j", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "sigma_1\t1/2\nsigma_2\t-1/2\n");
    assert_eq!(stdout(&eqtheta(&["theta", "--f", "1", "--j", "-1", "--S-extra", "5"])), "sigma_1\t1/3\n");
    assert_eq!(stdout(&eqtheta(&["theta", "--f", "3", "--j", "0"])), "sigma_1\t1/6\nsigma_2\t-1/6\n");
}

#[test]
fn empty_config_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.cfg");
    std::fs::write(&cfg, "# nothing\n").unwrap();
    let o = eqtheta(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["summary"], serde_json::json!({"verified": 0, "failed": 0, "skipped": 0}));
    assert_eq!(report["results"], serde_json::json!([]));
    assert_eq!(report["meta"]["timestamp"], 1700000000);
}

#[test]
fn usage_and_config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "f = 9\ncolour = blue\n").unwrap();
    let o = eqtheta(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    assert_eq!(eqtheta(&["verify", "--config", "/nonexistent/x.cfg"]).status.code(), Some(1));
    assert_eq!(eqtheta(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(eqtheta(&["theta", "--f", "9", "--T", "3", "--j", "0"]).status.code(), Some(1));
    assert_eq!(eqtheta(&["--version"]).status.code(), Some(0));
}

#[test]
fn stark0_passes_and_zero_tolerance_fails() {
    let o = eqtheta(&["stark0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.ends_with("pass")).count() == 8, "{text}");
    assert_eq!(eqtheta(&["stark0", "--f", "5", "--tolerance", "0"]).status.code(), Some(2));
    assert_eq!(eqtheta(&["stark0", "--f", "4"]).status.code(), Some(1));
}

#[test]
fn worker_cap_does_not_change_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.cfg");
    std::fs::write(&cfg, "f = 9 25\nj = 0..-3\nk = 0..-3\nT = 2 7\nchecks = minus delta integrality\n").unwrap();
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_eqtheta"))
            .args(["verify", "--config", cfg.to_str().unwrap()])
            .env("SOURCE_DATE_EPOCH", "0")
            .env("EQTHETA_WORKERS", workers)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_matrix() {
    let a = eqtheta(&["selftest", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = eqtheta(&["selftest", "--seed", "3"]);
    let strip = |s: String| s.lines().map(|l| l.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
    let bad = eqtheta(&["selftest", "--corrupt"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("FAIL"));
}
