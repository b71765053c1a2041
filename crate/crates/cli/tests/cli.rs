use std::process::{Command, Output};

fn divcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divcheck")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn cover_reproduces_image() {
    let o = divcheck(&["cover", "--abc", "1,3,10", "--point", "-11,3,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(1523698559 : -2736572309 : 826803945)");
}

#[test]
fn cover_rejects_off_curve_point() {
    let o = divcheck(&["cover", "--abc", "1,3,10", "--point", "1,1,1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn local_queries() {
    let run = |op: &str, q: &str, v: &str| stdout(&divcheck(&["local", "--op", op, "--value", q, "--place", v]));
    assert_eq!(run("square", "65", "2").trim(), "true");
    assert_eq!(run("square", "-1", "real").trim(), "false");
    assert_eq!(run("cube", "10", "3").trim(), "true");
    assert_eq!(run("cube", "3", "7").trim(), "false");
    assert_eq!(run("cube", "-1/8", "5").trim(), "true");
}

#[test]
fn search_finds_small_point() {
    let o = divcheck(&["search", "--curve", "1,3,10", "--height", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "(11 : -3 : -5)"), "{}", stdout(&o));
}

#[test]
fn verify_single_scenario_writes_report() {
    let dir = std::env::temp_dir().join(format!("divcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = divcheck(&["verify", "--scenario", "lemma42-suite", "--report", path.to_str().unwrap(), "--canonical"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], "divcheck-report/1");
    assert_eq!(report["status"], "pass");
    assert!(!report.to_string().contains("elapsed_ms"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_with_failing_config_exits_one() {
    let dir = std::env::temp_dir().join(format!("divcheck-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(&path, "[dz2]\npoint = [341, 59137]\n").unwrap();
    let o = divcheck(&["verify", "--scenario", "dz2", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail         point-on-curve"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(divcheck(&["verify", "--scenario", "nope"]).status.code(), Some(3));
    assert_eq!(divcheck(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(divcheck(&["search", "--curve", "1,2"]).status.code(), Some(3));
    assert_eq!(divcheck(&["local", "--op", "cube", "--value", "2", "--place", "4"]).status.code(), Some(3));
    assert_eq!(divcheck(&["--help"]).status.code(), Some(0));
}
