use std::path::PathBuf;
use std::process::{Command, Output};

fn trisect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trisect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes_follow_the_verdict() {
    assert_eq!(trisect(&["validate", "catalog:cp2"]).status.code(), Some(0));
    assert_eq!(trisect(&["gprc-check", "/nonexistent/file.mat"]).status.code(), Some(4));
    assert_eq!(trisect(&["no-such-command"]).status.code(), Some(3));

    let hopf = scratch("hopf.mat");
    std::fs::write(&hopf, "0 1\n1 0\n").unwrap();
    let out = trisect(&["gprc-check", hopf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: Refuted"));
}

#[test]
fn json_reports_replay() {
    let out = trisect(&["--json", "classify", "catalog:s1xs3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = scratch("classify.json");
    std::fs::write(&report, &out.stdout).unwrap();
    let replayed = trisect(&["replay", report.to_str().unwrap()]);
    assert_eq!(
        replayed.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&replayed.stdout)
    );
}

#[test]
fn files_written_by_one_command_feed_the_next() {
    let stab = scratch("stab.tri");
    let out = trisect(&["stabilize", "catalog:cp2", "--type", "2", "-o", stab.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let hk = scratch("stab.hk");
    let out = trisect(&[
        "tri-to-hk",
        stab.to_str().unwrap(),
        "--picks",
        "auto",
        "-o",
        hk.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = trisect(&["hk-to-tri", hk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("(2;0,1,0)"));
}
