use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_braidmono"));
    cmd.env_remove("BRAIDMONO_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_cubic() {
    let o = run(&["verify", "--poly", "0 -3 0 1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: ConsistentWithTheorem"), "{text}");
    assert!(text.contains("frame_alignment: [-1 -2]"), "{text}");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        run(&["verify", "--poly", "0 0 -1 0 1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--poly", "0 0 0 0 0 0 1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify"]).status.code(), Some(64));
    assert_eq!(
        run(&["verify", "--poly", "1 two 1"]).status.code(),
        Some(64)
    );
}

#[test]
fn group_and_braid_commands() {
    let o = run(&["group", "--poly", "0 0 -1 0 1"]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(0), "order=8 full=false\n")
    );
    let o = run(&["braid", "eq", "1 2 1", "2 1 2", "--strands", "3"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "equal\n"));

    let mut child = bin()
        .args(["braid", "perm", "--strands", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"a1^-1 a2 a1\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "3 2 1\n");
}

#[test]
fn json_is_deterministic_and_seed_comes_from_env() {
    let args = [
        "monodromy",
        "--poly",
        "0.3 -1 0.2+0.5i 0 1",
        "--format",
        "json",
        "--seed",
        "4",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["group"]["order"], 24);
    assert_eq!(doc["entries"].as_array().unwrap().len(), 3);

    let env = bin()
        .args([
            "monodromy",
            "--poly",
            "0.3 -1 0.2+0.5i 0 1",
            "--format",
            "json",
        ])
        .env("BRAIDMONO_SEED", "4")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn infinity_word() {
    let o = run(&["infinity", "--poly", "0 -3 0 1"]);
    assert_eq!(stdout(&o), "2 1\n");
}

#[test]
fn critical_json() {
    let o = run(&["critical", "--poly", "0 0 -1 0 1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["generic"], false);
    assert_eq!(doc["branch_points"].as_array().unwrap().len(), 2);
}

#[test]
fn render_to_file_and_from_dump() {
    let dir = scratch("render");
    let svg = dir.join("word.svg");
    let o = run(&["render", "--word", "1 -2 1", "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"version="1.1""#));

    let dumps = dir.join("dumps");
    let o = run(&[
        "monodromy",
        "--poly",
        "0 -3 0 1",
        "--dump-dir",
        dumps.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["loop1.txt", "loop2.txt", "infinity.txt"] {
        assert!(dumps.join(name).exists(), "{name}");
    }
    let o = run(&[
        "render",
        "--track",
        dumps.join("loop1.txt").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("<polyline").count(), 3);

    let o = run(&["render", "--poly", "0 -3 0 1", "--loop", "1"]);
    assert_eq!(stdout(&o).matches(r#"stroke="white""#).count(), 1);
    assert_eq!(
        run(&["render", "--poly", "0 -3 0 1", "--loop", "7"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(run(&["render"]).status.code(), Some(64));
}
