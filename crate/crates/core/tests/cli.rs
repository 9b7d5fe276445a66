use std::process::Command;

fn bidgame(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bidgame"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.success(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn outcome_vectors() {
    let (ok, out, _) = bidgame(&["outcome", "1", "--tb", "2"]);
    assert!(ok);
    assert_eq!(out.lines().next(), Some("LLLLLL"));
    let (_, out, _) = bidgame(&["outcome", "0", "--tb", "1"]);
    assert_eq!(out.lines().next(), Some("RRLL"));
    let (_, out, _) = bidgame(&["outcome", "*", "--tb", "0..2", "--json"]);
    let lines: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2]["tb"], 2);
}

#[test]
fn classify_and_compare() {
    let (ok, out, _) = bidgame(&["classify", "1", "--tb", "2"]);
    assert!(ok);
    assert!(out.contains("GT0 Proven (test 3)"), "{out}");
    let (ok, out, _) = bidgame(&["compare", "^", "1/2", "--tb", "1"]);
    assert!(ok);
    assert!(out.starts_with("^ < 1/2 at tb=1"), "{out}");
    let (ok, _, err) = bidgame(&["compare", "1", "1/2", "--tb", "2", "--inverse", "1"]);
    assert!(!ok);
    assert!(err.contains("not a certified inverse"), "{err}");
}

#[test]
fn verify_writes_jsonl() {
    let dir = std::env::temp_dir().join(format!("bidgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("integers.jsonl");
    let (ok, _, err) = bidgame(&[
        "verify",
        "integers",
        "--tb",
        "0..1",
        "--n",
        "2",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(ok, "{err}");
    assert!(err.contains("integers: pass"));
    let text = std::fs::read_to_string(&file).unwrap();
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["kind"], "summary");
    assert_eq!(last["pass"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_exit_nonzero() {
    let (ok, _, err) = bidgame(&["outcome", "{0|", "--tb", "1"]);
    assert!(!ok);
    assert!(err.starts_with("error:"));
    let (ok, _, _) = bidgame(&["verify", "nope"]);
    assert!(!ok);
    let (ok, _, _) = bidgame(&["enumerate", "--birthday", "3", "--sample", "0", "--count"]);
    assert!(ok);
}

#[test]
fn enumerate_counts() {
    let (_, out, _) = bidgame(&["enumerate", "--birthday", "2", "--count"]);
    assert_eq!(out.trim(), "256");
}

#[test]
fn negative_games_are_values_not_flags() {
    let (ok, out, err) = bidgame(&["compare", "1", "1/2", "--tb", "2", "--inverse", "-1/2"]);
    assert!(ok, "{err}");
    assert!(out.starts_with("1 > 1/2"), "{out}");
    let (ok, out, _) = bidgame(&["outcome", "-1", "--tb", "1"]);
    assert!(ok);
    assert_eq!(out.lines().next(), Some("RRRR"));
}
