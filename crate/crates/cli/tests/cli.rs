use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn assertlint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assertlint"))
        .args(args)
        .env_remove("ASSERTLINT_CONFIG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(rel: &str) -> String {
    fixtures().join(rel).to_string_lossy().into_owned()
}

#[test]
fn clean_listing_exits_zero() {
    let o = assertlint(&["lint", &path("listings/listing1")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn finding_exits_one_and_can_be_disabled() {
    let dir = path("listings/listing2");
    let o = assertlint(&["lint", &dir]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("RangeTest.java:"));
    assert!(out.contains("AP4-digits-only"));

    let o = assertlint(&["lint", "--disable", "AP4", &dir]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn min_severity_warning_ignores_info() {
    let o = assertlint(&["lint", "--format", "json", &path("message-examples")]);
    assert_eq!(o.status.code(), Some(1));
    let findings: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(findings.iter().any(|f| f["severity"] == "info"));

    let o = assertlint(&[
        "lint", "--min-severity", "warning", "--disable", "AP1", "--disable", "AP3", "--disable", "AP4",
        &path("message-examples"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("AP2-misleading"));
}

#[test]
fn missing_path_exits_two() {
    let o = assertlint(&["scan", "/definitely/not/here"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn empty_directory_warns_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let o = assertlint(&["lint", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: no test files found"));

    let o = assertlint(&["stats", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("note: no assertion"));
}

#[test]
fn require_messages_reports_missing_messages() {
    let dir = path("message-examples");
    let without = stdout(&assertlint(&["lint", &dir]));
    assert!(!without.contains("NO-MESSAGE"));
    let with = stdout(&assertlint(&["lint", "--require-messages", &dir]));
    assert!(with.contains("NO-MESSAGE"));
    let enabled = stdout(&assertlint(&["lint", "--enable", "NO-MESSAGE", &dir]));
    assert_eq!(enabled, with);
}

#[test]
fn jobs_do_not_change_output() {
    let dir = fixtures();
    let dir = dir.to_str().unwrap();
    let one = assertlint(&["scan", "--jobs", "1", dir]);
    let four = assertlint(&["scan", "--jobs", "4", dir]);
    let default = assertlint(&["scan", dir]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, default.stdout);
    assert_eq!(assertlint(&["scan", "--jobs", "0", dir]).status.code(), Some(2));
}

#[test]
fn stats_json_equals_scan() {
    let dir = path("message-examples");
    let scan = assertlint(&["scan", &dir]);
    let stats = assertlint(&["stats", "--format", "json", &dir]);
    assert_eq!(scan.stdout, stats.stdout);
    let report: serde_json::Value = serde_json::from_slice(&scan.stdout).unwrap();
    assert_eq!(report["schema"], "assert-msg-report/1");
}

#[test]
fn stats_table_lists_categories() {
    let o = assertlint(&["stats", &path("message-examples")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for label in ["Text", "Identifier", "Combination", "flesch_reading_ease"] {
        assert!(out.contains(label), "missing {label} in\n{out}");
    }
}

#[test]
fn csv_needs_directory_and_writes_sections() {
    let o = assertlint(&["scan", "--format", "csv", &path("message-examples")]);
    assert_eq!(o.status.code(), Some(2));

    let out = tempfile::tempdir().unwrap();
    let o = assertlint(&[
        "scan", "--format", "csv", "--out", out.path().to_str().unwrap(), &path("message-examples"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["totals", "categories", "readability", "findings", "pos_patterns"] {
        let file = out.path().join(format!("{name}.csv"));
        let text = fs::read_to_string(&file).unwrap();
        assert!(text.lines().count() >= 2, "{name}.csv is empty");
    }
}

#[test]
fn out_file_receives_json() {
    let out = tempfile::tempdir().unwrap();
    let file = out.path().join("report.json");
    let o = assertlint(&["scan", "--out", file.to_str().unwrap(), &path("listings")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
    assert_eq!(report["totals"]["test_classes"], 2);
}

#[test]
fn config_file_flags_and_env_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("assertlint.toml");
    fs::write(
        &config,
        "[rules]\nmin_words = 4\ndisable = [\"AP1\"]\n\n[pos]\ntop_k = 3\nlexicon = \"extra.tsv\"\n",
    )
    .unwrap();
    let config = config.to_str().unwrap();

    let o = assertlint(&["lint", "--print-config", "--config", config]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let printed: toml::Value = toml::from_str(&stdout(&o)).unwrap();
    assert_eq!(printed["rules"]["min_words"].as_integer(), Some(4));
    assert_eq!(printed["pos"]["top_k"].as_integer(), Some(3));
    let lexicon = printed["pos"]["lexicon"].as_str().unwrap();
    assert_eq!(PathBuf::from(lexicon), dir.path().join("extra.tsv"));
    assert!(printed["rules"]["disable"].as_array().unwrap().iter().any(|r| r.as_str().unwrap().starts_with("AP1")));

    let o = assertlint(&["lint", "--print-config", "--config", config, "--min-words", "3", "--enable", "AP1"]);
    let printed: toml::Value = toml::from_str(&stdout(&o)).unwrap();
    assert_eq!(printed["rules"]["min_words"].as_integer(), Some(3));
    assert!(printed["rules"]["disable"].as_array().unwrap().is_empty());

    let o = Command::new(env!("CARGO_BIN_EXE_assertlint"))
        .args(["lint", "--print-config"])
        .env("ASSERTLINT_CONFIG", config)
        .output()
        .unwrap();
    let printed: toml::Value = toml::from_str(&stdout(&o)).unwrap();
    assert_eq!(printed["rules"]["min_words"].as_integer(), Some(4));
}

#[test]
fn unknown_config_key_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    fs::write(&config, "[rules]\nmin_wrds = 4\n").unwrap();
    let o = assertlint(&["lint", "--print-config", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("min_wrds"));
}

#[test]
fn unknown_rule_is_an_error() {
    let o = assertlint(&["lint", "--disable", "AP9", &path("listings")]);
    assert_eq!(o.status.code(), Some(2));
}
