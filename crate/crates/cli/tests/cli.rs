use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use linkhom_cli::cache::CacheRecord;

fn linkhom(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkhom")).args(args).env("HOM_CACHE_DIR", cache).output().expect("binary runs")
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn json_output_round_trips_through_the_record() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkhom(dir.path(), &["--json", "compute", "kh", "--family", "trefoil"]);
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    let printed = text(&o.stdout);
    let rec = CacheRecord::from_json(&printed).unwrap();
    assert_eq!(rec.to_json(), printed);
    assert_eq!(rec.dims().total(), 6);
    assert!(rec.key_is_consistent());
    // The stored file holds the same bytes.
    let stored = fs::read_to_string(dir.path().join(format!("{}.json", rec.key))).unwrap();
    assert_eq!(stored, printed);
}

#[test]
fn second_run_hits_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "gh-hat", "--grid", "trefoil"];
    let first = linkhom(dir.path(), &args);
    assert_eq!(code(&first), 0);
    assert!(text(&first.stderr).contains("cache stored"));
    let second = linkhom(dir.path(), &args);
    assert!(text(&second.stderr).contains("cache hit"), "{}", text(&second.stderr));
    assert_eq!(first.stdout, second.stdout);
    let fresh = linkhom(dir.path(), &["compute", "gh-hat", "--grid", "trefoil", "--fresh"]);
    assert!(!text(&fresh.stderr).contains("cache hit"));
}

#[test]
fn cache_list_inspect_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    let empty = linkhom(dir.path(), &["cache", "list"]);
    assert_eq!(code(&empty), 0);
    assert!(text(&empty.stdout).contains("is empty"));

    for fam in ["unknot", "hopf"] {
        assert_eq!(code(&linkhom(dir.path(), &["compute", "kh", "--family", fam])), 0);
    }
    let list = linkhom(dir.path(), &["cache", "list"]);
    let lines: Vec<String> = text(&list.stdout).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 2, "{lines:?}");
    let prefix = lines[0].split_whitespace().next().unwrap().to_string();

    let inspect = linkhom(dir.path(), &["--json", "cache", "inspect", &prefix]);
    assert_eq!(code(&inspect), 0);
    let rec = CacheRecord::from_json(&text(&inspect.stdout)).unwrap();
    assert!(rec.key.starts_with(&prefix));
    assert_eq!(code(&linkhom(dir.path(), &["cache", "inspect", "ffffffffffffffff"])), 2);

    let clear = linkhom(dir.path(), &["cache", "clear"]);
    assert!(text(&clear.stdout).contains("removed 2"));
    assert!(text(&linkhom(dir.path(), &["cache", "list"]).stdout).contains("is empty"));
}

#[test]
fn stale_version_is_reported_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkhom(dir.path(), &["--json", "compute", "kh", "--family", "hopf"]);
    let mut rec = CacheRecord::from_json(&text(&o.stdout)).unwrap();
    rec.tool_version = "0.0.0-old".into();
    fs::write(dir.path().join(format!("{}.json", rec.key)), rec.to_json()).unwrap();

    let list = linkhom(dir.path(), &["cache", "list"]);
    assert!(text(&list.stderr).contains("written by version 0.0.0-old"), "{}", text(&list.stderr));
    let again = linkhom(dir.path(), &["compute", "kh", "--family", "hopf"]);
    assert_eq!(code(&again), 0);
    assert!(text(&again.stderr).contains("ignored"), "{}", text(&again.stderr));
    let refreshed =
        CacheRecord::from_json(&fs::read_to_string(dir.path().join(format!("{}.json", rec.key))).unwrap()).unwrap();
    assert!(refreshed.version_matches());
}

#[test]
fn flag_overrides_the_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    assert_eq!(code(&linkhom(env_dir.path(), &["--cache-dir", flag, "compute", "kh", "--family", "unknot"])), 0);
    assert_eq!(fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    assert!(fs::read_dir(env_dir.path()).unwrap().next().is_none());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&linkhom(d, &["compute", "kh", "--family", "unknot"])), 0);
    assert_eq!(code(&linkhom(d, &["compute", "kh", "--pd", "/nonexistent/file.txt"])), 2);
    assert_eq!(code(&linkhom(d, &["compute", "kh", "--family", "nope"])), 2);
    assert_eq!(code(&linkhom(d, &["--field", "F4", "compute", "kh", "--family", "unknot"])), 2);
    assert_eq!(code(&linkhom(d, &["--max-grid", "5", "compute", "gh-tilde", "--grid", "figure8"])), 3);
    assert_eq!(code(&linkhom(d, &["verify", "hfk-mutation", "--case", "kt:2,1"])), 3);
    assert_eq!(code(&linkhom(d, &["verify", "clifford", "--nu", "231"])), 0);
    assert_eq!(code(&linkhom(d, &["verify", "closure-fraction", "--tangle", "sample:2"])), 0);
}

#[test]
fn malformed_sweep_row_fails_without_stopping_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.txt");
    fs::write(&table, "# cases\nrational:-1/2 | rational:2/3 | y | F2,Q\nrational:1/2 | rational:2/3\n").unwrap();
    let t = table.to_str().unwrap();
    let o = linkhom(dir.path(), &["--jobs", "2", "verify", "kh-mutation", "--table", t]);
    assert_eq!(code(&o), 1);
    let out = text(&o.stdout);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3, "{out}");
    assert!(lines[0].starts_with("PASS line 2"));
    assert!(lines[1].starts_with("PASS line 2"));
    assert!(lines[2].starts_with("FAIL line 3"));
    let one = linkhom(dir.path(), &["--jobs", "1", "verify", "kh-mutation", "--table", t]);
    assert_eq!(one.stdout, o.stdout);
}

#[test]
fn verify_prints_one_line_per_assertion() {
    let dir = tempfile::tempdir().unwrap();
    let o = linkhom(dir.path(), &["--field", "F2,F3,Q", "verify", "kh-mutation", "--case", "kt:2,1"]);
    assert_eq!(code(&o), 0, "{}", text(&o.stderr));
    let out = text(&o.stdout);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3, "{out}");
    let j = linkhom(dir.path(), &["--json", "verify", "skein-half-rank", "--l1", "unknot2", "--l2", "unknot2"]);
    assert_eq!(code(&j), 0, "{}", text(&j.stderr));
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["target"], "skein-half-rank");
    assert!(v["assertions"].as_array().is_some_and(|a| !a.is_empty()));
}
