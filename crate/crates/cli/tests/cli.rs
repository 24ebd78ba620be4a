use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pebble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pebble")).args(args).output().expect("run pebble")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares stdout with a stored file; `PEBBLE_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let o = pebble(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let path = golden_dir().join(name);
    if std::env::var_os("PEBBLE_BLESS").is_some() {
        std::fs::write(&path, &o.stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&o), want, "{args:?} differs from {name}");
}

#[test]
fn info() {
    golden("info-flower5.txt", &["info", "flower:5"], 0);
}

#[test]
fn snl() {
    golden("snl-flower5.txt", &["snl", "--graph", "flower:5"], 0);
}

#[test]
fn wfl() {
    golden("wfl-j3-z0.txt", &["wfl", "--graph", "flower:3", "--strategies", "j3-z0", "--lp"], 0);
}

#[test]
fn pi_on_a_cycle() {
    golden("pi-cycle9.txt", &["pi", "--graph", "cycle:9"], 0);
}

#[test]
fn class0() {
    golden("class0-blanusa2.json", &["class0", "--graph", "blanusa:2"], 0);
    let o = pebble(&["class0", "--graph", "petersen"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "class-0-verified");
    assert_eq!(v["pi"], 10);
}

#[test]
fn bounds() {
    golden("bounds-flower5.txt", &["bounds", "--graph", "flower:5"], 0);
    let o = pebble(&["bounds", "--graph", "petersen", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(10), Some(10)));
}

#[test]
fn corpus_listing_and_check() {
    golden("corpus-list.txt", &["corpus", "list"], 0);
    let o = pebble(&["corpus", "check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with(", 0 failed"));
}

#[test]
fn corpus_directory_flag() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    let o = pebble(&["--corpus", dir.to_str().unwrap(), "info", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vertices  10"));
    let o = pebble(&["--corpus", "/nonexistent", "info", "petersen"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn solve_exit_codes() {
    let o = pebble(&["solve", "--graph", "flower:5", "--config", "j5-fig1"]);
    assert_eq!((o.status.code(), stdout(&o).lines().next()), (Some(1), Some("unsolvable")));

    let o = pebble(&["solve", "--graph", "blanusa:2", "--config", "blanusa2-size22", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("solvable"), "{out}");
    assert!(out.contains("x3"), "{out}");

    let o = pebble(&["solve", "--graph", "watkins", "--config", "watkins-fig4", "--budget", "0.5"]);
    assert_eq!((o.status.code(), stdout(&o).lines().next()), (Some(2), Some("unknown")));
}

#[test]
fn solve_from_a_file() {
    let dir = std::env::temp_dir().join(format!("pebble-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c5.cfg");
    std::fs::write(&path, "# two far vertices\n2 1\n3 1\n").unwrap();
    let file = path.to_str().unwrap();
    let o = pebble(&["solve", "--graph", "cycle:5", "--config", file, "--target", "0"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(&path, "2 4\n").unwrap();
    let o = pebble(&["solve", "--graph", "cycle:5", "--config", file, "--target", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = pebble(&["solve", "--graph", "cycle:5", "--config", file]);
    assert_eq!(o.status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budgeted_pi_reports_unknown() {
    let o = pebble(&["pi", "--graph", "flower:7", "--target", "v0", "--budget", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("unknown: pi >= "));
}

#[test]
fn errors_exit_with_three() {
    for args in [
        &["info", "nosuch"][..],
        &["solve", "--graph", "petersen", "--config", "j5-fig1"],
        &["wfl", "--graph", "flower:5", "--strategies", "nosuch"],
        &["pi", "--graph", "petersen", "--target", "q"],
    ] {
        let o = pebble(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn reproduce_table() {
    let o = pebble(&["reproduce", "table1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let ids: Vec<&str> = rows.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(
        ids,
        ["petersen", "flower:3", "flower:5", "flower:7", "flower:m", "blanusa:1", "blanusa:2", "loupekine", "double-star", "szekeres", "watkins"]
    );
    assert_eq!(v["worst"], "FLAG");
    let watkins = &rows[10];
    assert_eq!(watkins["computed"][0], 183);
    assert_eq!(watkins["status"], "PASS (tighter)");
}
