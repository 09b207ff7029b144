//! Behavioral tests for the command-line front end: exit codes, output
//! routing, corpus round-trips, and environment-variable budget caps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_leftorder"))
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn corpus_path(name: &str) -> PathBuf {
    repo_root().join("corpus").join(format!("{name}.grp"))
}

fn tmp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("leftorder-cli-test-{}-{name}", std::process::id()))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn betti_prints_b1_and_diagonal() {
    let out = bin().arg("betti").arg(corpus_path("thurston")).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("b1 = 0"), "{text}");
    assert!(text.contains("snf_diag = [1, 1, 1]"), "{text}");
}

#[test]
fn missing_file_is_usage_error() {
    let out = bin().arg("betti").arg("/nonexistent/file.grp").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_error_reports_location_and_exits_one() {
    let path = tmp_path("bad.grp");
    fs::write(&path, "gens: a b\nrels: a b^9 x\n").unwrap();
    let out = bin().arg("betti").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("undeclared generator `x`"), "{err}");
    fs::remove_file(&path).ok();
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = bin().arg("betti").arg("--frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_lo_rejects_identity_in_subset() {
    let out = bin()
        .arg("check-lo")
        .arg(corpus_path("zmod2"))
        .args(["--subset", "a^2", "--max-len", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("identity"), "{}", stderr(&out));
}

#[test]
fn check_lo_writes_artifact_to_stdout_without_out_flag() {
    let out = bin()
        .arg("check-lo")
        .arg(corpus_path("zmod2"))
        .args(["--subset", "a", "--max-len", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["artifact"], "semigroup_criterion");
    assert_eq!(doc["outcome"], "not_left_orderable");
}

#[test]
fn magnus_on_relators_is_precondition_error() {
    let out = bin()
        .arg("realize")
        .arg(corpus_path("z2"))
        .args(["--order", "magnus", "--radius", "1", "--iterates", "2"])
        .args(["--out", tmp_path("never.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_budget_cap_shrinks_the_search() {
    // with a one-node oracle budget the torsion products cannot be
    // certified, so the run stays undetermined
    let out = bin()
        .arg("check-lo")
        .arg(corpus_path("zmod2"))
        .args(["--subset", "a", "--max-len", "2"])
        .env("LEFTORDER_BUDGET_NODES", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["outcome"], "undetermined");
}

#[test]
fn threads_flag_changes_nothing_observable() {
    let run = |threads: &str| {
        let out = bin()
            .arg("check-lo")
            .arg(corpus_path("q8"))
            .args(["--subset", "a", "--max-len", "4", "--threads", threads])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        stdout(&out)
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn corpus_listing_and_shipped_files_agree() {
    let out = bin().arg("corpus").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let listing = stdout(&out);
    for name in [
        "zmod2", "zmod3", "zmod4", "zmod5", "zmod6", "zmod7", "z", "z2", "z3", "f2", "klein",
        "heisenberg", "q8", "thurston", "tsuboi",
    ] {
        assert!(listing.contains(name), "listing is missing {name}");
        // the shipped file equals the bundled text
        let dump = bin().arg("corpus").args(["--dump", name]).output().unwrap();
        assert_eq!(dump.status.code(), Some(0));
        let shipped = fs::read_to_string(corpus_path(name))
            .unwrap_or_else(|e| panic!("corpus/{name}.grp: {e}"));
        assert_eq!(stdout(&dump), shipped, "corpus/{name}.grp drifted from the bundled text");
    }
}

#[test]
fn corpus_dump_round_trips_through_parser() {
    for name in ["thurston", "heisenberg", "q8"] {
        let dump = bin().arg("corpus").args(["--dump", name]).output().unwrap();
        let text = stdout(&dump);
        let p = leftorder::presentation::parse_presentation(&text).unwrap();
        let again = leftorder::presentation::parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, again);
    }
}

#[test]
fn obstruct_requires_full_assignment() {
    let germs = tmp_path("partial.germ");
    fs::write(&germs, "a = x\n").unwrap();
    let out = bin()
        .arg("obstruct")
        .arg(corpus_path("klein"))
        .arg(&germs)
        .args(["--depth", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no germ named `b`"), "{}", stderr(&out));
    fs::remove_file(&germs).ok();
}

#[test]
fn germ_order_rejects_identity_germ() {
    let germs = tmp_path("identity.germ");
    fs::write(&germs, "f = x\n").unwrap();
    let out = bin()
        .arg("germ-order")
        .arg(&germs)
        .args(["--depth", "3", "--max-len", "2"])
        .args(["--out", tmp_path("never2.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    fs::remove_file(&germs).ok();
}

#[test]
fn verify_rejects_non_artifact_json() {
    let path = tmp_path("garbage.json");
    fs::write(&path, "{\"artifact\": \"unheard_of\"}").unwrap();
    let out = bin().arg("verify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    fs::remove_file(&path).ok();
}
