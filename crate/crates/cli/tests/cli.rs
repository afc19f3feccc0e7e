// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use readonce::verify::enumerate_readonce;

fn readonce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_readonce"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_test(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_test_then_verify_for_every_n3_target() {
    let dir = tempfile::tempdir().unwrap();
    for l in [2, 3] {
        let l_arg = l.to_string();
        let cache = dir.path().join(format!("cat-{l}.txt"));
        let cache = cache.to_str().unwrap();
        for f in enumerate_readonce(3, l, true).unwrap().targets() {
            let tt = f.to_string();
            let gen = readonce(&["gen-test", "--tt", &tt, "--l", &l_arg]);
            assert_eq!(gen.status.code(), Some(0), "{tt}: {}", stderr(&gen));
            let path = write_test(dir.path(), "m.txt", &stdout(&gen));
            let out = readonce(&[
                "verify",
                "--tt",
                &tt,
                "--l",
                &l_arg,
                "--test",
                &path,
                "--catalog-cache",
                cache,
            ]);
            assert_eq!(out.status.code(), Some(0), "{tt} l={l}: {}", stdout(&out));
            assert_eq!(stdout(&out), "CHECKING TEST: yes\n");
        }
    }
}

#[test]
fn formula_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let gen = readonce(&["gen-test", "--formula", "or(x1,or(x2,x3))", "--l", "2"]);
    assert_eq!(gen.status.code(), Some(0));
    let text = stdout(&gen);
    assert!(text.starts_with("n=3\n"));
    assert!(text.lines().count() - 1 <= 12);
    let path = write_test(dir.path(), "m.txt", &text);
    let out = readonce(&[
        "verify",
        "--formula",
        "or(x1,or(x2,x3))",
        "--l",
        "2",
        "--test",
        &path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "CHECKING TEST: yes\n");
}

#[test]
fn insufficient_test_is_rejected_with_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_test(dir.path(), "m.txt", "n=3\n000 0\n");
    let out = readonce(&["verify", "--tt", "tt:3:fe", "--l", "2", "--test", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "CHECKING TEST: no\ncounterexample: tt:3:00\n");
}

#[test]
fn factor_examples() {
    let out = readonce(&["factor", "--tt", "tt:3:e4", "--l", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "p:e4(x1,x2,x3)\n");
    let out = readonce(&["factor", "--tt", "tt:3:e4", "--l", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NOT READ-ONCE\n");
}

#[test]
fn malformed_inputs_exit_2_naming_the_token() {
    let cases: [(&[&str], &str); 5] = [
        (&["factor", "--formula", "and(x1,q2)", "--l", "2"], "q2"),
        (&["factor", "--formula", "and(x1,x1)", "--l", "2"], "x1"),
        (&["factor", "--tt", "tt:3:zz", "--l", "2"], "zz"),
        (&["gen-test", "--tt", "tt:3:e", "--l", "2"], "e"),
        (
            &[
                "hypercube",
                "find",
                "--tt",
                "tt:3:e4",
                "--l",
                "2",
                "--vars",
                "1,y",
            ],
            "y",
        ),
    ];
    for (args, token) in cases {
        let out = readonce(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert!(err.contains(token), "{args:?}: {err}");
        if !err.contains("Usage") {
            assert_eq!(err.lines().count(), 1, "{err}");
        }
    }
    assert_eq!(readonce(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        readonce(&["factor", "--tt", "tt:3:e4", "--formula", "x1", "--l", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reltable_of_d_has_one_star_row() {
    let out = readonce(&["reltable", "--tt", "tt:3:e4", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with('*')).count(), 1);
    assert!(text.contains("w=2,3\t*"));
}

#[test]
fn hypercube_operations() {
    let out = readonce(&[
        "hypercube",
        "find",
        "--tt",
        "tt:3:e4",
        "--l",
        "2",
        "--vars",
        "1,2",
    ]);
    assert_eq!(stdout(&out).lines().count(), 2);
    let out = readonce(&[
        "hypercube",
        "find",
        "--tt",
        "tt:3:e4",
        "--l",
        "2",
        "--vars",
        "2,3",
    ]);
    assert_eq!(stdout(&out), "none\n");
    let out = readonce(&[
        "hypercube",
        "expand",
        "--tt",
        "tt:3:e4",
        "--l",
        "2",
        "--fix",
        "3=0",
        "--q",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("hc:{free=1,2,3; fix=}"));
    // f2 of the non-stable examples over (x, y, u0, u1).
    let out = readonce(&[
        "hypercube",
        "stable",
        "--tt",
        "tt:4:feb0",
        "--l",
        "3",
        "--vars",
        "3,4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("STABLE: no\n"));
    assert!(text.contains("w=2,3,4\t"));
}

#[test]
fn enumerate_min_test_identify() {
    let out = readonce(&["enumerate", "--n", "3", "--l", "2"]);
    let text = stdout(&out);
    assert!(text.starts_with("3,2,constants\n"));
    assert_eq!(text.lines().count(), 153);
    let out = readonce(&["min-test", "--tt", "tt:3:fe", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 8);
    let dir = tempfile::tempdir().unwrap();
    let gen = readonce(&["gen-test", "--tt", "tt:3:e4", "--l", "3"]);
    let path = write_test(dir.path(), "m.txt", &stdout(&gen));
    let out = readonce(&["identify", "--test", &path, "--l", "3"]);
    assert_eq!(stdout(&out), "tt:3:e4\np:e4(x1,x2,x3)\n");
    let empty = write_test(dir.path(), "e.txt", "n=3\n");
    assert_eq!(
        readonce(&["identify", "--test", &empty, "--l", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn json_mirrors_text() {
    let out = readonce(&[
        "--json",
        "verify",
        "--tt",
        "tt:2:e",
        "--l",
        "2",
        "--test",
        "/nonexistent",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = readonce(&["factor", "--tt", "tt:3:e4", "--l", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tree"], "p:e4(x1,x2,x3)");
    let out = readonce(&["gen-test", "--tt", "tt:3:fe", "--l", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["size"], 7);
    assert_eq!(v["vectors"][0]["input"], "000");
}

#[test]
fn no_dedup_keeps_shared_vectors() {
    let out = readonce(&["gen-test", "--tt", "tt:3:fe", "--l", "2", "--no-dedup"]);
    assert_eq!(stdout(&out).lines().count(), 13);
}

#[test]
fn props_runs_one_suite() {
    let out = readonce(&[
        "props", "--seed", "3", "--suite", "lemma2", "--budget", "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "PASS lemma2 cases=20 failures=0\n");
    let out = readonce(&["props", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "");
}
