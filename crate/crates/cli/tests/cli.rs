use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use rtmkit::lts::{observable_traces, parse_lts, Action};
use rtmkit::ptm::{echo_ptm, toggle_ptm};
use rtmkit::rtm::{fig1_right, parse_rtm};

const TWO_RULES: &str = "states: p q\ninitial: p\nfinal: q\nalphabet: 1\nrule p _ -> a 1 R q\nrule q _ -> b _ L p\n";
const ONE_CHOICE: &str = "states: p q\ninitial: p\nfinal: q\nalphabet:\nrule p _ -> a _ R q\n";

fn dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&d).unwrap();
    d
}

fn file(name: &str, contents: &str) -> String {
    let path = dir().join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtmkit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn the_sender_produces_its_first_word() {
    let m = file("right.rtm", &fig1_right().to_text());
    let o = run(&["rtm-explore", "--machine", &m, "--depth", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let l = parse_lts(&stdout(&o)).unwrap();
    let want = vec![Action::parse("i!1").unwrap(), Action::parse("i!#").unwrap()];
    assert!(observable_traces(&l, 2).contains(&want));
}

#[test]
fn compiling_and_checking_a_machine() {
    let m = file("two.rtm", TWO_RULES);
    let spec = dir().join("two.tcp").to_string_lossy().into_owned();
    let left = dir().join("two-spec.lts").to_string_lossy().into_owned();
    let right = dir().join("two-machine.lts").to_string_lossy().into_owned();
    assert_eq!(run(&["compile", "--machine", &m, "--out", &spec]).status.code(), Some(0));
    assert_eq!(run(&["calc-explore", "--spec", &spec, "--depth", "2", "--observable", "--out", &left]).status.code(), Some(0));
    assert_eq!(run(&["rtm-explore", "--machine", &m, "--depth", "2", "--observable", "--out", &right]).status.code(), Some(0));
    let o = run(&["bisim", "--left", &left, "--right", &right, "--divergence"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("related\n"));
}

#[test]
fn unrelated_systems_exit_with_one() {
    let a = file("a.lts", "des (0, 1, 2)\n(0, \"a\", 1)\n");
    let b = file("b.lts", "des (0, 1, 2)\n(0, \"b\", 1)\n");
    let o = run(&["bisim", "--left", &a, "--right", &b]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not related: pair (0, 0) violates clause 1\n");
    let o = run(&["compose", "--left", &a, "--right", &b, "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_lts(&stdout(&o)).unwrap().num_states(), 4);
}

#[test]
fn godel_numbers_round_trip() {
    let text = fig1_right().to_text();
    let m = file("godel.rtm", &text);
    let o = run(&["godel", "encode", "--machine", &m]);
    assert_eq!(o.status.code(), Some(0));
    let code = stdout(&o);
    let o = run(&["godel", "decode", "--code", code.trim()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_rtm(&stdout(&o)).unwrap(), fig1_right());
    assert_eq!(stdout(&o), text);
}

#[test]
fn the_repl_offers_a_single_option() {
    let m = file("one.rtm", ONE_CHOICE);
    let mut child = Command::new(env!("CARGO_BIN_EXE_rtmkit"))
        .args(["rtm-repl", "--machine", &m])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0\nquit\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[0] a"));
    assert!(!text.contains("[1]"));
    assert!(text.contains("final"));
}

#[test]
fn generating_a_simulator() {
    let l = file("chain.lts", "des (0, 2, 3)\n(0, \"a\", 1)\n(1, \"b\", 2)\n");
    let o = run(&["simgen", "--lts", &l, "--bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(parse_rtm(&stdout(&o)).is_ok());
    assert_eq!(run(&["simgen", "--lts", &l, "--bound", "0"]).status.code(), Some(2));
}

#[test]
fn persistent_machines() {
    for (name, m) in [("echo.ptm", echo_ptm()), ("toggle.ptm", toggle_ptm())] {
        let path = file(name, &m.to_text());
        let o = run(&["ptm-its", "--machine", &path]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("initial: ε\n"));
        let o = run(&["ptm-roundtrip", "--machine", &path]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("isomorphic"));
    }
}

#[test]
fn malformed_input_exits_with_two() {
    let bad = file("bad.rtm", "states p\n");
    let bad_lts = file("bad.lts", "des (0, 1)\n");
    let bad_tcp = file("bad.tcp", "X = Y\nroot: X\n");
    let bad_ptm = file("bad.ptm", "rule q\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["rtm-explore", "--machine", &bad],
        vec!["rtm-explore", "--machine", "/nonexistent/file.rtm"],
        vec!["bisim", "--left", &bad_lts, "--right", &bad_lts],
        vec!["compile", "--machine", &bad],
        vec!["calc-explore", "--spec", &bad_tcp],
        vec!["simgen", "--lts", &bad_lts],
        vec!["compose", "--left", &bad, "--right", &bad],
        vec!["ptm-its", "--machine", &bad_ptm],
        vec!["ptm-roundtrip", "--machine", &bad_ptm],
        vec!["godel", "decode", "--code", "0"],
        vec!["godel", "decode", "--code", "x"],
        vec!["rtm-repl", "--machine", &bad],
        vec!["no-such-command"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let m = file("repeat.rtm", &fig1_right().to_text());
    let t = file("repeat.tcp", "X = a.X + b.<c!d.1 || c?d.1>_{c}\nroot: X\n");
    for args in [
        vec!["rtm-explore", "--machine", &m, "--depth", "12"],
        vec!["compile", "--machine", &m],
        vec!["calc-explore", "--spec", &t],
        vec!["compose", "--left", &m, "--right", &m, "--channels", "i", "--depth", "6"],
    ] {
        let first = run(&args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, run(&args).stdout, "{args:?}");
    }
}
