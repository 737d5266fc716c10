use std::io::Write;
use std::process::{Command, Output, Stdio};

use double_brackets::cli::parse_session;

const VAN_DEN_BERGH: &str = "algebra { gens: x, y }
bimodule { kind: outer }
bracket {
  <x,x> = x (x) 1 - 1 (x) x
  <y,y> = y (x) 1 - 1 (x) y
}
check antisym
check poisson
jacobiator x y y
rep jacobi 2
rep trace-bracket 2 x x*y
";

const TWISTED: &str = "algebra { gens: x, y }
bimodule { kind: outer ; alpha: x -> y, y -> x ; beta: x -> y, y -> x }
bracket {
  <x,x> = y (x) 1 - 1 (x) y
  <y,y> = x (x) 1 - 1 (x) x
}
check poisson
";

const RIGHT_UNIT: &str = "algebra { gens: x, y }
bimodule { kind: right }
bracket { <x,y> = 1 (x) 1 }
check weak-poisson --sigma 12 --sigma-prime 12
rep tensor 2 --convention tensor x y
check poisson
";

fn dbr(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dbr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn poisson_session_exits_zero() {
    let o = dbr(&["run"], VAN_DEN_BERGH);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("verdict: Poisson\n"), "{out}");
    assert!(out.contains("> jacobiator x y y\nvalue: 0\n"), "{out}");
}

#[test]
fn counterexample_exits_one_with_witness() {
    let o = dbr(&["run"], TWISTED);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("witness: (x, y, y)"), "{out}");
    assert!(out.contains("defect: y (x) 1 (x) 1 - 1 (x) y (x) 1"), "{out}");
}

#[test]
fn right_unit_is_weak_but_not_poisson() {
    let o = dbr(&["run"], RIGHT_UNIT);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("verdict: WeakPoisson((12),(12))\n"), "{out}");
    assert!(out.contains("entry: E[1,1] (x) E[2,2] = 1\n"), "{out}");
    assert!(out.contains("witness: (x, x, y*y)\ndefect: -2 (x) 1 (x) 1\n"), "{out}");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let bad = "algebra { gens: x, y }\nbracket { <x,y> = 1 (x) (x) 1 }\n";
    let o = dbr(&["run"], bad);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: line 2, column"), "{}", stderr(&o));

    let not_antisymmetric = "algebra { gens: x, y }\nbracket { <x,x> = x (x) 1 }\n";
    let o = dbr(&["run"], not_antisymmetric);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let undeclared = "algebra { gens: x, y }\nbracket { <x,z> = 1 (x) 1 }\n";
    assert_eq!(dbr(&["run"], undeclared).status.code(), Some(2));
}

#[test]
fn session_file_argument() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vdb.dbr");
    std::fs::write(&path, VAN_DEN_BERGH).unwrap();
    let o = dbr(&["run", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&dbr(&["run"], VAN_DEN_BERGH)));
    let missing = dir.path().join("missing.dbr");
    assert_eq!(dbr(&["run", missing.to_str().unwrap()], "").status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    for session in [VAN_DEN_BERGH, TWISTED, RIGHT_UNIT] {
        let first = dbr(&["run"], session);
        let second = dbr(&["run"], session);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn kv_format() {
    let o = dbr(&["--format", "kv", "run"], TWISTED);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("command=check poisson --degree 4\nverdict=NotPoisson\n"), "{out}");
    assert!(out.ends_with("status=counterexample\n"), "{out}");
    assert_eq!(dbr(&["--format", "json", "run"], TWISTED).status.code(), Some(2));
}

#[test]
fn ybe_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let jordanian = dir.path().join("jordanian.txt");
    std::fs::write(&jordanian, "# h (x) e - e (x) h\n1 1 1 2 1\n2 2 1 2 -1\n1 2 1 1 -1\n1 2 2 2 1\n").unwrap();
    let o = dbr(&["ybe", "check", jordanian.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("cybe_defect: 0"), "{}", stdout(&o));

    let standard = dir.path().join("standard.txt");
    std::fs::write(&standard, "1 2 2 1 1\n1 1 1 1 1/2\n2 2 2 2 1/2\n").unwrap();
    assert_eq!(dbr(&["ybe", "check", standard.to_str().unwrap()], "").status.code(), Some(1));

    let malformed = dir.path().join("bad.txt");
    std::fs::write(&malformed, "1 2 3\n").unwrap();
    assert_eq!(dbr(&["ybe", "check", malformed.to_str().unwrap()], "").status.code(), Some(2));
}

#[test]
fn gradient_classification() {
    let o = dbr(&["gradient", "classify", "--family", "sum-power", "--degree", "4"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: Poisson"), "{}", stdout(&o));
    let o = dbr(&["gradient", "classify", "--poly", "x1*x2 + x2*x1"], "");
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stdout(&o).contains("witness:"), "{}", stdout(&o));
    assert_eq!(dbr(&["gradient", "classify", "--poly", "x1*x2"], "").status.code(), Some(2));
}

#[test]
fn printed_sessions_parse_back() {
    for session in [VAN_DEN_BERGH, TWISTED, RIGHT_UNIT] {
        let spec = parse_session(session).unwrap();
        let printed = spec.to_string();
        assert_eq!(parse_session(&printed).unwrap(), spec, "{printed}");
        assert_eq!(parse_session(&printed).unwrap().to_string(), printed);
    }
}
