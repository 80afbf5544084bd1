use std::path::Path;
use std::process::{Command, Output};

fn modmat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modmat")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn fano_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&modmat(d, &["make", "pg", "--dim", "2", "--q", "2", "-o", "fano.gfm"])), 0);
    let info = modmat(d, &["info", "fano.gfm"]);
    assert_eq!(code(&info), 0);
    assert_eq!(stdout(&info).lines().next(), Some("n=7 rank=3 3-connected=yes"));
}

#[test]
fn glued_planes_are_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&modmat(d, &["make", "glued", "--q", "3", "--p", "2", "-o", "g.mrt"])), 0);
    let out = modmat(d, &["check", "thm1.1", "g.mrt", "--field", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let verdict = text.split_whitespace().nth(2);
    assert_eq!(verdict, Some("NOT-APPLICABLE"), "{text}");
    assert!(text.contains("vertically-4-connected"));
}

#[test]
fn formats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for f in ["a.gfm", "a.mbl", "a.mrt"] {
        assert_eq!(code(&modmat(d, &["make", "ag", "--dim", "2", "--q", "3", "-o", f])), 0);
    }
    let reference = stdout(&modmat(d, &["flats", "a.gfm"]));
    assert_eq!(reference.lines().count(), 1 + 9 + 12 + 1);
    for f in ["a.mbl", "a.mrt"] {
        assert_eq!(stdout(&modmat(d, &["flats", f])), reference, "{f}");
        assert_eq!(stdout(&modmat(d, &["circuits", f])), stdout(&modmat(d, &["circuits", "a.gfm"])));
    }
}

#[test]
fn modular_sum_then_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // two Fano planes sharing the line {a, b, c}
    let first = "field 2\nsize 3 7\nlabels a b c x1 x2 x3 x4\n1 0 1 0 0 1 1\n0 1 1 0 1 0 1\n0 0 0 1 1 1 1\n";
    let second = "field 2\nsize 3 7\nlabels a b c y1 y2 y3 y4\n1 0 1 0 0 1 1\n0 1 1 0 1 0 1\n0 0 0 1 1 1 1\n";
    std::fs::write(d.join("f1.gfm"), first).unwrap();
    std::fs::write(d.join("f2.gfm"), second).unwrap();
    assert_eq!(code(&modmat(d, &["modular", "f1.gfm", "--set", "a,b,c"])), 0);
    assert_eq!(code(&modmat(d, &["modsum", "f1.gfm", "f2.gfm", "-o", "s.mbl"])), 0);
    let info = stdout(&modmat(d, &["info", "s.mbl"]));
    assert!(info.starts_with("n=11 rank=4 3-connected=yes"), "{info}");
    let parts = stdout(&modmat(d, &["decompose", "s.mbl", "--n", "a,b,c"]));
    assert!(parts.contains("part1 n=7 rank=3 {a,b,c,x1,x2,x3,x4}"), "{parts}");
    assert!(parts.contains("part2 n=7 rank=3 {a,b,c,y1,y2,y3,y4}"), "{parts}");
}

#[test]
fn representation_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    modmat(d, &["make", "pg", "--dim", "2", "--q", "2", "-o", "fano.gfm"]);
    let rep = modmat(d, &["represent", "fano.gfm", "--field", "2"]);
    assert_eq!(code(&rep), 0);
    std::fs::write(d.join("rep.gfm"), &rep.stdout).unwrap();
    assert!(stdout(&rep).contains("# basis"));
    assert_eq!(stdout(&modmat(d, &["info", "rep.gfm"])).lines().next(), Some("n=7 rank=3 3-connected=yes"));
    assert_eq!(code(&modmat(d, &["represent", "fano.gfm", "--field", "3"])), 1);
    modmat(d, &["make", "uniform", "--r", "2", "--n", "5", "-o", "u25.mbl"]);
    let count = modmat(d, &["represent", "u25.mbl", "--field", "4", "--count-classes"]);
    assert_eq!(stdout(&count).trim(), "classes=2");
    let geo = modmat(d, &["represent", "u25.mbl", "--field", "4", "--count-classes", "--automorphisms"]);
    assert_eq!(stdout(&geo).trim(), "classes=1");
}

#[test]
fn dualize_writes_partner() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    modmat(d, &["make", "pg", "--dim", "3", "--q", "2", "-o", "pg32.gfm"]);
    let out = modmat(d, &["dualize", "pg32.gfm", "--field", "2", "-o", "m1.mbl"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("lambda-n1=3"));
    assert!(stdout(&modmat(d, &["info", "m1.mbl"])).starts_with("n=15 rank=7 3-connected=yes"));
}

#[test]
fn connectivity_queries() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    modmat(d, &["make", "graphic", "--vertices", "4", "--edges", "0-1,0-2,0-3,1-2,1-3,2-3", "-o", "k4.mbl"]);
    assert_eq!(stdout(&modmat(d, &["lambda", "k4.mbl", "--set", "0-1,0-2,1-2"])).trim(), "lambda=2");
    assert_eq!(stdout(&modmat(d, &["pi", "k4.mbl", "--a", "0-1,0-2,1-2", "--b", "0-3,1-3,2-3"])).trim(), "pi=2");
    let k = stdout(&modmat(d, &["kappa", "k4.mbl", "--s", "0-1", "--t", "2-3", "--witness"]));
    assert!(k.starts_with("kappa=1 "), "{k}");
    assert!(k.contains("achieved=1"));
    let fans = stdout(&modmat(d, &["fans", "k4.mbl"]));
    assert!(fans.lines().all(|l| l.split_whitespace().count() >= 4), "{fans}");
    assert_eq!(code(&modmat(d, &["pairs", "k4.mbl"])), 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    modmat(d, &["make", "pg", "--dim", "2", "--q", "2", "-o", "fano.gfm"]);
    assert_eq!(code(&modmat(d, &["info", "fano.gfm", "--nope"])), 2);
    assert_eq!(code(&modmat(d, &["lambda", "fano.gfm", "--set", "1,99"])), 2);
    std::fs::write(d.join("bad.gfm"), "field 2\nsize 1 2\nlabels a b\n1 2\n").unwrap();
    let bad = modmat(d, &["info", "bad.gfm"]);
    assert_eq!(code(&bad), 3);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("bad.gfm:4:"));
    std::fs::write(d.join("bad.mbl"), "ground 3 a b c\na b\na q\n").unwrap();
    let bad = modmat(d, &["info", "bad.mbl"]);
    assert_eq!(code(&bad), 3);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("bad.mbl:3:"));
    assert_eq!(code(&modmat(d, &["info", "missing.mbl"])), 1);
}

#[test]
fn verify_paper_quick_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = modmat(dir.path(), &["verify-paper", "--quick"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let criteria: Vec<&str> = text.lines().filter(|l| l.starts_with("criterion-")).collect();
    assert_eq!(criteria.len(), 12);
    assert!(criteria.iter().all(|l| !l.contains(" FAIL ")));
    assert!(!text.lines().any(|l| l.split_whitespace().nth(2) == Some("COUNTEREXAMPLE")));
}
