use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use posetal::corpus::posets_up_to;
use posetal::iso::are_isomorphic;
use posetal::text::{parse_poset, write_poset};
use tempfile::TempDir;

fn posetal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

const VEE: &str = "poset vee\nelem a b c\nle a c\nle b c\n";

#[test]
fn nerve_output_passes_check_for_small_posets() {
    let dir = TempDir::new().unwrap();
    for (k, p) in posets_up_to(3).iter().enumerate() {
        let poset = write(dir.path(), &format!("p{k}.poset"), &write_poset(&format!("p{k}"), p));
        let sset = dir.path().join(format!("p{k}.sset"));
        let out = posetal(&["nerve", "--poset", s(&poset), "--trunc", "3", "--output", s(&sset)]);
        assert_eq!(out.status.code(), Some(0));
        let out = posetal(&["check", "--sset", s(&sset), "--format", "machine"]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).ends_with("verdict=PASS\n"));

        let out = posetal(&["reconstruct", "--sset", s(&sset)]);
        assert_eq!(out.status.code(), Some(0));
        let back = parse_poset(&stdout(&out)).unwrap().poset;
        assert!(are_isomorphic(&back, p));
    }
}

#[test]
fn machine_reports_are_stable() {
    let dir = TempDir::new().unwrap();
    let poset = write(dir.path(), "vee.poset", VEE);
    let sset = dir.path().join("vee.sset");
    posetal(&["nerve", "--poset", s(&poset), "--trunc", "2", "-o", s(&sset)]);
    let first = stdout(&posetal(&["check", "--sset", s(&sset), "--format", "machine"]));
    let second = stdout(&posetal(&["check", "--sset", s(&sset), "--format", "machine"]));
    assert_eq!(first, second);
    assert!(first.lines().all(|l| l.contains('=')));
    assert!(first.contains("check.antisymmetry=PASS"));
}

#[test]
fn two_points_have_no_coproduct_in_delta() {
    let dir = TempDir::new().unwrap();
    let diag = write(
        dir.path(),
        "two_points.diag",
        "diagram two_points\nnode x [0]\nnode y [0]\n",
    );
    let out = posetal(&["colimit", "--diagram", s(&diag), "--in", "delta"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no coproducts in Δ"));

    let out = posetal(&[
        "colimit",
        "--diagram",
        s(&diag),
        "--in",
        "pos",
        "--verify",
        "3",
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("apex.size=2\n"));
    assert!(text.contains("universal=PASS\n"));

    let out = posetal(&["colimit", "--diagram", s(&diag), "--in", "tos"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pushout_in_delta_exists() {
    let dir = TempDir::new().unwrap();
    let diag = write(
        dir.path(),
        "glue.diag",
        "diagram glue\nnode v [0]\nnode l [1]\nnode r [1]\nedge f v l\nmap f 0 1\nedge g v r\nmap g 0 0\n",
    );
    let out = posetal(&["colimit", "--diagram", s(&diag), "--in", "delta", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("apex.size=3\n"));
}

#[test]
fn corrupted_sset_fails_the_named_check() {
    let dir = TempDir::new().unwrap();
    let sset = write(
        dir.path(),
        "sym.sset",
        "sset sym trunc 1
simplex 0 x
simplex 0 y
simplex 1 xx
simplex 1 yy
simplex 1 xy
simplex 1 yx
d 1 1 xx x
d 1 0 xx x
d 1 1 yy y
d 1 0 yy y
d 1 1 xy x
d 1 0 xy y
d 1 1 yx y
d 1 0 yx x
s 0 0 x xx
s 0 0 y yy
",
    );
    let out = posetal(&["check", "--sset", s(&sset), "--format", "machine"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("check.antisymmetry=FAIL\n"));
    assert!(text.contains("check.relation-injective=PASS\n"));
    let out = posetal(&["reconstruct", "--sset", s(&sset)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn other_commands_report() {
    let dir = TempDir::new().unwrap();
    let vee = write(dir.path(), "vee.poset", VEE);
    let functor = write(dir.path(), "arrow.functor", "functor product-with [1]\n");

    let out = posetal(&["extensions", "--poset", s(&vee), "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("extensions=2\n"));

    let out = posetal(&["density", "--poset", s(&vee)]);
    assert_eq!(out.status.code(), Some(0));

    let out = posetal(&[
        "extend",
        "--functor",
        s(&functor),
        "--poset",
        s(&vee),
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("value.size=6\n"));

    let out = posetal(&["verify-identities", "--max-n", "3", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("family.degeneracy-face-identity.failed=0\n"));

    let out = posetal(&[
        "homcount",
        "--poset",
        s(&vee),
        "--poset2",
        "[2]",
        "--trunc",
        "1",
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("monotone=14\n") && text.contains("simplicial=14\n"));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(posetal(&["nerve", "--poset"]).status.code(), Some(2));
    assert_eq!(posetal(&["nerve"]).status.code(), Some(2));
    assert_eq!(posetal(&["frobnicate"]).status.code(), Some(2));
    let missing = dir.path().join("missing.sset");
    assert_eq!(posetal(&["check", "--sset", s(&missing)]).status.code(), Some(2));

    let bad = write(dir.path(), "bad.poset", "poset p\nelem a\nle a b\n");
    let out = posetal(&["nerve", "--poset", s(&bad), "--trunc", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let functor = write(dir.path(), "f.functor", "functor mystery\n");
    let out = posetal(&["extend", "--functor", s(&functor), "--poset", "[1]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ordinal_shorthand_is_accepted() {
    let out = posetal(&["nerve", "--poset", "[1]", "--trunc", "1", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("level.1.size=3\n"));
}
