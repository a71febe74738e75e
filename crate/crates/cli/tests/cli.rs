//! Runs the binary and compares stdout with files under `tests/golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twopop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout, want, "{args:?} differs from {name}");
}

fn fails_with(args: &[&str], code: i32, needle: &str) {
    let out = run(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {stderr}");
    assert!(stderr.contains(needle), "{args:?}: {stderr}");
}

#[test]
fn sort_traces() {
    golden(
        "sort_one_pass.txt",
        &["sort", "--perm", "2,1,5,3,6,4", "--passes", "1"],
        1,
    );
    golden(
        "sort_identity.txt",
        &["sort", "--perm", "1,2,3", "--passes", "0"],
        0,
    );
    golden(
        "sort_2341.json",
        &["--format", "json", "sort", "--perm", "2,3,4,1"],
        1,
    );
    golden(
        "sort_two_passes.csv",
        &["--format", "csv", "sort", "--perm", "3,1,2"],
        0,
    );
}

#[test]
fn classify_verdicts() {
    golden("classify_3421.txt", &["classify", "--perm", "3421"], 1);
    golden(
        "classify_41352.json",
        &["--format", "json", "classify", "--perm", "41352"],
        0,
    );
    golden(
        "classify_barred.json",
        &["--format", "json", "classify", "--perm", "25413"],
        1,
    );
    golden("classify_single.txt", &["classify", "--perm", "1"], 0);
}

#[test]
fn enumerate_outputs() {
    golden(
        "enumerate_ascents_6.txt",
        &["enumerate", "--n", "6", "--by-ascents"],
        0,
    );
    golden(
        "enumerate_12.bfile",
        &["--format", "bfile", "enumerate", "--n", "12"],
        0,
    );
    golden(
        "enumerate_verify_8.json",
        &["--format", "json", "enumerate", "--n", "8", "--verify"],
        0,
    );
    golden(
        "enumerate_triangle_5.csv",
        &[
            "--format",
            "csv",
            "enumerate",
            "--n",
            "5",
            "--by-ascents",
            "--all-rows",
            "--method",
            "gf",
        ],
        0,
    );
    golden(
        "enumerate_verify_10.txt",
        &["enumerate", "--n", "10", "--verify", "--max-brute", "8"],
        0,
    );
}

#[test]
fn polyomino_outputs() {
    golden(
        "polyomino_list_3_3.txt",
        &["polyomino", "--width", "3", "--size", "3", "--list"],
        0,
    );
    golden(
        "polyomino_4_4.json",
        &[
            "--format",
            "json",
            "polyomino",
            "--width",
            "4",
            "--size",
            "4",
        ],
        0,
    );
    golden(
        "polyomino_right_free.txt",
        &[
            "polyomino",
            "--width",
            "3",
            "--size",
            "7",
            "--by-right-free",
        ],
        0,
    );
    golden(
        "polyomino_width3.bfile",
        &[
            "--format",
            "bfile",
            "polyomino",
            "--width",
            "3",
            "--size",
            "10",
        ],
        0,
    );
}

#[test]
fn bijection_outputs() {
    golden(
        "bijection_width2.txt",
        &[
            "bijection",
            "--perm",
            "4,3,2,1,6,5,7,10,9,8",
            "--width",
            "2",
        ],
        0,
    );
    golden(
        "bijection_width3.txt",
        &[
            "bijection",
            "--perm",
            "6,4,3,2,1,5,8,7,12,10,9,14,13,11",
            "--width",
            "3",
            "--render",
            "--round-trip",
        ],
        0,
    );
    golden(
        "bijection_inverse.json",
        &["--format", "json", "bijection", "--cells", "3:1,3,4,6"],
        0,
    );
}

#[test]
fn reports() {
    golden("wilf_7.txt", &["wilf", "--n", "7"], 0);
    golden("wilf_6.json", &["--format", "json", "wilf", "--n", "6"], 0);
    golden("conjectures.txt", &["conjectures"], 0);
    golden(
        "conjectures_6.json",
        &["--format", "json", "conjectures", "--n-max", "6"],
        0,
    );
}

#[test]
fn exit_codes() {
    fails_with(&["sort", "--perm", "1,1"], 2, "repeated");
    fails_with(&["classify", "--perm", "x"], 2, "invalid");
    fails_with(
        &["--format", "bfile", "sort", "--perm", "1"],
        2,
        "no bfile output",
    );
    fails_with(
        &["enumerate", "--n", "12", "--method", "bruteforce"],
        3,
        "refused",
    );
    fails_with(
        &[
            "enumerate",
            "--n",
            "5",
            "--method",
            "linear",
            "--by-ascents",
        ],
        2,
        "ascents",
    );
    fails_with(&["polyomino", "--width", "3", "--size", "14"], 3, "refused");
    fails_with(&["polyomino", "--width", "1", "--size", "3"], 2, "width");
    fails_with(&["wilf", "--n", "10"], 3, "refused");
    fails_with(
        &["bijection", "--perm", "2341", "--width", "3"],
        1,
        "not two-pop-stack sortable",
    );
    fails_with(
        &["bijection", "--perm", "231", "--width", "2"],
        1,
        "not layered",
    );
    fails_with(&["bijection", "--cells", "3:1,3,5"], 2, "disconnected");
    fails_with(
        &["bijection", "--perm", "21", "--width", "4"],
        2,
        "widths 2 and 3",
    );
    fails_with(&["conjectures", "--n-max", "6", "--strict"], 1, "");
    fails_with(&["--max-brute", "0", "wilf", "--n", "3"], 2, "");
}
