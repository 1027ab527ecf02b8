//! End-to-end tests of the `vpf` binary: output shapes, exit codes,
//! determinism, and the LaTeX round trip.

use std::process::{Command, Output};

use num_bigint::BigInt;
use num_traits::Zero;

use vpf_core::genfunc::series_truncate;
use vpf_core::latex::parse_fraction_sum;
use vpf_core::rootsys::{kostant_input, Label};

fn vpf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vpf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn decompose_latex_round_trips_to_series_equal_sum() {
    for (label, rank, name) in [(Label::A, 2, "A"), (Label::B, 2, "B"), (Label::G, 2, "G")] {
        let out = vpf(&["decompose", "--type", name, "--rank", "2", "--format", "latex"]);
        assert!(out.status.success());
        let text = stdout(&out);
        let sum = parse_fraction_sum(&text, rank).unwrap();
        let product = kostant_input(label, rank).unwrap();
        let lo = vec![BigInt::zero(); rank];
        let hi = vec![BigInt::from(8); rank];
        assert_eq!(
            series_truncate(&sum, &lo, &hi).unwrap(),
            series_truncate(&product, &lo, &hi).unwrap(),
            "{name}2 round trip"
        );
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = vpf(&["decompose", "--type", "B", "--rank", "3", "--format", "latex"]);
    let b = vpf(&["decompose", "--type", "B", "--rank", "3", "--format", "latex"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let c = vpf(&["chambers", "--type", "C", "--rank", "2"]);
    let d = vpf(&["chambers", "--type", "C", "--rank", "2"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn parallel_mode_matches_single_threaded_output() {
    let seq = vpf(&["decompose", "--type", "A", "--rank", "3", "--format", "latex"]);
    let par = Command::new(env!("CARGO_BIN_EXE_vpf"))
        .args(["decompose", "--type", "A", "--rank", "3", "--format", "latex"])
        .env("VPF_THREADS", "4")
        .output()
        .unwrap();
    assert!(par.status.success());
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn evaluate_modes_and_exit_codes() {
    let out = vpf(&["evaluate", "--type", "A", "--rank", "2", "--point", "1,1", "--mode", "oracle"]);
    assert_eq!(stdout(&out).trim(), "2");

    let out = vpf(&["evaluate", "--type", "A", "--rank", "2", "--point", "0,0", "--mode", "oracle"]);
    assert_eq!(stdout(&out).trim(), "1");

    let oracle = vpf(&["evaluate", "--type", "A", "--rank", "2", "--point", "5,3", "--mode", "oracle"]);
    let formula = vpf(&["evaluate", "--type", "A", "--rank", "2", "--point", "5,3", "--mode", "formula"]);
    assert_eq!(stdout(&oracle).trim(), "4");
    assert_eq!(stdout(&formula).trim(), stdout(&oracle).trim());

    let outside = vpf(&["evaluate", "--type", "A", "--rank", "2", "--point", "-1,2", "--mode", "formula"]);
    assert_eq!(outside.status.code(), Some(4));
}

#[test]
fn period_values() {
    let out = vpf(&["period", "--type", "A", "--rank", "2"]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = vpf(&["period", "--type", "B", "--rank", "2"]);
    let p: i64 = stdout(&out).trim().parse().unwrap();
    assert_eq!(2 % p, 0, "B2 period must divide 2");
    let out = vpf(&["period", "--type", "G", "--rank", "2"]);
    let p: i64 = stdout(&out).trim().parse().unwrap();
    assert_eq!(6 % p, 0, "G2 period must divide 6");
    let out = vpf(&["period", "--type", "E", "--rank", "6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_passes_on_root_systems() {
    let out = vpf(&["verify", "--type", "A", "--rank", "2", "--box", "25"]);
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("all checks passed"));

    let out = vpf(&["verify", "--type", "B", "--rank", "2", "--box", "20"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_detects_corrupted_reference_file() {
    let dir = std::env::temp_dir().join(format!("vpf-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // a wrong decomposition: the A2 reference with one numerator perturbed
    let bad = "+2 \\frac{1}{(1-x_1)} \\frac{1}{(1-x_2)^{2}}\n\
               -x_2 \\frac{1}{(1-x_1x_2)} \\frac{1}{(1-x_2)^{2}}\n";
    let golden = dir.join("bad.tex");
    std::fs::write(&golden, bad).unwrap();
    let out = vpf(&[
        "verify",
        "--type",
        "A",
        "--rank",
        "2",
        "--box",
        "8",
        "--golden",
        golden.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("golden-series: FAILED"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn vector_files_and_parse_errors() {
    let dir = std::env::temp_dir().join(format!("vpf-test-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let good = dir.join("a2.txt");
    std::fs::write(&good, "1 0\n0 1\n1 1\n").unwrap();
    let out = vpf(&["evaluate", "--vectors", good.to_str().unwrap(), "--point", "5,3"]);
    assert_eq!(stdout(&out).trim(), "4");
    // formula cache written beside the input, and reused
    let cache = dir.join("a2.txt.vpf-cache.json");
    assert!(cache.exists());
    let out = vpf(&["evaluate", "--vectors", good.to_str().unwrap(), "--point", "7,2"]);
    assert_eq!(stdout(&out).trim(), "3");

    let json = dir.join("a2.json");
    std::fs::write(&json, "[[1,0],[0,1],[1,1]]").unwrap();
    let out = vpf(&["evaluate", "--vectors", json.to_str().unwrap(), "--point", "5,3", "--mode", "oracle"]);
    assert_eq!(stdout(&out).trim(), "4");

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "1 0\n0\n").unwrap();
    let out = vpf(&["decompose", "--vectors", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let negative = dir.join("neg.txt");
    std::fs::write(&negative, "1 -1\n0 1\n").unwrap();
    let out = vpf(&["decompose", "--vectors", negative.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn independent_input_echoes_as_reduced() {
    let dir = std::env::temp_dir().join(format!("vpf-test-indep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("two.txt");
    std::fs::write(&file, "1 0\n0 1\n").unwrap();
    let out = vpf(&["decompose", "--vectors", file.to_str().unwrap(), "--format", "latex"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut parts = text.splitn(2, "=\n");
    let header = parts.next().unwrap().trim();
    let body = parts.next().unwrap().trim();
    assert_eq!(header, body, "independent input must pass through unchanged");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_rank_exits_3() {
    let out = vpf(&["decompose", "--type", "G", "--rank", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = vpf(&["kostant", "--type", "D", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = vpf(&["decompose", "--type", "X", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classical_strategy_through_cli() {
    let out = vpf(&[
        "decompose", "--type", "B", "--rank", "2", "--strategy", "classical", "--format", "latex",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(1-x_2^{2})^{3}"), "doubled factors expected:\n{text}");
    let sum = parse_fraction_sum(&text, 2).unwrap();
    let product = kostant_input(Label::B, 2).unwrap();
    let lo = vec![BigInt::zero(); 2];
    let hi = vec![BigInt::from(8); 2];
    assert_eq!(
        series_truncate(&sum, &lo, &hi).unwrap(),
        series_truncate(&product, &lo, &hi).unwrap()
    );
    // classical strategy without a classical type is a selector error
    let out = vpf(&["decompose", "--type", "G", "--rank", "2", "--strategy", "classical"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn kostant_and_chambers_shapes() {
    let out = vpf(&["kostant", "--type", "C", "--rank", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["fractions"][0]["denominators"].as_array().unwrap().len(), 4);

    let out = vpf(&["chambers", "--type", "B", "--rank", "2"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["chambers"].as_array().unwrap().len(), 3);
    for ch in doc["chambers"].as_array().unwrap() {
        assert!(ch["generators"].as_array().unwrap().len() >= 2);
        assert!(ch["normals"].as_array().unwrap().len() >= 2);
    }
}
