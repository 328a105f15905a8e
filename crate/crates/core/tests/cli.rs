use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use num_complex::Complex64;
use qeig::matching::multiset_distance;
use serde_json::{json, Value};

const SAMPLE: &str = r#"{"kind": "quaternion", "n": 2, "entries": [[[0,1,0,0],[0,0,1,0]],[[0,0,0,1],[0,1,0,0]]]}"#;

fn write_doc(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn qeig(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qeig")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn qeig_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = qeig(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn spectrum(v: &Value) -> Vec<Complex64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|z| Complex64::new(z[0].as_f64().unwrap(), z[1].as_f64().unwrap()))
        .collect()
}

fn quaternion_doc(rows: &[&[[f64; 4]]]) -> String {
    json!({"kind": "quaternion", "n": rows.len(), "entries": rows}).to_string()
}

#[test]
fn eig_reports_two_reduced_eigenvalues() {
    let path = write_doc("eig_sample.json", SAMPLE);
    let (code, v) = qeig_json(&["eig", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["reduced_spectrum"].as_array().unwrap().len(), 2);
    assert_eq!(v["tolerances"]["eig"].as_f64(), Some(1e-10));
    assert_eq!(v["input_sha256"][0].as_str().unwrap().len(), 64);
}

#[test]
fn translate_then_complex_eig_matches_full_spectrum() {
    let path = write_doc("translate_sample.json", SAMPLE);
    let (code, eig) = qeig_json(&["eig", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, tr) = qeig_json(&["translate", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(tr["matrix"]["kind"], "complex");

    let translated = write_doc("translated.json", &tr["matrix"].to_string());
    let (code, ceig) = qeig_json(&["eig", "--complex", translated.to_str().unwrap()]);
    assert_eq!(code, 0);
    let d = multiset_distance(&spectrum(&ceig["eigenvalues"]), &spectrum(&eig["full_spectrum"]));
    assert!(d <= 1e-10, "distance {d}");
}

#[test]
fn translate_is_bit_identical_to_complexify() {
    let path = write_doc("translate_bits.json", SAMPLE);
    let (_, tr) = qeig_json(&["translate", path.to_str().unwrap()]);
    let m = match qeig::cli::parse_document(SAMPLE).unwrap() {
        qeig::cli::InputMatrix::Quaternion(m) => m,
        _ => unreachable!(),
    };
    let c = qeig::complexify_matrix(&m);
    for r in 0..4 {
        for k in 0..4 {
            let z = &tr["matrix"]["entries"][r][k];
            assert_eq!(z[0].as_f64().unwrap().to_bits(), c[(r, k)].re.to_bits());
            assert_eq!(z[1].as_f64().unwrap().to_bits(), c[(r, k)].im.to_bits());
        }
    }
}

#[test]
fn non_square_input_exits_two() {
    let row = vec![[0.0; 4]; 5];
    let doc = json!({"kind": "quaternion", "n": 3, "entries": [row.clone(), row.clone(), row]}).to_string();
    let path = write_doc("three_by_five.json", &doc);
    let (code, v) = qeig_json(&["eig", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["reason"], "non-square");
}

#[test]
fn malformed_input_exits_two() {
    let path = write_doc("malformed.json", "{\"kind\": \"quaternion\"");
    let (code, v) = qeig_json(&["eig", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["reason"], "malformed-input");
}

#[test]
fn defective_diag_exits_one() {
    let doc = quaternion_doc(&[&[[0.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]], &[[0.0; 4], [0.0, 1.0, 0.0, 0.0]]]);
    let path = write_doc("jordan.json", &doc);
    let (code, v) = qeig_json(&["diag", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["reason"], "not-diagonalizable");
}

#[test]
fn output_is_deterministic() {
    let path = write_doc("determinism.json", SAMPLE);
    for cmd in ["eig", "diag", "left-eig", "verify"] {
        let a = qeig(&[cmd, path.to_str().unwrap()]);
        let b = qeig(&[cmd, path.to_str().unwrap()]);
        assert_eq!(a, b, "{cmd}");
    }
}

#[test]
fn floats_have_seventeen_significant_digits() {
    let path = write_doc("digits.json", SAMPLE);
    let (_, text) = qeig(&["eig", path.to_str().unwrap()]);
    assert!(text.contains("\"eig\": 1.0000000000000000e-10"));
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qeig"))
        .args(["eig", "-", "--polar"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SAMPLE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let polar = v["reduced_spectrum_polar"].as_array().unwrap();
    let modulus = 2f64.powf(0.25);
    assert!(polar.iter().all(|p| (p[0].as_f64().unwrap() - modulus).abs() < 1e-10));
    let arg = polar[0][1].as_f64().unwrap();
    assert!(arg > -std::f64::consts::PI && arg <= std::f64::consts::PI);
}

#[test]
fn text_format_lists_keys() {
    let path = write_doc("text.json", SAMPLE);
    let (code, text) = qeig(&["eig", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l.starts_with("reduced_spectrum: ")));
    assert!(text.lines().any(|l| l == "status: ok"));
}

#[test]
fn negative_convention_flag() {
    let path = write_doc("negative.json", SAMPLE);
    let (_, v) = qeig_json(&["eig", path.to_str().unwrap(), "--convention", "negative-imag"]);
    assert_eq!(v["convention"], "negative-imag");
    assert!(spectrum(&v["reduced_spectrum"]).iter().all(|z| z.im < 0.0));
}

#[test]
fn compare_left_reports_same_left_spectrum_not_similar() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let n = quaternion_doc(&[&[[0.0, 1.0, s, s], [0.0; 4]], &[[0.0; 4], [0.0, 1.0, -s, -s]]]);
    let a = write_doc("compare_m.json", SAMPLE);
    let b = write_doc("compare_n.json", &n);
    let (code, v) = qeig_json(&["compare-left", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "SAME_LEFT_SPECTRUM_NOT_SIMILAR");
    assert_eq!(v["input_sha256"].as_array().unwrap().len(), 2);
}

#[test]
fn co_spec_and_hermitian_commands() {
    let m1 = quaternion_doc(&[&[[0.0, 1.0, 0.0, 0.0], [0.0; 4]], &[[0.0; 4], [0.0, 1.0, 0.0, 0.0]]]);
    let m2 = quaternion_doc(&[&[[0.0, 0.5, 0.0, 0.0], [0.0; 4]], &[[0.0; 4], [0.0, -0.5, 0.0, 0.0]]]);
    let (a, b) = (write_doc("co_m1.json", &m1), write_doc("co_m2.json", &m2));
    let (code, v) = qeig_json(&["co-spec", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    let second = spectrum(&v["eigenvalues_second"]);
    assert!(multiset_distance(&second, &[Complex64::new(0.0, 0.5), Complex64::new(0.0, -0.5)]) < 1e-12);

    let anti = quaternion_doc(&[&[[0.0, -1.0, 0.0, 0.0], [0.0, 0.0, 3.0, 0.0]], &[[0.0, 0.0, 3.0, 0.0], [0.0, 1.0, 0.0, 0.0]]]);
    let path = write_doc("anti.json", &anti);
    let (code, v) = qeig_json(&["herm-from-antiherm", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let h01: Vec<f64> = v["hermitian"][0][1].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((h01[3] - 1.0).abs() < 1e-9);

    let (code, v) = qeig_json(&["herm-from-antiherm", b.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    let not_anti = write_doc("not_anti.json", &quaternion_doc(&[&[[1.0, 0.0, 0.0, 0.0]]]));
    let (code, v) = qeig_json(&["herm-from-antiherm", not_anti.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["reason"], "not-anti-hermitian");
}

#[test]
fn verify_passes_on_sample_inputs() {
    let path = write_doc("verify.json", SAMPLE);
    let (code, v) = qeig_json(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["all_passed"], true);

    let hlcr = json!({"kind": "hlcr", "n": 2, "entries": [
        [{"Q": [0,0,1,0], "P": [0,-1,0,0]}, {"Q": [1,0,0,0], "P": [0,0,0,-1]}],
        [{"Q": [-1,0,0,0], "P": [0,0,0,-1]}, {"Q": [0,0,1,0], "P": [0,1,0,0]}]
    ]});
    let path = write_doc("verify_hlcr.json", &hlcr.to_string());
    let (code, v) = qeig_json(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = qeig_json(&["diag", path.to_str().unwrap(), "--order", "[[2,0],[-2,0],[0,2],[0,-2]]"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
}
