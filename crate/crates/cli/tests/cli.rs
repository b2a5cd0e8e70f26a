//! End-to-end tests of the `chlab` binary.

use serde_json::Value;
use std::process::Command;

fn chlab(args: &[&str]) -> (String, String, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_chlab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.success(),
    )
}

fn json_of(stdout: &str) -> Value {
    serde_json::from_str(stdout.trim()).expect("valid JSON on stdout")
}

#[test]
fn classify_pair() {
    let (out, _, ok) = chlab(&["classify", "--classes", "3pi/2,pi/2"]);
    assert!(ok);
    let v = json_of(&out);
    assert_eq!(v["class"], "RegularElliptic");
    // trace is 1 up to a cube root of unity
    let tr = (v["trace"][0].as_f64().unwrap(), v["trace"][1].as_f64().unwrap());
    let norm = (tr.0 * tr.0 + tr.1 * tr.1).sqrt();
    assert!((norm - 1.0).abs() < 1e-9);
}

#[test]
fn classify_identity_matrix() {
    let id = "[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]";
    let (out, _, ok) = chlab(&["classify", "--matrix", id]);
    assert!(ok);
    assert_eq!(json_of(&out)["class"], "Identity");
}

#[test]
fn classify_random_matrix_matches_library() {
    use chlab::sampling::{random_regular_elliptic, Rng};
    let mut rng = Rng::new(99);
    for _ in 0..4 {
        let (m, _) = random_regular_elliptic(&mut rng);
        let rows: Vec<Vec<[f64; 2]>> = (0..3)
            .map(|i| (0..3).map(|j| [m.matrix().0[i][j].re, m.matrix().0[i][j].im]).collect())
            .collect();
        let text = serde_json::to_string(&rows).unwrap();
        let (out, _, ok) = chlab(&["classify", "--matrix", &text]);
        assert!(ok);
        assert_eq!(json_of(&out)["class"], m.classify().name());
    }
}

#[test]
fn classify_rejects_garbage() {
    let (out, _, ok) = chlab(&["classify", "--classes", "banana"]);
    assert!(!ok);
    assert!(json_of(&out)["error"].is_string());
}

#[test]
fn decompose_334_and_4520() {
    let (out, _, ok) = chlab(&[
        "decompose",
        "--classes",
        "4pi/3,2pi/3; 4pi/3,2pi/3; 3pi/2,pi/2",
    ]);
    assert!(ok);
    let v = json_of(&out);
    assert_eq!(v["decomposable"], true);
    let dom = &v["chart"]["theta_domain"][0];
    let lo = dom[0].as_f64().unwrap();
    let hi = dom[1].as_f64().unwrap();
    assert!((lo - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-8);
    assert!((hi - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-8);

    let (out, _, ok) = chlab(&[
        "decompose",
        "--classes",
        "3pi/2,pi; 6pi/5,2pi/5; 8pi/5,3pi/10",
    ]);
    assert!(ok);
    let v = json_of(&out);
    assert_eq!(v["decomposable"], true);
    let dom = &v["chart"]["theta_domain"][0];
    assert!((dom[0].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-8);
    assert!((dom[1].as_f64().unwrap() - 1.5 * std::f64::consts::PI).abs() < 1e-8);

    // perturbed classes are rejected
    let (out, _, ok) = chlab(&[
        "decompose",
        "--classes",
        "4pi/3,2pi/3; 4pi/3,2pi/3; 3pi/2,0.6",
    ]);
    assert!(ok);
    assert_eq!(json_of(&out)["decomposable"], false);
}

#[test]
fn skeleton_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("a.csv");
    let csv2 = dir.path().join("b.csv");
    for path in [&csv1, &csv2] {
        let (_, _, ok) = chlab(&[
            "skeleton",
            "--classes",
            "3pi/2,pi; 6pi/5,2pi/5",
            "--grid",
            "256",
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(ok);
    }
    let a = std::fs::read(&csv1).unwrap();
    let b = std::fs::read(&csv2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "CSV output must be bit-identical across runs");

    let svg = dir.path().join("a.svg");
    let (_, _, ok) = chlab(&[
        "skeleton",
        "--classes",
        "3pi/2,pi; 6pi/5,2pi/5",
        "--format",
        "svg",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert!(ok);
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<circle").count(), 2, "two vertices");
    assert!(svg.matches("<polyline").count() >= 2);
}

#[test]
fn deltoid_with_tangents() {
    let (out, _, ok) = chlab(&[
        "deltoid",
        "--point",
        "0.3,0.2",
        "--format",
        "json",
    ]);
    assert!(ok);
    let v = json_of(&out);
    let params = v["tangent_parameters"].as_array().unwrap();
    assert_eq!(params.len(), 3);
    let (svg, _, ok) = chlab(&["deltoid", "--point", "0.3,0.2", "--format", "svg"]);
    assert!(ok);
    assert!(svg.matches("<polyline").count() >= 4);
}

#[test]
fn trace_curves_csv_shape() {
    let (out, _, ok) = chlab(&[
        "trace-curve",
        "--rfuchsian",
        "3,3,4",
        "--level-type",
        "theta",
        "--levels",
        "3",
        "--grid",
        "16",
        "--format",
        "csv",
    ]);
    assert!(ok);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,alpha,re_tr_ainv_b,im_tr_ainv_b,chart_id"
    );
    let count = lines.count();
    assert!(count > 30, "expected dense curves, got {count} rows");
}

#[test]
fn fiber_probe_reports_family() {
    let (out, _, ok) = chlab(&[
        "fiber-probe",
        "--classes",
        "3pi/2,pi; 6pi/5,2pi/5; 17pi/10,2pi/5",
        "--samples",
        "5",
    ]);
    assert!(ok);
    let v = json_of(&out);
    assert_eq!(v["membership"], "Spherical");
    assert_eq!(v["outcome"]["kind"], "decomposable_family");
    assert_eq!(v["outcome"]["all_decomposable"], true);
}

#[test]
fn sample_emits_su21_matrices() {
    let (out, _, ok) = chlab(&[
        "sample",
        "--classes",
        "4pi/3,2pi/3; 4pi/3,2pi/3; 3pi/2,pi/2",
        "--theta",
        "pi",
        "--alpha",
        "pi",
    ]);
    assert!(ok);
    let v = json_of(&out);
    for key in ["a", "b", "c"] {
        assert_eq!(v[key].as_array().unwrap().len(), 3);
    }
    assert_eq!(v["reflections"].as_array().unwrap().len(), 3);
    // involutive decomposition at theta = pi
    let eta = &v["reflections"][0]["eta"];
    assert!((eta[0].as_f64().unwrap() + 1.0).abs() < 1e-9);
}
