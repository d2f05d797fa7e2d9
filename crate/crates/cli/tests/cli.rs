use std::process::{Command, Output};

use serde_json::Value;

const P22: &str = "0,0;1,0;2,2;0,1";

fn quadloci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadloci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn json_stderr(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

#[test]
fn validate_reports_flags() {
    let o = quadloci(&["validate", "--vertices", P22]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_stdout(&o);
    assert_eq!(v["schema"], "quadloci/1");
    let f = &v["flags"];
    assert_eq!(f["trapezoid"], false);
    assert_eq!(f["parallelogram"], false);
    assert_eq!(f["simple"], true);
    assert_eq!(f["strictly_convex"], true);
}

#[test]
fn input_file_matches_inline_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    std::fs::write(&path, r#"{"vertices": [[0,0],[1,0],[2,2],[0,1]]}"#).unwrap();
    let a = quadloci(&["newton-line", "--input", path.to_str().unwrap()]);
    let b = quadloci(&["newton-line", "--vertices", P22]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn newton_line_is_the_diagonal() {
    let v = json_stdout(&quadloci(&["newton-line", "--vertices", P22]));
    let n = &v["line"]["n"];
    let (n1, n2) = (n[0].as_f64().unwrap(), n[1].as_f64().unwrap());
    assert!((n1 + n2).abs() < 1e-15);
    assert!((n1 - 0.5_f64.sqrt()).abs() < 1e-15);
    assert_eq!(v["line"]["b"].as_f64().unwrap(), 0.0);
    let names: Vec<&str> = v["singular_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["mu", "nu", "tau"]);
}

#[test]
fn singular_parameter_is_a_hypothesis_error() {
    let o = quadloci(&["tangent-conic", "--t", "0", "--vertices", P22]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    let e = json_stderr(&o);
    assert_eq!(e["error"]["kind"], "singular_parameter");
    assert_eq!(e["error"]["details"]["point"], "mu");
}

#[test]
fn tangent_conic_at_one_half() {
    let v = json_stdout(&quadloci(&["tangent-conic", "--t", "0.5", "--vertices", P22]));
    assert_eq!(v["conic"]["class"], "ellipse");
    let c = v["conic"]["coefficients"].as_array().unwrap();
    let max = c.iter().map(|x| x.as_f64().unwrap().abs()).fold(0.0, f64::max);
    assert_eq!(max, 1.0);
    for r in v["tangency_residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() <= 1e-9);
    }
    // negative parameters parse
    let o = quadloci(&["tangent-conic", "--t", "-2.5", "--vertices", P22]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn center_to_conic_chooses_the_locus() {
    let on_line = json_stdout(&quadloci(&["center-to-conic", "--point", "2,2", "--vertices", P22]));
    assert_eq!(on_line["locus"], "tangent");
    assert!((on_line["t"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    let on_gamma = json_stdout(&quadloci(&["center-to-conic", "--point", "1.5,1", "--vertices", P22]));
    assert_eq!(on_gamma["locus"], "passing");
    let at_mu = json_stdout(&quadloci(&["center-to-conic", "--point", "0.5,0.5", "--vertices", P22]));
    assert_eq!(at_mu["realization"], "at_mu");
    let off = quadloci(&["center-to-conic", "--point", "3,0.1", "--vertices", P22]);
    assert_eq!(off.status.code(), Some(3));
    assert_eq!(json_stderr(&off)["error"]["kind"], "not_on_locus");
    let forced = quadloci(&["center-to-conic", "--point", "1.5,1", "--locus", "tangent", "--vertices", P22]);
    assert_eq!(json_stderr(&forced)["error"]["kind"], "not_on_newton_line");
}

#[test]
fn max_ellipse_for_p22() {
    let v = json_stdout(&quadloci(&["max-ellipse", "--vertices", P22]));
    let t = v["t"].as_f64().unwrap();
    assert!((t - (-2.0 + 13.0_f64.sqrt()) / 3.0).abs() < 1e-12);
    let dart = quadloci(&["max-ellipse", "--vertices", "0,0;2,0;0.5,0.5;0,2"]);
    assert_eq!(json_stderr(&dart)["error"]["kind"], "not_strictly_convex");
}

#[test]
fn sample_csv_is_deterministic() {
    let args = ["sample", "--vertices", P22, "--tangent", "500", "--passing", "500", "--format", "csv", "--seed", "7"];
    let a = quadloci(&args);
    let b = quadloci(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,cx,cy"));
    assert_eq!(lines.clone().filter(|l| l.starts_with("tangent,")).count(), 500);
    assert_eq!(lines.filter(|l| l.starts_with("passing,")).count(), 500);
    let c = quadloci(&["sample", "--vertices", P22, "--tangent", "500", "--passing", "500", "--format", "csv", "--seed", "8"]);
    assert_ne!(c.stdout, b.stdout);
}

#[test]
fn empty_sample_has_header_only() {
    let o = quadloci(&["sample", "--vertices", P22, "--tangent", "0", "--passing", "0", "--format", "csv"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "kind,cx,cy\n");
}

#[test]
fn trapezoid_samples_tangent_cloud_only() {
    let o = quadloci(&["sample", "--vertices", "0,0;1,0;1,2;0,1", "--tangent", "20", "--passing", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_stdout(&o);
    assert_eq!(v["tangent"].as_array().unwrap().len(), 20);
    assert!(v["passing"].as_array().unwrap().is_empty());
    assert!(v["notes"][0].as_str().unwrap().contains("trapezoid"));
    let square = quadloci(&["sample", "--vertices", "0,0;1,0;1,1;0,1"]);
    assert_eq!(square.status.code(), Some(3));
}

#[test]
fn uniform_parameter_window() {
    let v = json_stdout(&quadloci(&[
        "sample", "--vertices", P22, "--tangent", "200", "--passing", "0", "--t-min", "0.1", "--t-max", "0.9",
    ]));
    for p in v["tangent"].as_array().unwrap() {
        let x = p[0].as_f64().unwrap();
        // d = (1/2, 1/2) + (1/2, 1/2) t
        assert!((0.55 - 1e-12..=0.95 + 1e-12).contains(&x), "{x}");
    }
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let o = quadloci(&["sample", "--vertices", P22, "--format", "svg", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"viewBox="-2 -4 6 6""#));
    assert!(svg.contains("magenta") && svg.contains("blue") && svg.contains("<polygon"));
    assert_eq!(svg.matches("<g").count(), svg.matches("</g>").count());
}

#[test]
fn verify_passes_and_detects_faults() {
    let o = quadloci(&["verify", "--samples", "200", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_stdout(&o);
    assert_eq!(v["passed"], true);
    let again = quadloci(&["verify", "--samples", "200", "--seed", "4"]);
    assert_eq!(o.stdout, again.stdout);

    let bad = quadloci(&["verify", "--samples", "50", "--tol", "tangency=0"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json_stdout(&bad);
    let failed: Vec<&str> = v["properties"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["passed"] == false)
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["tangency"]);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["validate", "--vertices", "0,0;1,0;2,2"],
        vec!["validate", "--vertices", "a,b;1,0;2,2;0,1"],
        vec!["validate"],
        vec!["bogus"],
        vec!["verify", "--tol", "nonsense=1"],
        vec!["tangent-conic", "--t", "0.5", "--vertices", P22, "--format", "svg"],
    ] {
        let o = quadloci(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(json_stderr(&o)["error"]["kind"], "usage", "{args:?}");
    }
}

#[test]
fn invalid_geometry_is_a_hypothesis_error() {
    let o = quadloci(&["validate", "--vertices", "0,0;1,0;2,0;0,1"]);
    assert_eq!(o.status.code(), Some(3));
    let e = json_stderr(&o);
    assert_eq!(e["error"]["kind"], "three_points_on_line");
    let dup = quadloci(&["validate", "--vertices", "0,0;1,0;1,0;0,1"]);
    assert_eq!(json_stderr(&dup)["error"]["kind"], "duplicate_vertex");
}
