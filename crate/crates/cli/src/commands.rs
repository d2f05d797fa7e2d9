use std::collections::BTreeMap;
use std::path::Path;

use quadloci::conic::CentralConic;
use quadloci::newton::TangentFamily;
use quadloci::ninepoint::{NinePointConic, Pencil};
use quadloci::sample::{passing_cloud, tangent_cloud, ParamSampler};
use quadloci::verify::{run_suite, VerifyReport};
use quadloci::{max_inscribed_ellipse, Line, Quad, Vec2};
use serde_json::{json, Value};

use crate::args::{parse_vertices, Cli, Command, Format, GlobalArgs, LocusChoice};
use crate::error::CliError;
use crate::render::{self, num, SvgScene};
use crate::SCHEMA;

/// Rendered command output; `violation` marks a failed verification.
#[derive(Debug, Clone)]
pub struct Output {
    pub bytes: Vec<u8>,
    pub violation: bool,
}

impl Output {
    fn ok(bytes: Vec<u8>) -> Self {
        Output { bytes, violation: false }
    }
}

pub fn load_quad(g: &GlobalArgs) -> Result<Quad, CliError> {
    let vertices = match (&g.input, &g.vertices) {
        (Some(path), _) => read_quad_json(path)?,
        (None, Some(s)) => parse_vertices(s).map_err(CliError::Usage)?,
        (None, None) => {
            return Err(CliError::Usage("a quadrilateral is required: pass --input or --vertices".into()))
        }
    };
    Ok(Quad::new(vertices)?)
}

fn read_quad_json(path: &Path) -> Result<[Vec2; 4], CliError> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: invalid JSON: {e}", path.display())))?;
    let bad = || CliError::Usage(format!("{}: expected {{\"vertices\": [[x,y] x 4]}}", path.display()));
    let arr = v.get("vertices").and_then(Value::as_array).ok_or_else(bad)?;
    if arr.len() != 4 {
        return Err(bad());
    }
    let mut out = [Vec2::ZERO; 4];
    for (slot, item) in out.iter_mut().zip(arr) {
        let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
        let x = pair[0].as_f64().ok_or_else(bad)?;
        let y = pair[1].as_f64().ok_or_else(bad)?;
        *slot = Vec2::new(x, y);
    }
    Ok(out)
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not available for {command}").to_lowercase())
}

fn header(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn doc(command: &str, body: Value) -> Vec<u8> {
    let mut m = header(command);
    if let Value::Object(b) = body {
        m.extend(b);
    }
    render::to_json_bytes(&Value::Object(m))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { samples, tol } => {
            let overrides: BTreeMap<String, f64> = tol.iter().cloned().collect();
            let report = run_suite(*samples, g.seed, &overrides).map_err(CliError::Usage)?;
            verify_output(&report, g.format)
        }
        cmd => {
            let q = load_quad(g)?;
            match cmd {
                Command::Validate => validate(&q, g.format),
                Command::NewtonLine => newton_line(&q, g.format),
                Command::NinePoint => nine_point(&q, g.format),
                Command::TangentConic { t } => tangent_conic(&q, *t, g.format),
                Command::CenterToConic { point, locus } => center_to_conic(&q, *point, *locus, g.format),
                Command::MaxEllipse => max_ellipse(&q, g.format),
                Command::Sample { tangent, passing, t_min, t_max } => {
                    let sampler = match (t_min, t_max) {
                        (Some(a), Some(b)) if a < b => ParamSampler::Uniform { min: *a, max: *b },
                        (Some(_), Some(_)) => {
                            return Err(CliError::Usage("--t-min must be below --t-max".into()))
                        }
                        _ => ParamSampler::HeavyTailed,
                    };
                    let clouds = sample_clouds(&q, *tangent, *passing, sampler, g.seed)?;
                    sample_output(&q, &clouds, g.format)
                }
                Command::Verify { .. } => unreachable!("handled above"),
            }
        }
    }
}

fn validate(q: &Quad, format: Format) -> Result<Output, CliError> {
    let s = q.shape();
    let d = q.derived_points();
    match format {
        Format::Json => Ok(Output::ok(doc(
            "validate",
            json!({
                "vertices": render::points(&q.vertices()),
                "flags": {
                    "trapezoid": s.trapezoid,
                    "parallelogram": s.parallelogram,
                    "simple": s.simple,
                    "strictly_convex": s.strictly_convex,
                },
                "mu": render::point(d.mu),
                "nu": render::point(d.nu),
                "tau": d.tau.map(render::point),
                "hidden_vertices": d.hidden.map(|(a, b)| render::points(&[a, b])),
                "diagonal_crossing": d.diag_cross.map(render::point),
            }),
        ))),
        Format::Csv => {
            let rows = [
                ("trapezoid", s.trapezoid),
                ("parallelogram", s.parallelogram),
                ("simple", s.simple),
                ("strictly_convex", s.strictly_convex),
            ]
            .iter()
            .map(|(k, v)| vec![k.to_string(), v.to_string()])
            .collect::<Vec<_>>();
            Ok(Output::ok(render::csv_bytes(&["flag", "value"], &rows)?))
        }
        Format::Svg => Err(unsupported(format, "validate")),
    }
}

fn newton_line(q: &Quad, format: Format) -> Result<Output, CliError> {
    let fam = TangentFamily::build(q)?;
    let params: BTreeMap<String, f64> = fam
        .singular_params()
        .into_iter()
        .map(|(p, t)| (p.to_string(), t))
        .collect();
    let singular: Vec<(String, f64, Vec2)> = fam
        .singular_points()
        .into_iter()
        .map(|(p, x)| (p.to_string(), params[&p.to_string()], x))
        .collect();
    match format {
        Format::Json => Ok(Output::ok(doc(
            "newton-line",
            json!({
                "line": render::line(fam.newton_line()),
                "kind": fam.kind(),
                "trapezoid_s": fam.trapezoid_s(),
                "singular_points": singular
                    .iter()
                    .map(|(n, t, x)| json!({ "name": n, "t": t, "point": render::point(*x) }))
                    .collect::<Vec<_>>(),
            }),
        ))),
        Format::Csv => {
            let rows: Vec<Vec<String>> = singular
                .iter()
                .map(|(n, t, x)| vec![n.clone(), t.to_string(), num(x.x1).to_string(), num(x.x2).to_string()])
                .collect();
            Ok(Output::ok(render::csv_bytes(&["name", "t", "x", "y"], &rows)?))
        }
        Format::Svg => Err(unsupported(format, "newton-line")),
    }
}

fn nine_point(q: &Quad, format: Format) -> Result<Output, CliError> {
    let n = NinePointConic::build(q)?;
    let pts = n.nine_points();
    match format {
        Format::Json => Ok(Output::ok(doc(
            "nine-point",
            json!({
                "conic": render::conic(n.conic()),
                "center": render::point(n.center()),
                "simple": q.shape().simple,
                "nine_points": pts
                    .iter()
                    .map(|(l, x)| json!({ "label": l, "point": render::point(*x) }))
                    .collect::<Vec<_>>(),
            }),
        ))),
        Format::Csv => {
            let rows: Vec<Vec<String>> = pts
                .iter()
                .map(|(l, x)| {
                    let label = serde_json::to_value(l).expect("label").as_str().unwrap_or("").to_string();
                    vec![label, num(x.x1).to_string(), num(x.x2).to_string()]
                })
                .collect();
            Ok(Output::ok(render::csv_bytes(&["label", "x", "y"], &rows)?))
        }
        Format::Svg => Err(unsupported(format, "nine-point")),
    }
}

fn central_json(k: &CentralConic, q: &Quad) -> Value {
    let m = k.matrix();
    json!({
        "center": render::point(k.center()),
        "conic": render::conic(&k.to_conic()),
        "matrix": [m.a11, m.a12, m.a22],
        "tangency_residuals": q.side_lines().iter().map(|l| k.tangency_residual(l)).collect::<Vec<_>>(),
    })
}

fn json_only(format: Format, command: &str, body: Value) -> Result<Output, CliError> {
    match format {
        Format::Json => Ok(Output::ok(doc(command, body))),
        other => Err(unsupported(other, command)),
    }
}

fn tangent_conic(q: &Quad, t: f64, format: Format) -> Result<Output, CliError> {
    let fam = TangentFamily::build(q)?;
    let k = fam.conic_at(t)?;
    let mut body = central_json(&k, q);
    body["t"] = json!(t);
    json_only(format, "tangent-conic", body)
}

fn center_to_conic(q: &Quad, c: Vec2, locus: LocusChoice, format: Format) -> Result<Output, CliError> {
    let tangent = || -> Result<Value, CliError> {
        let fam = TangentFamily::build(q)?;
        let t = fam.param_of_center(c)?;
        let k = fam.conic_at(t)?;
        let mut body = central_json(&k, q);
        body["locus"] = json!("tangent");
        body["t"] = json!(t);
        Ok(body)
    };
    let passing = || -> Result<Value, CliError> {
        let n = NinePointConic::build(q)?;
        let (g, how) = n.conic_with_center(c)?;
        Ok(json!({
            "locus": "passing",
            "center": render::point(c),
            "conic": render::conic(&g),
            "realization": how,
            "vertex_residuals": q.vertices().iter().map(|v| g.residual(*v)).collect::<Vec<_>>(),
        }))
    };
    let body = match locus {
        LocusChoice::Tangent => tangent()?,
        LocusChoice::Passing => passing()?,
        LocusChoice::Auto => {
            let on_line = TangentFamily::build(q)
                .map(|f| f.param_of_center(c).is_ok())
                .unwrap_or(false);
            // mu, nu and tau sit on both loci; only the passing conic exists there.
            match on_line.then(tangent) {
                Some(Ok(body)) => body,
                Some(Err(e)) => passing().map_err(|_| e)?,
                None => passing().map_err(|e| match e {
                    CliError::Hypothesis { kind: "not_on_nine_point_conic", details, .. } => {
                        CliError::Hypothesis {
                            kind: "not_on_locus",
                            message: "point is on neither the Newton line nor the nine-point conic".into(),
                            details,
                        }
                    }
                    other => other,
                })?,
            }
        }
    };
    json_only(format, "center-to-conic", body)
}

fn max_ellipse(q: &Quad, format: Format) -> Result<Output, CliError> {
    let s = max_inscribed_ellipse(q)?;
    let mut body = central_json(&s.ellipse, q);
    body["t"] = json!(s.t);
    body["area"] = json!(s.area);
    body["touching_points"] = render::points(&s.touching_points);
    body["method"] = json!(s.method);
    json_only(format, "max-ellipse", body)
}

/// Center clouds for one quad. A refused locus yields an empty cloud and a note.
#[derive(Debug, Clone)]
pub struct Clouds {
    pub tangent: Vec<Vec2>,
    pub passing: Vec<Vec2>,
    pub newton_line: Option<Line>,
    pub nine_point: Option<NinePointConic>,
    pub notes: Vec<String>,
}

pub fn sample_clouds(
    q: &Quad,
    tangent_n: usize,
    passing_n: usize,
    sampler: ParamSampler,
    seed: u64,
) -> Result<Clouds, CliError> {
    let mut notes = Vec::new();
    let family = TangentFamily::build(q);
    let nine = NinePointConic::build(q);
    if let (Err(e), Err(_)) = (&family, &nine) {
        return Err(e.clone().into());
    }
    let (tangent, newton_line) = match &family {
        Ok(f) => (tangent_cloud(f, tangent_n, sampler, seed), Some(*f.newton_line())),
        Err(e) => {
            notes.push(format!("tangent cloud skipped: {e}"));
            (Vec::new(), None)
        }
    };
    // Separate stream family for the passing cloud.
    let passing_seed = seed ^ 0x9e37_79b9_7f4a_7c15;
    let (passing, nine_point) = match nine {
        Ok(n) => (passing_cloud(&Pencil::new(q), passing_n, passing_seed), Some(n)),
        Err(e) => {
            notes.push(format!("passing cloud skipped: {e}"));
            (Vec::new(), None)
        }
    };
    Ok(Clouds { tangent, passing, newton_line, nine_point, notes })
}

pub fn sample_csv(clouds: &Clouds) -> Result<Vec<u8>, CliError> {
    let rows: Vec<Vec<String>> = clouds
        .tangent
        .iter()
        .map(|p| ("tangent", p))
        .chain(clouds.passing.iter().map(|p| ("passing", p)))
        .map(|(k, p)| vec![k.to_string(), num(p.x1).to_string(), num(p.x2).to_string()])
        .collect();
    render::csv_bytes(&["kind", "cx", "cy"], &rows)
}

fn sample_output(q: &Quad, clouds: &Clouds, format: Format) -> Result<Output, CliError> {
    let bytes = match format {
        Format::Csv => sample_csv(clouds)?,
        Format::Svg => render::svg(&SvgScene {
            quad: q,
            newton_line: clouds.newton_line.as_ref(),
            tangent: &clouds.tangent,
            passing: &clouds.passing,
        })
        .into_bytes(),
        Format::Json => doc(
            "sample",
            json!({
                "tangent": render::points(&clouds.tangent),
                "passing": render::points(&clouds.passing),
                "notes": clouds.notes,
            }),
        ),
    };
    Ok(Output::ok(bytes))
}

fn verify_output(report: &VerifyReport, format: Format) -> Result<Output, CliError> {
    let bytes = match format {
        Format::Json => doc(
            "verify",
            json!({
                "samples": report.samples,
                "seed": report.seed,
                "passed": report.passed(),
                "properties": report.properties,
            }),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .properties
                .iter()
                .map(|p| {
                    vec![
                        p.name.clone(),
                        format!("{:e}", p.max_residual),
                        format!("{:e}", p.tolerance),
                        p.passed.to_string(),
                        p.checks.to_string(),
                    ]
                })
                .collect();
            render::csv_bytes(&["property", "max_residual", "tolerance", "passed", "checks"], &rows)?
        }
        Format::Svg => return Err(unsupported(format, "verify")),
    };
    Ok(Output { bytes, violation: !report.passed() })
}
