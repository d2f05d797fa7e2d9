//! JSON, CSV and SVG encoders.

use std::fmt::Write as _;

use quadloci::{Conic, Line, Quad, Vec2};
use serde_json::{json, Value};

use crate::error::CliError;

/// Drops the sign of negative zero.
pub fn num(x: f64) -> f64 {
    x + 0.0
}

pub fn point(v: Vec2) -> Value {
    json!([num(v.x1), num(v.x2)])
}

pub fn points(vs: &[Vec2]) -> Value {
    Value::Array(vs.iter().map(|v| point(*v)).collect())
}

pub fn line(l: &Line) -> Value {
    json!({ "n": point(l.normal()), "b": num(l.offset()) })
}

/// `(a11, a12, a22, v1, v2, s)` scaled so the largest magnitude is +1.
pub fn conic(c: &Conic) -> Value {
    json!({
        "coefficients": c.normalized().coefficients().map(num),
        "class": c.classify(),
    })
}

pub fn to_json_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serializable");
    out.push(b'\n');
    out
}

/// Header row followed by records, all fields rendered with `Display`.
pub fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
}

pub const TANGENT_COLOR: &str = "magenta";
pub const PASSING_COLOR: &str = "blue";

/// Axis-aligned viewport in world coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min: Vec2,
    pub max: Vec2,
}

impl Viewport {
    /// The quad's bounding box scaled 3x about its center.
    pub fn around(q: &Quad) -> Self {
        let vs = q.vertices();
        let (mut lo, mut hi) = (vs[0], vs[0]);
        for v in &vs[1..] {
            lo = Vec2::new(lo.x1.min(v.x1), lo.x2.min(v.x2));
            hi = Vec2::new(hi.x1.max(v.x1), hi.x2.max(v.x2));
        }
        let c = lo.midpoint(hi);
        let floor = 0.1 * (hi.x1 - lo.x1).max(hi.x2 - lo.x2);
        let half = Vec2::new(
            1.5 * (hi.x1 - lo.x1).max(floor),
            1.5 * (hi.x2 - lo.x2).max(floor),
        );
        Viewport { min: c - half, max: c + half }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (self.min.x1..=self.max.x1).contains(&p.x1) && (self.min.x2..=self.max.x2).contains(&p.x2)
    }

    pub fn width(&self) -> f64 {
        self.max.x1 - self.min.x1
    }

    pub fn height(&self) -> f64 {
        self.max.x2 - self.min.x2
    }

    /// The visible segment of `l`, if any.
    pub fn clip(&self, l: &Line) -> Option<(Vec2, Vec2)> {
        let (p, d) = (l.point(), l.direction());
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (o, dir, lo, hi) in [
            (p.x1, d.x1, self.min.x1, self.max.x1),
            (p.x2, d.x2, self.min.x2, self.max.x2),
        ] {
            if dir == 0.0 {
                if o < lo || o > hi {
                    return None;
                }
                continue;
            }
            let (a, b) = ((lo - o) / dir, (hi - o) / dir);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
        (t0 <= t1).then(|| (p + d * t0, p + d * t1))
    }
}

pub struct SvgScene<'a> {
    pub quad: &'a Quad,
    pub newton_line: Option<&'a Line>,
    pub tangent: &'a [Vec2],
    pub passing: &'a [Vec2],
}

/// World coordinates with y up; only points inside the viewport are drawn.
pub fn svg(scene: &SvgScene) -> String {
    let vp = Viewport::around(scene.quad);
    let (w, h) = (vp.width(), vp.height());
    let stroke = w.max(h) / 400.0;
    let radius = w.max(h) / 500.0;
    let px_w = 800.0;
    let px_h = (800.0 * h / w).round();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px_w}" height="{px_h}" viewBox="{} {} {w} {h}">"#,
        vp.min.x1, -vp.max.x2
    );
    let _ = writeln!(s, r#"<g transform="scale(1,-1)">"#);
    let outline: Vec<String> = scene
        .quad
        .vertices()
        .iter()
        .map(|v| format!("{},{}", v.x1, v.x2))
        .collect();
    let _ = writeln!(
        s,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="{stroke}"/>"#,
        outline.join(" ")
    );
    if let Some((a, b)) = scene.newton_line.and_then(|l| vp.clip(l)) {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-width="{stroke}"/>"#,
            a.x1, a.x2, b.x1, b.x2
        );
    }
    for (cloud, color) in [(scene.tangent, TANGENT_COLOR), (scene.passing, PASSING_COLOR)] {
        let _ = writeln!(s, r#"<g fill="{color}">"#);
        for p in cloud.iter().filter(|p| vp.contains(**p)) {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{radius}"/>"#, p.x1, p.x2);
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
