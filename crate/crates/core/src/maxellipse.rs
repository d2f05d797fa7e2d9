//! Largest-area ellipse inscribed in a strictly convex quadrilateral.
//!
//! Inscribed ellipses are the family members with `t` in `(0, 1)`; area is
//! proportional to `sqrt(det B(t))`, a cubic in `t` whose stationary point has
//! a closed form.

use serde::Serialize;

use crate::conic::CentralConic;
use crate::conic::real_roots;
use crate::error::MaxEllipseError;
use crate::geom::Vec2;
use crate::newton::{FamilyKind, TangentFamily};
use crate::quad::Quad;

/// Slack on the segment parameter of a touching point.
const ON_SEGMENT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    ClosedForm,
    GoldenSection,
}

#[derive(Debug, Clone, Serialize)]
pub struct InscribedSolution {
    pub t: f64,
    pub center: Vec2,
    pub ellipse: CentralConic,
    pub area: f64,
    /// `det B(t)` in normalized coordinates.
    pub normalized_det: f64,
    /// Touching points on the sides `q1q2, q2q3, q3q4, q4q1`.
    pub touching_points: [Vec2; 4],
    pub method: SolveMethod,
}

/// Maximizer of `f` on `[lo, hi]` for unimodal `f`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    0.5 * (lo + hi)
}

/// Stationary points of `det B(t)` inside `(0, 1)`.
pub fn stationary_params(family: &TangentFamily) -> Vec<f64> {
    match family.kind() {
        FamilyKind::Trapezoid => vec![0.5],
        FamilyKind::Generic => {
            let p = family.normalized_p();
            let a = (p.x1 - 1.0) * (p.x2 - 1.0);
            let b = p.x1 + p.x2 - 1.0;
            real_roots(3.0 * a, 2.0 * (b - a), -b)
                .into_iter()
                .filter(|t| *t > 0.0 && *t < 1.0)
                .collect()
        }
    }
}

/// Touching points of the family member at `t`, when all lie on the closed sides.
pub fn inscribed_at(family: &TangentFamily, t: f64) -> Option<(CentralConic, [Vec2; 4])> {
    let k = family.conic_at(t).ok()?;
    if k.class() != crate::conic::ConicClass::Ellipse {
        return None;
    }
    let q = family.base_quad();
    let lines = q.side_lines();
    let segs = q.side_segments();
    let mut pts = [Vec2::default(); 4];
    for i in 0..4 {
        let x = k.tangency_point(&lines[i]).ok()?;
        let (a, b) = segs[i];
        let s = (x - a).dot(b - a) / (b - a).norm_sq();
        if !(-ON_SEGMENT..=1.0 + ON_SEGMENT).contains(&s) {
            return None;
        }
        pts[i] = x;
    }
    Some((k, pts))
}

pub fn max_inscribed_ellipse(q: &Quad) -> Result<InscribedSolution, MaxEllipseError> {
    let shape = q.shape();
    if !shape.strictly_convex {
        return Err(MaxEllipseError::NotStrictlyConvex);
    }
    if shape.parallelogram {
        return Err(MaxEllipseError::Parallelogram);
    }
    let family = TangentFamily::build(q)?;
    let objective = |t: f64| family.det_factored(t);

    let mut candidates: Vec<(f64, SolveMethod)> = stationary_params(&family)
        .into_iter()
        .map(|t| (t, SolveMethod::ClosedForm))
        .collect();
    candidates.push((golden_section(objective, 0.0, 1.0, 1e-12), SolveMethod::GoldenSection));

    let mut best: Option<InscribedSolution> = None;
    for (t, method) in candidates {
        let Some((ellipse, touching_points)) = inscribed_at(&family, t) else { continue };
        let det = objective(t);
        // The closed form stands unless the search finds something clearly better.
        if best.as_ref().is_some_and(|b| det <= b.normalized_det * (1.0 + 1e-12)) {
            continue;
        }
        best = Some(InscribedSolution {
            t,
            center: ellipse.center(),
            area: ellipse.area()?,
            ellipse,
            normalized_det: det,
            touching_points,
            method,
        });
    }
    best.ok_or(MaxEllipseError::NoInscribedEllipse)
}

/// `pi / sqrt(det M)` for an ellipse.
pub fn area_of(k: &CentralConic) -> Result<f64, MaxEllipseError> {
    Ok(k.area()?)
}
