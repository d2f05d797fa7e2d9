//! Centers of conics through the four vertices of a quadrilateral.
//!
//! In normalized coordinates the locus is
//! `p2(1-p2) x1(x1-1/2) + p1(1-p1) x2(x2-1/2) + 2 p1 p2 (x1-1/2)(x2-1/2) = 0`,
//! which passes through the side midpoints, the diagonal midpoints, the two
//! hidden vertices and the diagonal crossing.

use rayon::prelude::*;
use serde::Serialize;

use crate::conic::{CenterSet, CentralConic, Conic, ConicClass};
use crate::error::NinePointError;
use crate::geom::{AffineMap, SymMat2, Vec2};
use crate::quad::Quad;
use crate::sample::stream_rng;

/// Residual above which a point is not accepted as lying on the locus.
const ON_LOCUS: f64 = 1e-8;
/// Radius, in normalized coordinates, within which a special center is matched.
const SPECIAL_RADIUS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NinePointLabel {
    MidpointQ1Q2,
    MidpointQ2Q3,
    MidpointQ3Q4,
    MidpointQ4Q1,
    /// Midpoint of `q2q4`.
    Mu,
    /// Midpoint of `q1q3`.
    Nu,
    /// `q1q2` meets `q3q4`.
    HiddenVertex1,
    /// `q2q3` meets `q4q1`.
    HiddenVertex2,
    DiagonalCrossing,
}

impl NinePointLabel {
    pub const ALL: [NinePointLabel; 9] = [
        NinePointLabel::MidpointQ1Q2,
        NinePointLabel::MidpointQ2Q3,
        NinePointLabel::MidpointQ3Q4,
        NinePointLabel::MidpointQ4Q1,
        NinePointLabel::Mu,
        NinePointLabel::Nu,
        NinePointLabel::HiddenVertex1,
        NinePointLabel::HiddenVertex2,
        NinePointLabel::DiagonalCrossing,
    ];
}

/// How [`NinePointConic::conic_with_center`] built its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    /// The closed form valid away from the special centers.
    General,
    /// Center at `mu`.
    AtMu,
    /// Center at the midpoint of `q4q1`.
    AtMidpointQ4Q1,
    /// Center at the midpoint of `q1q2`.
    AtMidpointQ1Q2,
    /// Center at the hidden vertex on `q1q2`.
    AtHiddenVertex1,
    /// Center at the hidden vertex on `q4q1`.
    AtHiddenVertex2,
}

#[derive(Debug, Clone)]
pub struct NinePointConic {
    base_quad: Quad,
    normalizer: AffineMap,
    p: Vec2,
    normalized: Conic,
    conic: Conic,
    points: [Vec2; 9],
}

impl NinePointConic {
    pub fn build(q: &Quad) -> Result<Self, NinePointError> {
        if q.first_pair_parallel() || q.second_pair_parallel() {
            return Err(NinePointError::TrapezoidExcluded);
        }
        if q.diagonals_parallel() {
            return Err(NinePointError::ParallelDiagonals);
        }
        let (normalizer, nq) = q.normalize();
        let p = nq.vertex(2);
        let normalized = locus_normalized(p);
        let conic = normalized.apply_affine(&normalizer.inverse());
        let d = q.derived_points();
        let (h1, h2) = d.hidden.expect("not a trapezoid");
        let [q1, q2, q3, q4] = q.vertices();
        let points = [
            q1.midpoint(q2),
            q2.midpoint(q3),
            q3.midpoint(q4),
            q4.midpoint(q1),
            d.mu,
            d.nu,
            h1,
            h2,
            d.diag_cross.expect("diagonals not parallel"),
        ];
        Ok(Self { base_quad: *q, normalizer, p, normalized, conic, points })
    }

    pub fn base_quad(&self) -> &Quad {
        &self.base_quad
    }

    /// The locus in original coordinates.
    pub fn conic(&self) -> &Conic {
        &self.conic
    }

    /// The locus in normalized coordinates.
    pub fn normalized_conic(&self) -> &Conic {
        &self.normalized
    }

    pub fn normalizer(&self) -> &AffineMap {
        &self.normalizer
    }

    pub fn normalized_p(&self) -> Vec2 {
        self.p
    }

    /// The nine named points, ordered as [`NinePointLabel::ALL`].
    pub fn nine_points(&self) -> [(NinePointLabel, Vec2); 9] {
        std::array::from_fn(|i| (NinePointLabel::ALL[i], self.points[i]))
    }

    /// Center of the locus, the mean of the four vertices.
    pub fn center(&self) -> Vec2 {
        self.base_quad.centroid()
    }

    pub fn class(&self) -> ConicClass {
        self.normalized.classify()
    }

    /// Relative residual of `c` against the locus.
    pub fn residual(&self, c: Vec2) -> f64 {
        self.normalized.residual(self.normalizer.apply(c))
    }

    /// Central form of the locus, original coordinates.
    pub fn central(&self) -> Result<CentralConic, NinePointError> {
        Ok(self.conic.to_central()?)
    }

    /// The point of the locus in direction `angle` from its center, if the ray meets it.
    ///
    /// Directions are taken in normalized coordinates.
    pub fn point_at_angle(&self, angle: f64) -> Option<Vec2> {
        let k = self.normalized.to_central().ok()?;
        let dir = Vec2::new(angle.cos(), angle.sin());
        k.point_towards(dir)
            .map(|x| self.normalizer.inverse().apply(x))
    }

    /// A conic through all four vertices whose center is `c`.
    pub fn conic_with_center(&self, c: Vec2) -> Result<(Conic, Realization), NinePointError> {
        let d = self.normalizer.apply(c);
        let residual = self.normalized.residual(d);
        if residual > ON_LOCUS {
            return Err(NinePointError::NotOnNinePointConic { residual });
        }
        let (p1, p2) = (self.p.x1, self.p.x2);
        let specials = [
            (Vec2::new(0.5, 0.5), Realization::AtMu),
            (Vec2::new(0.0, 0.5), Realization::AtMidpointQ4Q1),
            (Vec2::new(0.5, 0.0), Realization::AtMidpointQ1Q2),
            (Vec2::new(p1 / (1.0 - p2), 0.0), Realization::AtHiddenVertex1),
            (Vec2::new(0.0, p2 / (1.0 - p1)), Realization::AtHiddenVertex2),
        ];
        let branch = specials
            .iter()
            .find(|(pt, _)| d.dist(*pt) <= SPECIAL_RADIUS * (1.0 + pt.norm()))
            .map_or(Realization::General, |&(_, r)| r);
        let swapped = self.p.swapped();
        let g = match branch {
            Realization::General => general_branch(d),
            Realization::AtMu => at_mu(self.p),
            Realization::AtMidpointQ4Q1 => at_side_midpoint(self.p),
            Realization::AtMidpointQ1Q2 => at_side_midpoint(swapped).map(|g| swap_coords(&g)),
            Realization::AtHiddenVertex1 => at_hidden_vertex(self.p),
            Realization::AtHiddenVertex2 => at_hidden_vertex(swapped).map(|g| swap_coords(&g)),
        }?;
        Ok((g.apply_affine(&self.normalizer.inverse()), branch))
    }
}

pub fn build_ninepoint(q: &Quad) -> Result<NinePointConic, NinePointError> {
    NinePointConic::build(q)
}

fn locus_normalized(p: Vec2) -> Conic {
    let (p1, p2) = (p.x1, p.x2);
    let a11 = p2 * (1.0 - p2);
    let a22 = p1 * (1.0 - p1);
    let a12 = p1 * p2;
    Conic::from_parts(
        SymMat2::new(a11, a12, a22),
        Vec2::new(-0.5 * a11 - a12, -0.5 * a22 - a12),
        0.5 * a12,
    )
}

/// `(x - d)^T B (x - d) - d^T B d` with `B` built from `d`.
fn general_branch(d: Vec2) -> Result<Conic, NinePointError> {
    let (e1, e2) = (d.x1 - 0.5, d.x2 - 0.5);
    let b = SymMat2::new(-d.x2 * e2, e1 * e2, -d.x1 * e1);
    Ok(Conic::new(b, b.mul_vec(d) * -2.0, 0.0)?)
}

fn at_mu(p: Vec2) -> Result<Conic, NinePointError> {
    let (u1, u2) = ((p.x1 - 0.5).powi(2), (p.x2 - 0.5).powi(2));
    let mu = u2 - u1;
    let nu = u1 + u2 - 0.5;
    let (a, b) = (0.5 * (mu + nu), 0.5 * (mu - nu));
    Ok(Conic::new(SymMat2::diag(a, b), Vec2::new(-a, -b), 0.25 * (a + b - mu))?)
}

/// Centered at `(0, 1/2)`.
fn at_side_midpoint(p: Vec2) -> Result<Conic, NinePointError> {
    let alpha = p.x2 * (1.0 - p.x2);
    let beta = p.x1 * (p.x1 + 2.0 * p.x2 - 1.0);
    Ok(Conic::new(
        SymMat2::new(alpha, alpha, beta),
        Vec2::new(-alpha, -beta),
        0.0,
    )?)
}

/// The line pair `x2 (p1 - p1 x2 - (1 - p2) x1)`, centered at `(p1 / (1 - p2), 0)`.
fn at_hidden_vertex(p: Vec2) -> Result<Conic, NinePointError> {
    Ok(Conic::new(
        SymMat2::new(0.0, -0.5 * (1.0 - p.x2), -p.x1),
        Vec2::new(0.0, p.x1),
        0.0,
    )?)
}

fn swap_coords(g: &Conic) -> Conic {
    let [a11, a12, a22, v1, v2, s] = g.coefficients();
    Conic::from_parts(SymMat2::new(a22, a12, a11), Vec2::new(v2, v1), s)
}

/// The pencil of conics through the four vertices, spanned by the two side-pair line pairs.
#[derive(Debug, Clone)]
pub struct Pencil {
    f1: Conic,
    f2: Conic,
}

impl Pencil {
    pub fn new(q: &Quad) -> Self {
        let [s12, s23, s34, s41] = q.side_lines();
        Self {
            f1: Conic::line_pair(&s12, &s34),
            f2: Conic::line_pair(&s41, &s23),
        }
    }

    /// `lambda f1 + (1 - lambda) f2`.
    pub fn member(&self, lambda: f64) -> Option<Conic> {
        self.f1.combine(lambda, &self.f2, 1.0 - lambda).ok()
    }

    pub fn generators(&self) -> (&Conic, &Conic) {
        (&self.f1, &self.f2)
    }
}

pub fn pencil_member(q: &Quad, lambda: f64) -> Option<Conic> {
    Pencil::new(q).member(lambda)
}

#[derive(Debug, Clone, Serialize)]
pub struct PassingLocusReport {
    pub samples: usize,
    /// Worst residual of the nine named points.
    pub max_nine_point_residual: f64,
    /// Worst residual of pencil-member centers against the locus.
    pub max_pencil_center_residual: f64,
    /// Worst vertex residual of the realized conics.
    pub max_vertex_residual: f64,
    /// Worst distance between requested and realized center, relative to the quad diameter.
    pub max_center_error: f64,
    /// Sampled points that returned no conic.
    pub failures: usize,
    /// Special centers exercised explicitly.
    pub specials_checked: usize,
}

pub fn verify_passing_locus(
    q: &Quad,
    samples: usize,
    seed: u64,
) -> Result<PassingLocusReport, NinePointError> {
    use rand::Rng;

    let npc = NinePointConic::build(q)?;
    let pencil = Pencil::new(q);
    let diam = q.diameter();
    let verts = q.vertices();

    let max_nine_point_residual = npc
        .nine_points()
        .iter()
        .map(|(_, x)| npc.conic().residual(*x))
        .fold(0.0, f64::max);

    let check = |c: Vec2| -> Option<(f64, f64)> {
        let (g, _) = npc.conic_with_center(c).ok()?;
        let vertex = verts.iter().map(|v| g.residual(*v)).fold(0.0, f64::max);
        let center = match g.centers() {
            CenterSet::Unique(x) => x.dist(c) / diam,
            _ => f64::INFINITY,
        };
        Some((vertex, center))
    };

    let rows: Vec<(f64, Option<(f64, f64)>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let lambda: f64 = rng.random_range(-10.0..10.0);
            let pencil_res = pencil
                .member(lambda)
                .and_then(|m| match m.centers() {
                    CenterSet::Unique(c) => Some(npc.residual(c)),
                    _ => None,
                })
                .unwrap_or(0.0);
            let point = loop {
                let angle = rng.random_range(0.0..std::f64::consts::TAU);
                if let Some(x) = npc.point_at_angle(angle) {
                    break x;
                }
            };
            (pencil_res, check(point))
        })
        .collect();

    let mut report = PassingLocusReport {
        samples,
        max_nine_point_residual,
        max_pencil_center_residual: 0.0,
        max_vertex_residual: 0.0,
        max_center_error: 0.0,
        failures: 0,
        specials_checked: 0,
    };
    let absorb = |r: Option<(f64, f64)>, rep: &mut PassingLocusReport| match r {
        Some((v, c)) => {
            rep.max_vertex_residual = rep.max_vertex_residual.max(v);
            rep.max_center_error = rep.max_center_error.max(c);
        }
        None => rep.failures += 1,
    };
    for (pr, r) in rows {
        report.max_pencil_center_residual = report.max_pencil_center_residual.max(pr);
        absorb(r, &mut report);
    }
    for (label, x) in npc.nine_points() {
        if label != NinePointLabel::DiagonalCrossing {
            absorb(check(x), &mut report);
            report.specials_checked += 1;
        }
    }
    Ok(report)
}
