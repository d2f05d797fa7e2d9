//! Centers of conics tangent to the four extended sides of a quadrilateral.
//!
//! In normalized coordinates the quad is `(0,0), (1,0), p, (0,1)`; the
//! centers sweep the Newton line `d(t) = mu + (nu - mu) t` and the conic
//! centered at `d(t)` is `(x - d)^T B^-1 (x - d) = 1` with
//! `B = [[d1^2, k], [k, d2^2]]`. Trapezoids are relabeled so the parallel
//! pair is `q2q3 || q4q1`, giving `p = (1, s)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::conic::CentralConic;
use crate::error::{NewtonError, SingularPoint};
use crate::geom::{AffineMap, Line, SymMat2, Vec2};
use crate::quad::Quad;
use crate::sample::{stream_rng, ParamSampler};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Generic,
    Trapezoid,
}

#[derive(Debug, Clone)]
pub struct TangentFamily {
    base_quad: Quad,
    normalizer: AffineMap,
    denormalizer: AffineMap,
    /// Third vertex of the normalized quad; exactly `(1, s)` for trapezoids.
    p: Vec2,
    newton_line: Line,
    mu: Vec2,
    nu: Vec2,
    tau: Option<Vec2>,
    kind: FamilyKind,
    relabeled: bool,
}

const MU_N: Vec2 = Vec2::new(0.5, 0.5);

impl TangentFamily {
    pub fn build(q: &Quad) -> Result<Self, NewtonError> {
        let shape = q.shape();
        if shape.parallelogram {
            return Err(NewtonError::ParallelogramHasNoNewtonLine);
        }
        // Reversal keeps both diagonals, so mu, nu and t keep their meaning.
        let relabeled = q.first_pair_parallel();
        let working = if relabeled { q.reversed() } else { *q };
        let (normalizer, nq) = working.normalize();
        let mut p = nq.vertex(2);
        let kind = if shape.trapezoid {
            p.x1 = 1.0;
            FamilyKind::Trapezoid
        } else {
            FamilyKind::Generic
        };
        let denormalizer = normalizer.inverse();
        let derived = q.derived_points();
        let newton_line = Line::through(derived.mu, derived.nu)
            .map_err(|_| NewtonError::ParallelogramHasNoNewtonLine)?;
        let tau = match kind {
            FamilyKind::Generic => Some(denormalizer.apply(tau_normalized(p))),
            FamilyKind::Trapezoid => None,
        };
        Ok(Self {
            base_quad: *q,
            normalizer,
            denormalizer,
            p,
            newton_line,
            mu: derived.mu,
            nu: derived.nu,
            tau,
            kind,
            relabeled,
        })
    }

    pub fn base_quad(&self) -> &Quad {
        &self.base_quad
    }

    /// Map from original to normalized coordinates.
    pub fn normalizer(&self) -> &AffineMap {
        &self.normalizer
    }

    pub fn newton_line(&self) -> &Line {
        &self.newton_line
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// True when the vertex cycle was reversed to put the parallel pair at `q2q3 || q4q1`.
    pub fn relabeled(&self) -> bool {
        self.relabeled
    }

    /// `s` of the normalized trapezoid `(0,0), (1,0), (1,s), (0,1)`.
    pub fn trapezoid_s(&self) -> Option<f64> {
        (self.kind == FamilyKind::Trapezoid).then_some(self.p.x2)
    }

    /// Normalized third vertex.
    pub fn normalized_p(&self) -> Vec2 {
        self.p
    }

    /// The excluded centers, `mu, nu` and `tau` when defined.
    pub fn singular_points(&self) -> Vec<(SingularPoint, Vec2)> {
        let mut v = vec![(SingularPoint::Mu, self.mu), (SingularPoint::Nu, self.nu)];
        if let Some(t) = self.tau {
            v.push((SingularPoint::Tau, t));
        }
        v
    }

    /// Roots of `det B(t)`, labelled by the center they produce.
    pub fn singular_params(&self) -> Vec<(SingularPoint, f64)> {
        let mut v = vec![(SingularPoint::Mu, 0.0), (SingularPoint::Nu, 1.0)];
        if self.kind == FamilyKind::Generic {
            let (p1, p2) = (self.p.x1, self.p.x2);
            v.push((SingularPoint::Tau, -(p1 + p2 - 1.0) / ((p1 - 1.0) * (p2 - 1.0))));
        }
        v
    }

    pub fn nu_normalized(&self) -> Vec2 {
        self.p * 0.5
    }

    /// `d(t)` in normalized coordinates.
    pub fn center_normalized(&self, t: f64) -> Vec2 {
        MU_N + (self.nu_normalized() - MU_N) * t
    }

    /// `d(t)` in original coordinates.
    pub fn center_at(&self, t: f64) -> Vec2 {
        self.denormalizer.apply(self.center_normalized(t))
    }

    /// Center `d(t)` and the matrix `B(t)`, both normalized.
    pub fn family_matrix(&self, t: f64) -> (Vec2, SymMat2) {
        let d = self.center_normalized(t);
        let off = match self.kind {
            FamilyKind::Generic => {
                let tau1 = tau_normalized(self.p).x1;
                d.x1 * d.x2 + tau1 - d.x1 - 2.0 * tau1 * d.x2
            }
            FamilyKind::Trapezoid => {
                let r = 1.0 / (1.0 - self.p.x2);
                d.x1 * d.x2 + 0.5 * r - d.x1 - r * d.x2
            }
        };
        (d, SymMat2::new(d.x1 * d.x1, off, d.x2 * d.x2))
    }

    /// `det B(t)` evaluated from the matrix entries.
    pub fn det_direct(&self, t: f64) -> f64 {
        self.family_matrix(t).1.det()
    }

    /// `det B(t)` from its factorization.
    pub fn det_factored(&self, t: f64) -> f64 {
        let (p1, p2) = (self.p.x1, self.p.x2);
        match self.kind {
            FamilyKind::Generic => {
                -0.25 * t * (t - 1.0) * (t * (p1 - 1.0) * (p2 - 1.0) + (p1 + p2 - 1.0))
            }
            FamilyKind::Trapezoid => -0.25 * p2 * t * (t - 1.0),
        }
    }

    /// The singular point whose parameter lies within the guard radius of `t`.
    pub fn singular_near(&self, t: f64) -> Option<SingularPoint> {
        self.singular_params()
            .into_iter()
            .find(|&(_, r)| (t - r).abs() <= tol::SINGULAR_PARAM_GUARD * r.abs().max(1.0))
            .map(|(sp, _)| sp)
    }

    fn nearest_singular(&self, t: f64) -> SingularPoint {
        self.singular_params()
            .into_iter()
            .min_by(|a, b| (t - a.1).abs().total_cmp(&(t - b.1).abs()))
            .map(|(sp, _)| sp)
            .expect("at least two roots")
    }

    /// The conic of the family centered at `d(t)`, in original coordinates.
    pub fn conic_at(&self, t: f64) -> Result<CentralConic, NewtonError> {
        if let Some(point) = self.singular_near(t) {
            return Err(NewtonError::SingularParameter { point, t });
        }
        let (d, b) = self.family_matrix(t);
        if b.is_singular() {
            let point = self.nearest_singular(t);
            return Err(NewtonError::SingularParameter { point, t });
        }
        // (x - c)^T m^T B^-1 m (x - c) = 1, so M^-1 = m^-1 B m^-T.
        let back = self.denormalizer.linear();
        let m_inv = back.transpose().congruence(&b);
        CentralConic::from_inverse(self.denormalizer.apply(d), m_inv).map_err(|_| {
            NewtonError::SingularParameter {
                point: self.nearest_singular(t),
                t,
            }
        })
    }

    /// Inverse of `t -> center_at(t)` on the Newton line.
    pub fn param_of_center(&self, c: Vec2) -> Result<f64, NewtonError> {
        let distance = self.newton_line.distance(c);
        let scale = self.base_quad.diameter().max(c.dist(self.mu));
        if distance > tol::GEOMETRIC * scale {
            return Err(NewtonError::NotOnNewtonLine { distance });
        }
        let d = self.normalizer.apply(c);
        let dir = self.nu_normalized() - MU_N;
        Ok((d - MU_N).dot(dir) / dir.norm_sq())
    }

    /// Linear necessary condition on a tangent conic's center, normalized coordinates.
    ///
    /// Generic: `(tau1 - 2 tau1 c2 - c1) - (tau2 - 2 tau2 c1 - c2)`. Trapezoid: `c1 - 1/2`.
    pub fn center_witness(&self, c: Vec2) -> f64 {
        match self.kind {
            FamilyKind::Generic => {
                let tau = tau_normalized(self.p);
                (tau.x1 - 2.0 * tau.x1 * c.x2 - c.x1) - (tau.x2 - 2.0 * tau.x2 * c.x1 - c.x2)
            }
            FamilyKind::Trapezoid => c.x1 - 0.5,
        }
    }
}

/// `tau = (p1 / (2 (1 - p2)), p2 / (2 (1 - p1)))`.
pub(crate) fn tau_normalized(p: Vec2) -> Vec2 {
    Vec2::new(0.5 * p.x1 / (1.0 - p.x2), 0.5 * p.x2 / (1.0 - p.x1))
}

pub fn build_family(q: &Quad) -> Result<TangentFamily, NewtonError> {
    TangentFamily::build(q)
}

/// Randomized check of the tangent-conic locus on one quad.
#[derive(Debug, Clone, Serialize)]
pub struct TangentLocusReport {
    pub samples: usize,
    pub kind: FamilyKind,
    /// Worst relative tangency residual over all sides and samples.
    pub max_tangency_residual: f64,
    /// Worst center-to-line distance divided by the quad diameter.
    pub max_center_distance: f64,
    /// Worst linear-condition residual at the sampled centers.
    pub online_max_witness: f64,
    /// Smallest `|witness| / distance-to-line` over off-line grid centers.
    pub offline_min_witness_ratio: f64,
    /// Largest `|t - param_of_center(center_at(t))|`.
    pub max_param_roundtrip: f64,
}

pub fn verify_tangent_locus(
    q: &Quad,
    samples: usize,
    seed: u64,
) -> Result<TangentLocusReport, NewtonError> {
    let fam = TangentFamily::build(q)?;
    let sides = q.side_lines();
    let diam = q.diameter();
    let sampler = ParamSampler::Uniform { min: -10.0, max: 10.0 };

    let per_sample: Vec<[f64; 4]> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let (t, k) = sampler.draw_conic(&fam, &mut rng);
            let tangency = sides
                .iter()
                .map(|l| k.tangency_residual(l))
                .fold(0.0, f64::max);
            let c = k.center();
            let dist = fam.newton_line.distance(c) / diam;
            let witness = fam.center_witness(fam.normalizer.apply(c)).abs();
            let round = fam.param_of_center(c).map_or(f64::INFINITY, |s| (s - t).abs());
            [tangency, dist, witness, round]
        })
        .collect();
    let worst = |j: usize| per_sample.iter().map(|r| r[j]).fold(0.0, f64::max);

    // Off-line grid in normalized coordinates; the witness must stay away from zero.
    let nline = fam.normalizer.apply_line(&fam.newton_line);
    let mut offline = f64::INFINITY;
    for i in 0..=20 {
        for j in 0..=20 {
            let c = Vec2::new(-2.0 + 0.25 * i as f64, -2.0 + 0.25 * j as f64);
            let dist = nline.distance(c);
            if dist > 1e-3 {
                offline = offline.min(fam.center_witness(c).abs() / dist);
            }
        }
    }

    Ok(TangentLocusReport {
        samples,
        kind: fam.kind,
        max_tangency_residual: worst(0),
        max_center_distance: worst(1),
        online_max_witness: worst(2),
        offline_min_witness_ratio: offline,
        max_param_roundtrip: worst(3),
    })
}
