//! Randomized property suite over generated quadrilaterals.
//!
//! Each property reports the worst residual seen and passes when it stays at
//! or below its tolerance.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conic::{CenterSet, ConicClass};
use crate::maxellipse::max_inscribed_ellipse;
use crate::newton::TangentFamily;
use crate::ninepoint::{NinePointConic, Pencil};
use crate::quad::Quad;
use crate::sample::{random_affine, random_quad, stream_rng, ParamSampler, QuadKind};

/// Property names with their default tolerances.
pub const PROPERTIES: [(&str, f64); 10] = [
    ("center_on_line", 1e-9),
    ("tangency", 1e-8),
    ("det_factorization", 1e-12),
    ("param_roundtrip", 1e-9),
    ("nine_points", 1e-9),
    ("pencil_centers", 1e-8),
    ("realization", 1e-8),
    ("convexity_dichotomy", 0.0),
    ("affine_invariance", 1e-8),
    ("max_ellipse_optimality", 1e-12),
];

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Number of individual checks folded into `max_residual`.
    pub checks: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.passed)
    }
}

/// Tolerances keyed by property name. `"all"` overrides every property.
pub fn tolerances(overrides: &BTreeMap<String, f64>) -> Result<BTreeMap<&'static str, f64>, String> {
    for key in overrides.keys() {
        if key != "all" && !PROPERTIES.iter().any(|(n, _)| n == key) {
            return Err(format!("unknown property '{key}'"));
        }
    }
    Ok(PROPERTIES
        .iter()
        .map(|&(name, default)| {
            let tol = overrides
                .get(name)
                .or_else(|| overrides.get("all"))
                .copied()
                .unwrap_or(default);
            (name, tol)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    max: f64,
    checks: usize,
}

impl Acc {
    fn add(&mut self, r: f64) {
        // NaN counts as a violation.
        self.max = if r.is_nan() { f64::INFINITY } else { self.max.max(r) };
        self.checks += 1;
    }

    fn merge(mut self, o: Acc) -> Acc {
        self.max = self.max.max(o.max);
        self.checks += o.checks;
        self
    }
}

type Row = [Acc; PROPERTIES.len()];

const PER_QUAD: usize = 8;

fn check_quad(seed: u64, index: u64) -> Row {
    let mut rng = stream_rng(seed, index);
    let q = random_quad(&mut rng, QuadKind::Any);
    let mut row: Row = Default::default();
    tangent_checks(&q, &mut rng, &mut row);
    passing_checks(&q, &mut rng, &mut row);
    affine_checks(&q, &mut rng, &mut row);
    if q.shape().strictly_convex {
        optimality_check(&q, &mut row);
    }
    row
}

fn tangent_checks<R: Rng>(q: &Quad, rng: &mut R, row: &mut Row) {
    let Ok(fam) = TangentFamily::build(q) else { return };
    let diam = q.diameter();
    let sampler = ParamSampler::Uniform { min: -10.0, max: 10.0 };
    for _ in 0..PER_QUAD {
        let (t, k) = sampler.draw_conic(&fam, rng);
        row[0].add(fam.newton_line().distance(k.center()) / diam);
        for side in q.side_lines() {
            row[1].add(k.tangency_residual(&side));
        }
        let (_, b) = fam.family_matrix(t);
        let scale = (b.a11 * b.a22).abs().max(b.a12 * b.a12).max(1.0);
        row[2].add((fam.det_factored(t) - fam.det_direct(t)).abs() / scale);
        let back = fam.param_of_center(k.center()).map_or(f64::INFINITY, |s| (s - t).abs());
        row[3].add(back / t.abs().max(1.0));
    }
}

fn passing_checks<R: Rng>(q: &Quad, rng: &mut R, row: &mut Row) {
    let Ok(npc) = NinePointConic::build(q) else { return };
    for (_, x) in npc.nine_points() {
        row[4].add(npc.conic().residual(x));
    }
    let pencil = Pencil::new(q);
    for _ in 0..PER_QUAD {
        let lambda = ParamSampler::HeavyTailed.sample(rng);
        if let Some(CenterSet::Unique(c)) = pencil.member(lambda).map(|m| m.centers()) {
            row[5].add(npc.residual(c));
        }
    }
    let diam = q.diameter();
    let mut realized = |c| match npc.conic_with_center(c) {
        Ok((g, _)) => {
            for v in q.vertices() {
                row[6].add(g.residual(v));
            }
            let err = match g.centers() {
                CenterSet::Unique(x) => x.dist(c) / diam,
                _ => f64::INFINITY,
            };
            row[6].add(err);
        }
        Err(_) => row[6].add(f64::INFINITY),
    };
    for _ in 0..PER_QUAD {
        let x = loop {
            if let Some(x) = npc.point_at_angle(rng.random_range(0.0..std::f64::consts::TAU)) {
                break x;
            }
        };
        realized(x);
    }
    if q.shape().simple {
        let hyperbola = npc.class() == ConicClass::Hyperbola;
        let mismatch = hyperbola != q.shape().strictly_convex;
        row[7].add(if mismatch { 1.0 } else { 0.0 });
    }
}

fn affine_checks<R: Rng>(q: &Quad, rng: &mut R, row: &mut Row) {
    let phi = random_affine(rng);
    let Ok(mapped) = q.map(&phi) else { return };
    let scale = mapped.diameter();
    if let (Ok(f), Ok(g)) = (TangentFamily::build(q), TangentFamily::build(&mapped)) {
        let pushed = phi.apply_line(f.newton_line());
        let line_ok = pushed.approx_eq(g.newton_line(), 1e-8);
        row[8].add(if line_ok { 0.0 } else { 1.0 });
        let sampler = ParamSampler::Uniform { min: -10.0, max: 10.0 };
        let (t, k) = sampler.draw_conic(&f, rng);
        if let Ok(k2) = g.conic_at(t) {
            let k1 = k.apply_affine(&phi);
            row[8].add(k1.center().dist(k2.center()) / scale);
            let (a, b) = (k1.inverse_matrix(), k2.inverse_matrix());
            let diff = a.scale(-1.0).add(&b).frobenius();
            row[8].add(diff / a.frobenius().max(1.0));
            row[8].add(if k1.class() == k2.class() { 0.0 } else { 1.0 });
            for side in mapped.side_lines() {
                row[8].add(k1.tangency_residual(&side));
            }
        }
    }
    if let (Ok(n), Ok(m)) = (NinePointConic::build(q), NinePointConic::build(&mapped)) {
        let pushed = n.conic().apply_affine(&phi).normalized().coefficients();
        let direct = m.conic().normalized().coefficients();
        let diff = pushed
            .iter()
            .zip(direct.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        row[8].add(diff);
    }
}

fn optimality_check(q: &Quad, row: &mut Row) {
    let (Ok(sol), Ok(fam)) = (max_inscribed_ellipse(q), TangentFamily::build(q)) else {
        row[9].add(f64::INFINITY);
        return;
    };
    for i in 1..64 {
        let t = i as f64 / 64.0;
        if let Ok(k) = fam.conic_at(t) {
            if let Ok(area) = k.area() {
                row[9].add(((area - sol.area) / sol.area).max(0.0));
            }
        }
    }
}

/// Runs every property over `samples` random quads.
pub fn run_suite(
    samples: usize,
    seed: u64,
    overrides: &BTreeMap<String, f64>,
) -> Result<VerifyReport, String> {
    let tols = tolerances(overrides)?;
    let rows: Vec<Row> = (0..samples as u64)
        .into_par_iter()
        .map(|i| check_quad(seed, i))
        .collect();
    let total = rows.into_iter().fold(Row::default(), |mut acc, r| {
        for (a, b) in acc.iter_mut().zip(r) {
            *a = a.merge(b);
        }
        acc
    });
    let properties = PROPERTIES
        .iter()
        .zip(total)
        .map(|(&(name, _), acc)| {
            let tolerance = tols[name];
            PropertyResult {
                name: name.to_string(),
                max_residual: acc.max,
                tolerance,
                passed: acc.max <= tolerance,
                checks: acc.checks,
            }
        })
        .collect();
    Ok(VerifyReport { samples, seed, properties })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = run_suite(60, 11, &BTreeMap::new()).unwrap();
        for p in &r.properties {
            assert!(p.passed, "{p:?}");
        }
    }

    #[test]
    fn zero_tolerance_flags_residuals() {
        let mut o = BTreeMap::new();
        o.insert("tangency".to_string(), 0.0);
        let r = run_suite(20, 1, &o).unwrap();
        let failed: Vec<_> = r.failures().map(|p| p.name.as_str()).collect();
        assert_eq!(failed, vec!["tangency"]);
    }

    #[test]
    fn unknown_property_rejected() {
        let mut o = BTreeMap::new();
        o.insert("nope".to_string(), 1.0);
        assert!(run_suite(1, 0, &o).is_err());
    }
}
