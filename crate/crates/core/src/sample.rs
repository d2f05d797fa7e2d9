//! Seeded random inputs and point clouds.
//!
//! Each sample index draws from its own ChaCha stream, so results do not
//! depend on thread count or evaluation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conic::{CenterSet, CentralConic};
use crate::geom::{cross, AffineMap, Mat2, Vec2};
use crate::newton::TangentFamily;
use crate::ninepoint::Pencil;
use crate::quad::Quad;

/// Independent generator for sample `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Distribution of the Newton-line parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ParamSampler {
    Uniform { min: f64, max: f64 },
    /// `tan(u)` for `u` uniform on `(-0.999 pi/2, 0.999 pi/2)`; reaches far along the line.
    HeavyTailed,
}

impl ParamSampler {
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            ParamSampler::Uniform { min, max } => rng.random_range(min..=max),
            ParamSampler::HeavyTailed => {
                let h = 0.999 * std::f64::consts::FRAC_PI_2;
                rng.random_range(-h..h).tan()
            }
        }
    }

    /// Draws until the family yields a conic, skipping the singular parameters.
    pub fn draw_conic<R: Rng>(&self, family: &TangentFamily, rng: &mut R) -> (f64, CentralConic) {
        loop {
            let t = self.sample(rng);
            if let Ok(k) = family.conic_at(t) {
                return (t, k);
            }
        }
    }
}

/// Which quadrilaterals [`random_quad`] may return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    Any,
    Simple,
    StrictlyConvex,
}

/// Sine margin keeping random quads away from every excluded configuration.
pub const CONDITIONING: f64 = 0.05;

fn sine(u: Vec2, v: Vec2) -> f64 {
    (cross(u, v) / (u.norm() * v.norm())).abs()
}

/// True when no three vertices are nearly collinear and no side pair or the
/// diagonals are nearly parallel.
pub fn well_conditioned(q: &Quad, margin: f64) -> bool {
    let v = q.vertices();
    let triples = [[0, 1, 2], [1, 2, 3], [2, 3, 0], [3, 0, 1]];
    let collinear = triples
        .iter()
        .any(|&[a, b, c]| sine(v[b] - v[a], v[c] - v[a]) < margin);
    if collinear {
        return false;
    }
    let e = q.edges();
    sine(e[0], e[2]) >= margin
        && sine(e[1], e[3]) >= margin
        && sine(v[2] - v[0], v[3] - v[1]) >= margin
        && q.diameter() >= 0.2
}

/// A well-conditioned quad with vertices in `[-1, 1]^2`.
pub fn random_quad<R: Rng>(rng: &mut R, kind: QuadKind) -> Quad {
    loop {
        let c: [[f64; 2]; 4] =
            std::array::from_fn(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
        let Ok(q) = Quad::from_coords(c) else { continue };
        if !well_conditioned(&q, CONDITIONING) {
            continue;
        }
        let shape = q.shape();
        let ok = match kind {
            QuadKind::Any => true,
            QuadKind::Simple => shape.simple,
            QuadKind::StrictlyConvex => shape.strictly_convex,
        };
        if ok {
            return q;
        }
    }
}

/// `count` quads, quad `i` drawn from stream `i`.
pub fn random_quads(seed: u64, count: usize, kind: QuadKind) -> Vec<Quad> {
    (0..count)
        .into_par_iter()
        .map(|i| random_quad(&mut stream_rng(seed, i as u64), kind))
        .collect()
}

/// A random affine map with singular values in a bounded range.
pub fn random_affine<R: Rng>(rng: &mut R) -> AffineMap {
    loop {
        let m = Mat2::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        // |det| / |m|_F^2 bounds the condition number.
        if m.det().abs() < 0.1 * m.frobenius_sq() {
            continue;
        }
        let t = Vec2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        if let Ok(phi) = AffineMap::new(m, t) {
            return phi;
        }
    }
}

/// Centers of `n` tangent-family conics.
pub fn tangent_cloud(family: &TangentFamily, n: usize, sampler: ParamSampler, seed: u64) -> Vec<Vec2> {
    (0..n)
        .into_par_iter()
        .map(|i| sampler.draw_conic(family, &mut stream_rng(seed, i as u64)).1.center())
        .collect()
}

/// Centers of `n` conics through the four vertices, drawn from the pencil
/// with heavy-tailed weight `lambda = tan(u)`.
pub fn passing_cloud(pencil: &Pencil, n: usize, seed: u64) -> Vec<Vec2> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            loop {
                let lambda = ParamSampler::HeavyTailed.sample(&mut rng);
                if let Some(CenterSet::Unique(c)) = pencil.member(lambda).map(|m| m.centers()) {
                    break c;
                }
            }
        })
        .collect()
}
