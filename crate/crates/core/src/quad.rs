//! Quadrilaterals, their shape flags, derived points and affine normalization.
//!
//! Vertices are listed in traversal order. Diagonals are `q1q3` and `q2q4`;
//! the opposite side pairs are `(q1q2, q3q4)` and `(q2q3, q4q1)`.

use serde::{Deserialize, Serialize};

use crate::error::QuadError;
use crate::geom::{cross, AffineMap, Line, Mat2, Vec2};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuadRepr", into = "QuadRepr")]
pub struct Quad {
    q: [Vec2; 4],
}

/// Wire form: `{"vertices": [[x, y], [x, y], [x, y], [x, y]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadRepr {
    pub vertices: [[f64; 2]; 4],
}

impl TryFrom<QuadRepr> for Quad {
    type Error = QuadError;
    fn try_from(r: QuadRepr) -> Result<Self, Self::Error> {
        Quad::new(r.vertices.map(Vec2::from))
    }
}

impl From<Quad> for QuadRepr {
    fn from(q: Quad) -> Self {
        QuadRepr {
            vertices: q.q.map(<[f64; 2]>::from),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadShape {
    pub trapezoid: bool,
    pub parallelogram: bool,
    pub simple: bool,
    pub strictly_convex: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedPoints {
    /// Midpoint of diagonal q2q4.
    pub mu: Vec2,
    /// Midpoint of diagonal q1q3.
    pub nu: Vec2,
    /// Midpoint of the hidden vertices; absent for trapezoids.
    pub tau: Option<Vec2>,
    /// `(q1q2 x q3q4, q2q3 x q4q1)`, the crossings of extended opposite sides.
    pub hidden: Option<(Vec2, Vec2)>,
    /// Crossing of the diagonals, absent when they are parallel.
    pub diag_cross: Option<Vec2>,
}

/// `|u x v| <= tol |u| |v|`.
pub(crate) fn nearly_parallel(u: Vec2, v: Vec2) -> bool {
    cross(u, v).abs() <= tol::GEOMETRIC * u.norm() * v.norm()
}

impl Quad {
    pub fn new(q: [Vec2; 4]) -> Result<Self, QuadError> {
        if q.iter().any(|v| !v.is_finite()) {
            return Err(QuadError::NonFinite);
        }
        let scale = q.iter().map(|v| v.norm()).fold(1.0_f64, f64::max);
        for i in 0..4 {
            for j in i + 1..4 {
                if q[i].dist(q[j]) <= tol::GEOMETRIC * scale {
                    return Err(QuadError::DuplicateVertex(i + 1, j + 1));
                }
            }
        }
        for [i, j, k] in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            if nearly_parallel(q[j] - q[i], q[k] - q[i]) {
                return Err(QuadError::ThreePointsOnLine([i + 1, j + 1, k + 1]));
            }
        }
        Ok(Self { q })
    }

    pub fn from_coords(c: [[f64; 2]; 4]) -> Result<Self, QuadError> {
        Self::new(c.map(Vec2::from))
    }

    #[inline]
    pub fn vertices(&self) -> [Vec2; 4] {
        self.q
    }

    /// Zero-based vertex access.
    #[inline]
    pub fn vertex(&self, i: usize) -> Vec2 {
        self.q[i % 4]
    }

    /// Side vectors `q(i+1) - q(i)`.
    pub fn edges(&self) -> [Vec2; 4] {
        std::array::from_fn(|i| self.vertex(i + 1) - self.vertex(i))
    }

    /// Extended sides `q1q2, q2q3, q3q4, q4q1`.
    pub fn side_lines(&self) -> [Line; 4] {
        std::array::from_fn(|i| {
            Line::through(self.vertex(i), self.vertex(i + 1)).expect("distinct vertices")
        })
    }

    /// Side segments as endpoint pairs, in the same order as [`Quad::side_lines`].
    pub fn side_segments(&self) -> [(Vec2, Vec2); 4] {
        std::array::from_fn(|i| (self.vertex(i), self.vertex(i + 1)))
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0_f64;
        for i in 0..4 {
            for j in i + 1..4 {
                d = d.max(self.q[i].dist(self.q[j]));
            }
        }
        d
    }

    /// Arithmetic mean of the vertices.
    pub fn centroid(&self) -> Vec2 {
        (self.q[0] + self.q[1] + self.q[2] + self.q[3]) * 0.25
    }

    /// Signed shoelace area; positive for counterclockwise traversal.
    pub fn signed_area(&self) -> f64 {
        0.5 * (0..4).map(|i| cross(self.vertex(i), self.vertex(i + 1))).sum::<f64>()
    }

    pub fn map(&self, phi: &AffineMap) -> Result<Quad, QuadError> {
        Quad::new(self.q.map(|v| phi.apply(v)))
    }

    /// Same cycle started at vertex `k`.
    pub fn rotated(&self, k: usize) -> Quad {
        Quad {
            q: std::array::from_fn(|i| self.vertex(i + k)),
        }
    }

    /// Traversal reversed, keeping `q1`: `(q1, q4, q3, q2)`. Diagonals are unchanged.
    pub fn reversed(&self) -> Quad {
        Quad {
            q: [self.q[0], self.q[3], self.q[2], self.q[1]],
        }
    }

    /// `q2q3 || q4q1`.
    pub fn second_pair_parallel(&self) -> bool {
        let e = self.edges();
        nearly_parallel(e[1], e[3])
    }

    /// `q1q2 || q3q4`.
    pub fn first_pair_parallel(&self) -> bool {
        let e = self.edges();
        nearly_parallel(e[0], e[2])
    }

    pub fn diagonals_parallel(&self) -> bool {
        nearly_parallel(self.q[2] - self.q[0], self.q[3] - self.q[1])
    }

    pub fn shape(&self) -> QuadShape {
        let (p1, p2) = (self.first_pair_parallel(), self.second_pair_parallel());
        let simple = !segments_cross(self.q[0], self.q[1], self.q[2], self.q[3])
            && !segments_cross(self.q[1], self.q[2], self.q[3], self.q[0]);
        let e = self.edges();
        let turns: [f64; 4] = std::array::from_fn(|i| cross(e[i], e[(i + 1) % 4]));
        let convex = turns.iter().all(|&t| t > 0.0) || turns.iter().all(|&t| t < 0.0);
        QuadShape {
            trapezoid: p1 || p2,
            parallelogram: p1 && p2,
            simple,
            strictly_convex: convex && simple,
        }
    }

    pub fn derived_points(&self) -> DerivedPoints {
        let [q1, q2, q3, q4] = self.q;
        let sides = self.side_lines();
        let h1 = (!self.first_pair_parallel())
            .then(|| sides[0].intersect(&sides[2]))
            .flatten();
        let h2 = (!self.second_pair_parallel())
            .then(|| sides[1].intersect(&sides[3]))
            .flatten();
        let hidden = h1.zip(h2);
        let diag_cross = if self.diagonals_parallel() {
            None
        } else {
            let d1 = Line::through(q1, q3).expect("distinct vertices");
            let d2 = Line::through(q2, q4).expect("distinct vertices");
            d1.intersect(&d2)
        };
        DerivedPoints {
            mu: q2.midpoint(q4),
            nu: q1.midpoint(q3),
            tau: hidden.map(|(a, b)| a.midpoint(b)),
            hidden,
            diag_cross,
        }
    }

    /// The affine map `x -> B^-1 (x - q1)` with `B = [q2 - q1 | q4 - q1]`, and
    /// the image quad `(0,0), (1,0), p, (0,1)`.
    pub fn normalize(&self) -> (AffineMap, Quad) {
        let [q1, q2, q3, q4] = self.q;
        let b = Mat2::from_cols(q2 - q1, q4 - q1);
        let binv = b.inverse().expect("no three vertices on a line");
        let phi = AffineMap::new(binv, -binv.mul_vec(q1)).expect("invertible");
        let p = binv.mul_vec(q3 - q1);
        let normalized = Quad {
            q: [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), p, Vec2::new(0.0, 1.0)],
        };
        (phi, normalized)
    }
}

/// Proper crossing of open segments `ab` and `cd`.
fn segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let o1 = cross(b - a, c - a);
    let o2 = cross(b - a, d - a);
    let o3 = cross(d - c, a - c);
    let o4 = cross(d - c, b - c);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Checked construction returning the shape flags alongside.
pub fn validate(q: [Vec2; 4]) -> Result<(Quad, QuadShape), QuadError> {
    let quad = Quad::new(q)?;
    let shape = quad.shape();
    Ok((quad, shape))
}
