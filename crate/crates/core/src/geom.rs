//! Plane linear algebra: points, symmetric 2x2 matrices, lines and affine maps.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::tol;

/// A point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    #[inline]
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2
    }

    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        cross(self, o)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Counterclockwise quarter turn, `(x1, x2) -> (-x2, x1)`.
    #[inline]
    pub fn rotate90(self) -> Vec2 {
        Vec2::new(-self.x2, self.x1)
    }

    #[inline]
    pub fn midpoint(self, o: Vec2) -> Vec2 {
        Vec2::new(0.5 * (self.x1 + o.x1), 0.5 * (self.x2 + o.x2))
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    #[inline]
    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Coordinates swapped, `(x1, x2) -> (x2, x1)`.
    #[inline]
    pub fn swapped(self) -> Vec2 {
        Vec2::new(self.x2, self.x1)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x1, v.x2]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x1, -self.x2)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x1 * k, self.x2 * k)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, k: f64) -> Vec2 {
        Vec2::new(self.x1 / k, self.x2 / k)
    }
}

/// Planar cross product `u.x1 * v.x2 - u.x2 * v.x1`.
#[inline]
pub fn cross(u: Vec2, v: Vec2) -> f64 {
    u.x1 * v.x2 - u.x2 * v.x1
}

/// Symmetric 2x2 matrix; the lower off-diagonal entry is `a12`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SymMat2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

/// Eigenpairs of a symmetric 2x2 matrix, `values.0 >= values.1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymEigen {
    pub values: (f64, f64),
    pub vectors: (Vec2, Vec2),
}

impl SymMat2 {
    pub const IDENTITY: SymMat2 = SymMat2 { a11: 1.0, a12: 0.0, a22: 1.0 };
    pub const ZERO: SymMat2 = SymMat2 { a11: 0.0, a12: 0.0, a22: 0.0 };

    #[inline]
    pub const fn new(a11: f64, a12: f64, a22: f64) -> Self {
        Self { a11, a12, a22 }
    }

    pub fn diag(a11: f64, a22: f64) -> Self {
        Self::new(a11, 0.0, a22)
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    #[inline]
    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.a11 * self.a11 + 2.0 * self.a12 * self.a12 + self.a22 * self.a22
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.a11 == 0.0 && self.a12 == 0.0 && self.a22 == 0.0
    }

    #[inline]
    pub fn mul_vec(&self, x: Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * x.x1 + self.a12 * x.x2,
            self.a12 * x.x1 + self.a22 * x.x2,
        )
    }

    /// Bilinear form `u^T A w`.
    #[inline]
    pub fn bilinear(&self, u: Vec2, w: Vec2) -> f64 {
        u.dot(self.mul_vec(w))
    }

    /// Quadratic form `x^T A x`.
    #[inline]
    pub fn quad_form(&self, x: Vec2) -> f64 {
        self.bilinear(x, x)
    }

    pub fn scale(&self, k: f64) -> SymMat2 {
        SymMat2::new(self.a11 * k, self.a12 * k, self.a22 * k)
    }

    pub fn add(&self, o: &SymMat2) -> SymMat2 {
        SymMat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a22 + o.a22)
    }

    /// True when `|det| <= 1e-12 * max(1, |A|_F^2)`.
    pub fn is_singular(&self) -> bool {
        self.det().abs() <= tol::SINGULAR * self.frobenius_sq().max(1.0)
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<SymMat2, GeomError> {
        if self.is_singular() || !self.det().is_finite() {
            return Err(GeomError::SingularMatrix { det: self.det() });
        }
        let inv = 1.0 / self.det();
        Ok(SymMat2::new(self.a22 * inv, -self.a12 * inv, self.a11 * inv))
    }

    /// Inverse under the scale-free cutoff `|det| <= 1e-12 |A|_F^2`.
    pub fn inverse_relative(&self) -> Result<SymMat2, GeomError> {
        let det = self.det();
        if det.abs() <= tol::SINGULAR * self.frobenius_sq() || !det.is_finite() {
            return Err(GeomError::SingularMatrix { det });
        }
        let inv = 1.0 / det;
        Ok(SymMat2::new(self.a22 * inv, -self.a12 * inv, self.a11 * inv))
    }

    /// Closed-form eigendecomposition with unit eigenvectors.
    pub fn eigen(&self) -> SymEigen {
        let half_tr = 0.5 * (self.a11 + self.a22);
        let half_diff = 0.5 * (self.a11 - self.a22);
        let r = half_diff.hypot(self.a12);
        let (l1, l2) = (half_tr + r, half_tr - r);
        let scale = self.a11.abs().max(self.a22.abs()).max(self.a12.abs());
        let e1 = if self.a12.abs() <= tol::ALGEBRAIC * scale {
            if self.a11 >= self.a22 {
                Vec2::new(1.0, 0.0)
            } else {
                Vec2::new(0.0, 1.0)
            }
        } else {
            // Either row of (A - l1 I) annihilates e1; take the better conditioned one.
            let c1 = Vec2::new(self.a12, l1 - self.a11);
            let c2 = Vec2::new(l1 - self.a22, self.a12);
            let c = if c1.norm_sq() >= c2.norm_sq() { c1 } else { c2 };
            c / c.norm()
        };
        SymEigen {
            values: (l1, l2),
            vectors: (e1, e1.rotate90()),
        }
    }
}

/// General 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { m11: 1.0, m12: 0.0, m21: 0.0, m22: 1.0 };

    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn from_cols(c1: Vec2, c2: Vec2) -> Self {
        Self::new(c1.x1, c2.x1, c1.x2, c2.x2)
    }

    pub fn scalar(k: f64) -> Self {
        Self::new(k, 0.0, 0.0, k)
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.m11 * self.m11 + self.m12 * self.m12 + self.m21 * self.m21 + self.m22 * self.m22
    }

    #[inline]
    pub fn mul_vec(&self, x: Vec2) -> Vec2 {
        Vec2::new(
            self.m11 * x.x1 + self.m12 * x.x2,
            self.m21 * x.x1 + self.m22 * x.x2,
        )
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m11, self.m21, self.m12, self.m22)
    }

    /// Scale-free: `|det| <= 1e-12 |m|_F^2`, so affine maps of any size qualify.
    pub fn is_singular(&self) -> bool {
        self.det().abs() <= tol::SINGULAR * self.frobenius_sq()
    }

    pub fn inverse(&self) -> Result<Mat2, GeomError> {
        let det = self.det();
        if self.is_singular() || !det.is_finite() {
            return Err(GeomError::SingularMatrix { det });
        }
        let inv = 1.0 / det;
        Ok(Mat2::new(
            self.m22 * inv,
            -self.m12 * inv,
            -self.m21 * inv,
            self.m11 * inv,
        ))
    }

    /// Congruence `P^T S P`, which stays symmetric.
    pub fn congruence(&self, s: &SymMat2) -> SymMat2 {
        let p = self;
        let a11 = p.m11 * (s.a11 * p.m11 + s.a12 * p.m21) + p.m21 * (s.a12 * p.m11 + s.a22 * p.m21);
        let a12 = p.m11 * (s.a11 * p.m12 + s.a12 * p.m22) + p.m21 * (s.a12 * p.m12 + s.a22 * p.m22);
        let a22 = p.m12 * (s.a11 * p.m12 + s.a12 * p.m22) + p.m22 * (s.a12 * p.m12 + s.a22 * p.m22);
        SymMat2::new(a11, a12, a22)
    }
}

/// The line `{x : n . x = b}`, stored with `|n| = 1` and the first nonzero
/// component of `n` positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    n: Vec2,
    b: f64,
}

impl Line {
    pub fn new(n: Vec2, b: f64) -> Result<Self, GeomError> {
        let len = n.norm();
        if len == 0.0 || !len.is_finite() || !b.is_finite() {
            return Err(GeomError::DegenerateNormal);
        }
        let (mut n, mut b) = (n / len, b / len);
        if n.x1 < 0.0 || (n.x1 == 0.0 && n.x2 < 0.0) {
            n = -n;
            b = -b;
        }
        Ok(Self { n, b })
    }

    /// The line through two distinct points.
    pub fn through(p: Vec2, q: Vec2) -> Result<Self, GeomError> {
        let d = q - p;
        if d.norm() <= tol::GEOMETRIC * p.norm().max(q.norm()).max(1.0) {
            return Err(GeomError::CoincidentPoints);
        }
        let n = d.rotate90();
        Line::new(n, n.dot(p))
    }

    /// Line through `p` with direction `d`.
    pub fn with_direction(p: Vec2, d: Vec2) -> Result<Self, GeomError> {
        let n = d.rotate90();
        Line::new(n, n.dot(p))
    }

    #[inline]
    pub fn normal(&self) -> Vec2 {
        self.n
    }

    #[inline]
    pub fn offset(&self) -> f64 {
        self.b
    }

    /// Unit direction, the quarter turn of the normal.
    pub fn direction(&self) -> Vec2 {
        self.n.rotate90()
    }

    /// Signed distance `n . x - b`.
    #[inline]
    pub fn signed_distance(&self, x: Vec2) -> f64 {
        self.n.dot(x) - self.b
    }

    pub fn distance(&self, x: Vec2) -> f64 {
        self.signed_distance(x).abs()
    }

    /// Foot of the perpendicular from the origin.
    pub fn point(&self) -> Vec2 {
        self.n * self.b
    }

    pub fn project(&self, x: Vec2) -> Vec2 {
        x - self.n * self.signed_distance(x)
    }

    pub fn is_parallel(&self, o: &Line) -> bool {
        cross(self.n, o.n).abs() <= tol::GEOMETRIC
    }

    /// Intersection point, `None` for parallel lines.
    pub fn intersect(&self, o: &Line) -> Option<Vec2> {
        let det = cross(self.n, o.n);
        if det.abs() <= tol::GEOMETRIC {
            return None;
        }
        Some(Vec2::new(
            (self.b * o.n.x2 - o.b * self.n.x2) / det,
            (self.n.x1 * o.b - o.n.x1 * self.b) / det,
        ))
    }

    /// Scale-free equality of the underlying point sets.
    pub fn approx_eq(&self, o: &Line, tol: f64) -> bool {
        let scale = self.b.abs().max(o.b.abs()).max(1.0);
        let same = |sgn: f64| {
            (self.n - o.n * sgn).norm() <= tol && (self.b - o.b * sgn).abs() <= tol * scale
        };
        same(1.0) || same(-1.0)
    }
}

/// Invertible affine map `x -> m x + t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    m: Mat2,
    t: Vec2,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        m: Mat2::IDENTITY,
        t: Vec2::ZERO,
    };

    pub fn new(m: Mat2, t: Vec2) -> Result<Self, GeomError> {
        if m.is_singular() {
            return Err(GeomError::SingularMatrix { det: m.det() });
        }
        Ok(Self { m, t })
    }

    pub fn translation(t: Vec2) -> Self {
        Self { m: Mat2::IDENTITY, t }
    }

    #[inline]
    pub fn linear(&self) -> &Mat2 {
        &self.m
    }

    #[inline]
    pub fn translation_part(&self) -> Vec2 {
        self.t
    }

    #[inline]
    pub fn apply(&self, x: Vec2) -> Vec2 {
        self.m.mul_vec(x) + self.t
    }

    /// `self after other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            m: self.m.mul(&other.m),
            t: self.m.mul_vec(other.t) + self.t,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        // `new` rejected singular linear parts, so inversion succeeds.
        let mi = self
            .m
            .inverse()
            .expect("affine map with singular linear part");
        AffineMap {
            m: mi,
            t: -mi.mul_vec(self.t),
        }
    }

    /// Image of a line: `n' = m^-T n`, `b' = b + n . (m^-1 t)`.
    pub fn apply_line(&self, l: &Line) -> Line {
        let mi = self.m.inverse().expect("affine map with singular linear part");
        let n = mi.transpose().mul_vec(l.normal());
        let b = l.offset() + l.normal().dot(mi.mul_vec(self.t));
        Line::new(n, b).expect("invertible map sends a line to a line")
    }
}
