//! Conics as zero sets of quadratic polynomials `x^T A x + v^T x + s`.
//!
//! [`Conic`] is the general form and survives every degeneracy. A conic with
//! a unique center that does not contain it converts to [`CentralConic`],
//! `(x - c)^T M (x - c) = 1`, which carries the tangency and asymptote
//! predicates.

use serde::Serialize;

use crate::error::ConicError;
use crate::geom::{AffineMap, Line, SymMat2, Vec2};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicClass {
    Ellipse,
    Hyperbola,
    Parabola,
    /// Two crossing lines.
    DegenerateCentral,
    /// Parallel or coincident line pair.
    DegenerateNonCentral,
    /// Empty locus or a single point.
    EmptyOrPointLike,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CenterSet {
    Unique(Vec2),
    NoCenter,
    LineOfCenters(Line),
}

/// Real roots of `a r^2 + b r + c = 0`, ascending. Linear when `a == 0`.
pub fn real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    // Avoid cancellation: compute the larger-magnitude root first.
    let sgn = if b >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (b + sgn * disc.sqrt());
    let (r1, r2) = if q == 0.0 {
        let r = (-c / a).sqrt();
        (-r, r)
    } else {
        (q / a, c / q)
    };
    if r1 <= r2 {
        vec![r1, r2]
    } else {
        vec![r2, r1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    a: SymMat2,
    v: Vec2,
    s: f64,
}

impl Conic {
    pub fn new(a: SymMat2, v: Vec2, s: f64) -> Result<Self, ConicError> {
        let finite = [a.a11, a.a12, a.a22, v.x1, v.x2, s]
            .iter()
            .all(|c| c.is_finite());
        if !finite || a.is_zero() {
            return Err(ConicError::NotQuadratic);
        }
        Ok(Self { a, v, s })
    }

    pub(crate) fn from_parts(a: SymMat2, v: Vec2, s: f64) -> Self {
        debug_assert!(!a.is_zero());
        Self { a, v, s }
    }

    /// From `(a11, a12, a22, v1, v2, s)`, i.e.
    /// `a11 x1^2 + 2 a12 x1 x2 + a22 x2^2 + v1 x1 + v2 x2 + s`.
    pub fn from_coefficients(c: [f64; 6]) -> Result<Self, ConicError> {
        Self::new(SymMat2::new(c[0], c[1], c[2]), Vec2::new(c[3], c[4]), c[5])
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.a.a11, self.a.a12, self.a.a22, self.v.x1, self.v.x2, self.s]
    }

    /// The product `(n1 . x - b1)(n2 . x - b2)` of two line equations.
    pub fn line_pair(l1: &Line, l2: &Line) -> Conic {
        let (n1, n2) = (l1.normal(), l2.normal());
        let a = SymMat2::new(
            n1.x1 * n2.x1,
            0.5 * (n1.x1 * n2.x2 + n1.x2 * n2.x1),
            n1.x2 * n2.x2,
        );
        let v = -(n1 * l2.offset() + n2 * l1.offset());
        Conic::from_parts(a, v, l1.offset() * l2.offset())
    }

    #[inline]
    pub fn quadratic_part(&self) -> SymMat2 {
        self.a
    }

    #[inline]
    pub fn linear_part(&self) -> Vec2 {
        self.v
    }

    #[inline]
    pub fn constant(&self) -> f64 {
        self.s
    }

    pub fn scaled(&self, k: f64) -> Conic {
        Conic::from_parts(self.a.scale(k), self.v * k, self.s * k)
    }

    /// Rescaled so the coefficient of largest magnitude equals +1.
    pub fn normalized(&self) -> Conic {
        let c = self.coefficients();
        let big = c
            .iter()
            .copied()
            .fold(0.0_f64, |m, x| if x.abs() > m.abs() { x } else { m });
        self.scaled(1.0 / big)
    }

    /// `wa * self + wb * other`, when the quadratic part survives.
    pub fn combine(&self, wa: f64, other: &Conic, wb: f64) -> Result<Conic, ConicError> {
        Conic::new(
            self.a.scale(wa).add(&other.a.scale(wb)),
            self.v * wa + other.v * wb,
            self.s * wa + other.s * wb,
        )
    }

    #[inline]
    pub fn evaluate(&self, x: Vec2) -> f64 {
        self.a.quad_form(x) + self.v.dot(x) + self.s
    }

    /// `2 A x + v`.
    #[inline]
    pub fn gradient(&self, x: Vec2) -> Vec2 {
        self.a.mul_vec(x) * 2.0 + self.v
    }

    /// Magnitude of the terms evaluated at `x`, used to make residuals relative.
    pub fn term_scale(&self, x: Vec2) -> f64 {
        self.a.frobenius() * x.norm_sq() + self.v.norm() * x.norm() + self.s.abs()
    }

    /// `|f(x)|` relative to the size of its terms.
    pub fn residual(&self, x: Vec2) -> f64 {
        let scale = self.term_scale(x);
        if scale == 0.0 {
            0.0
        } else {
            self.evaluate(x).abs() / scale
        }
    }

    /// Real parameters `r` with `f(origin + r dir) = 0`.
    pub fn ray_roots(&self, origin: Vec2, dir: Vec2) -> Vec<f64> {
        real_roots(
            self.a.quad_form(dir),
            self.gradient(origin).dot(dir),
            self.evaluate(origin),
        )
    }

    /// Points `c` with `grad f(c) = 0`.
    pub fn centers(&self) -> CenterSet {
        let k = self.normalized();
        let (a, v) = (k.a, k.v);
        if !is_rank_deficient(&a) {
            return CenterSet::Unique(center_of(&a, v));
        }
        let (w, alpha) = range_direction(&a);
        let z = w.rotate90();
        if v.dot(z).abs() <= tol::GEOMETRIC * v.norm().max(a.frobenius()) {
            let line = Line::new(w, -v.dot(w) / (2.0 * alpha))
                .expect("unit range direction");
            CenterSet::LineOfCenters(line)
        } else {
            CenterSet::NoCenter
        }
    }

    pub fn classify(&self) -> ConicClass {
        let k = self.normalized();
        match k.centers() {
            CenterSet::Unique(c) => {
                let fc = k.value_at_center(c);
                let det = k.a.det();
                if det < 0.0 {
                    if fc == 0.0 {
                        ConicClass::DegenerateCentral
                    } else {
                        ConicClass::Hyperbola
                    }
                } else if fc != 0.0 && k.a.a11 * fc < 0.0 {
                    ConicClass::Ellipse
                } else {
                    ConicClass::EmptyOrPointLike
                }
            }
            CenterSet::NoCenter => ConicClass::Parabola,
            CenterSet::LineOfCenters(line) => {
                let fc = k.value_at_center(line.point());
                if fc != 0.0 && k.a.trace() * fc > 0.0 {
                    ConicClass::EmptyOrPointLike
                } else {
                    ConicClass::DegenerateNonCentral
                }
            }
        }
    }

    /// `f(c)` at a center, with values lost in cancellation flushed to zero.
    fn value_at_center(&self, c: Vec2) -> f64 {
        let half_vc = 0.5 * self.v.dot(c);
        let fc = self.s + half_vc;
        let scale = self.s.abs().max(half_vc.abs());
        if fc.abs() <= tol::ALGEBRAIC * scale {
            0.0
        } else {
            fc
        }
    }

    /// `(x - c)^T M (x - c) = 1` with `M = -A / f(c)`.
    pub fn to_central(&self) -> Result<CentralConic, ConicError> {
        let k = self.normalized();
        let c = match k.centers() {
            CenterSet::Unique(c) => c,
            _ => return Err(ConicError::NotCentral),
        };
        let fc = k.value_at_center(c);
        if fc == 0.0 {
            return Err(ConicError::DegenerateConic);
        }
        CentralConic::new(c, k.a.scale(-1.0 / fc))
    }

    /// The conic whose locus is the image of this one: `f'(phi(x)) = f(x)`.
    pub fn apply_affine(&self, phi: &AffineMap) -> Conic {
        let inv = phi.inverse();
        let p = inv.linear();
        let q = inv.translation_part();
        let a = p.congruence(&self.a);
        let v = p.transpose().mul_vec(self.a.mul_vec(q) * 2.0 + self.v);
        Conic::from_parts(a, v, self.evaluate(q))
    }

    /// Same locus up to a nonzero factor.
    pub fn same_locus(&self, other: &Conic, tol: f64) -> bool {
        let (a, b) = (self.normalized().coefficients(), other.normalized().coefficients());
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
    }
}

fn is_rank_deficient(a: &SymMat2) -> bool {
    a.det().abs() <= tol::SINGULAR * a.frobenius_sq()
}

fn center_of(a: &SymMat2, v: Vec2) -> Vec2 {
    let det = a.det();
    // -1/2 A^-1 v via the adjugate
    Vec2::new(
        -0.5 * (a.a22 * v.x1 - a.a12 * v.x2) / det,
        -0.5 * (a.a11 * v.x2 - a.a12 * v.x1) / det,
    )
}

/// Unit `w` and scalar `alpha` with `A ~ alpha w w^T` for rank-one `A`.
fn range_direction(a: &SymMat2) -> (Vec2, f64) {
    let e = a.eigen();
    if e.values.0.abs() >= e.values.1.abs() {
        (e.vectors.0, e.values.0)
    } else {
        (e.vectors.1, e.values.1)
    }
}

/// `(x - c)^T M (x - c) = 1`, `M` nonsingular and not negative definite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CentralConic {
    center: Vec2,
    m: SymMat2,
    m_inv: SymMat2,
}

impl CentralConic {
    pub fn new(center: Vec2, m: SymMat2) -> Result<Self, ConicError> {
        let m_inv = m.inverse_relative().map_err(|_| ConicError::NotCentral)?;
        Self::checked(center, m, m_inv)
    }

    /// Built from `M^-1`, which the tangency predicate consumes directly.
    pub fn from_inverse(center: Vec2, m_inv: SymMat2) -> Result<Self, ConicError> {
        let m = m_inv.inverse_relative().map_err(|_| ConicError::NotCentral)?;
        Self::checked(center, m, m_inv)
    }

    fn checked(center: Vec2, m: SymMat2, m_inv: SymMat2) -> Result<Self, ConicError> {
        if !center.is_finite() {
            return Err(ConicError::NotQuadratic);
        }
        if m.det() > 0.0 && m.a11 < 0.0 {
            return Err(ConicError::EmptyLocus);
        }
        Ok(Self { center, m, m_inv })
    }

    #[inline]
    pub fn center(&self) -> Vec2 {
        self.center
    }

    #[inline]
    pub fn matrix(&self) -> SymMat2 {
        self.m
    }

    #[inline]
    pub fn inverse_matrix(&self) -> SymMat2 {
        self.m_inv
    }

    pub fn class(&self) -> ConicClass {
        if self.m.det() > 0.0 {
            ConicClass::Ellipse
        } else {
            ConicClass::Hyperbola
        }
    }

    pub fn evaluate(&self, x: Vec2) -> f64 {
        self.m.quad_form(x - self.center) - 1.0
    }

    /// General form `x^T M x - 2 c^T M x + c^T M c - 1`.
    pub fn to_conic(&self) -> Conic {
        let mc = self.m.mul_vec(self.center);
        Conic::from_parts(self.m, mc * -2.0, self.center.dot(mc) - 1.0)
    }

    pub fn apply_affine(&self, phi: &AffineMap) -> CentralConic {
        let p = phi.inverse();
        let lin = phi.linear();
        CentralConic {
            center: phi.apply(self.center),
            m: p.linear().congruence(&self.m),
            m_inv: lin.transpose().congruence(&self.m_inv),
        }
    }

    /// True when the line runs parallel to an asymptote. Never for ellipses.
    pub fn directed_along(&self, l: &Line) -> bool {
        if self.class() == ConicClass::Ellipse {
            return false;
        }
        let d = l.direction();
        self.m.quad_form(d).abs() <= tol::GEOMETRIC * self.m.frobenius()
    }

    /// Directions `v1, v2` with `v^T M v = 0` and `v1^T M v2 = 1/2`.
    pub fn asymptote_directions(&self) -> Result<(Vec2, Vec2), ConicError> {
        if self.class() != ConicClass::Hyperbola {
            return Err(ConicError::NotHyperbola(self.class()));
        }
        let e = self.m.eigen();
        let u1 = e.vectors.0 / e.values.0.sqrt();
        let u2 = e.vectors.1 / (-e.values.1).sqrt();
        Ok(((u1 + u2) * 0.5, (u1 - u2) * 0.5))
    }

    pub fn asymptotes(&self) -> Result<(Line, Line), ConicError> {
        let (d1, d2) = self.asymptote_directions()?;
        Ok((
            Line::with_direction(self.center, d1)?,
            Line::with_direction(self.center, d2)?,
        ))
    }

    /// `|n^T M^-1 n - (b - n.c)^2|` on the unit-normal form of `l`, relative to
    /// `max(1, |M^-1|_F, (b - n.c)^2)`.
    pub fn tangency_residual(&self, l: &Line) -> f64 {
        let n = l.normal();
        let gap = l.offset() - n.dot(self.center);
        let lhs = self.m_inv.quad_form(n);
        let scale = 1.0_f64.max(self.m_inv.frobenius()).max(gap * gap);
        (lhs - gap * gap).abs() / scale
    }

    pub fn is_tangent(&self, l: &Line) -> bool {
        self.tangency_residual(l) <= tol::GEOMETRIC
    }

    /// Touching point `c + M^-1 n / (b - n.c)` of a tangent, non-asymptote line.
    pub fn tangency_point(&self, l: &Line) -> Result<Vec2, ConicError> {
        let n = l.normal();
        let gap = l.offset() - n.dot(self.center);
        if gap.abs() <= tol::GEOMETRIC * self.m_inv.frobenius().sqrt().max(1.0) {
            return Err(ConicError::AsymptoteHasNoTangencyPoint);
        }
        if !self.is_tangent(l) {
            return Err(ConicError::NotTangent);
        }
        Ok(self.center + self.m_inv.mul_vec(n) / gap)
    }

    /// `pi / sqrt(det M)` for an ellipse.
    pub fn area(&self) -> Result<f64, ConicError> {
        match self.class() {
            ConicClass::Ellipse => Ok(std::f64::consts::PI / self.m.det().sqrt()),
            other => Err(ConicError::NotAnEllipse(other)),
        }
    }

    /// Point on the conic at direction `dir` from the center, when the ray meets it.
    pub fn point_towards(&self, dir: Vec2) -> Option<Vec2> {
        let q = self.m.quad_form(dir);
        (q > 0.0).then(|| self.center + dir / q.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Mat2;

    fn unit_circle() -> Conic {
        Conic::from_coefficients([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    fn xy_minus_one() -> Conic {
        Conic::from_coefficients([0.0, 0.5, 0.0, 0.0, 0.0, -1.0]).unwrap()
    }

    fn line(n1: f64, n2: f64, b: f64) -> Line {
        Line::new(Vec2::new(n1, n2), b).unwrap()
    }

    #[test]
    fn roots_of_quadratics() {
        assert_eq!(real_roots(1.0, 0.0, -4.0), vec![-2.0, 2.0]);
        assert_eq!(real_roots(1.0, -3.0, 2.0), vec![1.0, 2.0]);
        assert_eq!(real_roots(1.0, 2.0, 1.0), vec![-1.0]);
        assert!(real_roots(1.0, 0.0, 1.0).is_empty());
        assert_eq!(real_roots(0.0, 2.0, -1.0), vec![0.5]);
        let r = real_roots(1.0, -1e8, 1.0);
        assert!((r[0] - 1e-8).abs() < 1e-22);
    }

    #[test]
    fn evaluate_and_gradient() {
        let c = unit_circle();
        assert_eq!(c.evaluate(Vec2::new(1.0, 0.0)), 0.0);
        assert_eq!(c.gradient(Vec2::new(1.0, 0.0)), Vec2::new(2.0, 0.0));
        let h = xy_minus_one();
        assert_eq!(h.evaluate(Vec2::new(1.0, 1.0)), 0.0);
        assert_eq!(h.gradient(Vec2::new(1.0, 1.0)), Vec2::new(1.0, 1.0));
    }

    #[test]
    fn center_examples() {
        assert_eq!(unit_circle().centers(), CenterSet::Unique(Vec2::ZERO));
        let parabola = Conic::from_coefficients([1.0, 0.0, 0.0, 0.0, -1.0, 0.0]).unwrap();
        assert_eq!(parabola.centers(), CenterSet::NoCenter);
        let parallel = Conic::from_coefficients([1.0, 0.0, 0.0, 0.0, 0.0, -1.0]).unwrap();
        match parallel.centers() {
            CenterSet::LineOfCenters(l) => {
                assert!(l.approx_eq(&line(1.0, 0.0, 0.0), 1e-15));
                // every point of x1 = 0 reflects the locus x1 = +-1 onto itself
                for y in [-3.0, 0.0, 7.5] {
                    let c = Vec2::new(0.0, y);
                    for x in [Vec2::new(1.0, 2.0), Vec2::new(-1.0, -4.0)] {
                        assert_eq!(parallel.evaluate(c * 2.0 - x), 0.0);
                    }
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(unit_circle().classify(), ConicClass::Ellipse);
        assert_eq!(xy_minus_one().classify(), ConicClass::Hyperbola);
        let cross = Conic::from_coefficients([0.0, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(cross.classify(), ConicClass::DegenerateCentral);
        let parabola = Conic::from_coefficients([1.0, 0.0, 0.0, 0.0, -1.0, 0.0]).unwrap();
        assert_eq!(parabola.classify(), ConicClass::Parabola);
        let pair = Conic::from_coefficients([1.0, 0.0, 0.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(pair.classify(), ConicClass::DegenerateNonCentral);
        let double = Conic::from_coefficients([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(double.classify(), ConicClass::DegenerateNonCentral);
        let empty = Conic::from_coefficients([1.0, 0.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(empty.classify(), ConicClass::EmptyOrPointLike);
        let point = Conic::from_coefficients([1.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(point.classify(), ConicClass::EmptyOrPointLike);
        let empty_pair = Conic::from_coefficients([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(empty_pair.classify(), ConicClass::EmptyOrPointLike);
    }

    #[test]
    fn rejects_non_quadratic() {
        assert_eq!(
            Conic::from_coefficients([0.0, 0.0, 0.0, 1.0, 1.0, 0.0]),
            Err(ConicError::NotQuadratic)
        );
        assert_eq!(
            Conic::from_coefficients([f64::NAN, 0.0, 1.0, 0.0, 0.0, 0.0]),
            Err(ConicError::NotQuadratic)
        );
    }

    #[test]
    fn central_form_examples() {
        let k = unit_circle().to_central().unwrap();
        assert_eq!(k.center(), Vec2::ZERO);
        assert_eq!(k.matrix(), SymMat2::IDENTITY);

        let h = xy_minus_one().to_central().unwrap();
        assert_eq!(h.center(), Vec2::ZERO);
        assert_eq!(h.matrix(), SymMat2::new(0.0, 0.5, 0.0));

        let big = Conic::from_coefficients([2.0, 0.0, 2.0, 0.0, 0.0, -8.0]).unwrap();
        let k = big.to_central().unwrap();
        assert_eq!(k.matrix(), SymMat2::new(0.25, 0.0, 0.25));
        // 16 points of each locus lie on the other
        for i in 0..16 {
            let th = i as f64 * std::f64::consts::TAU / 16.0;
            let u = Vec2::new(th.cos(), th.sin());
            let on_big = u * 2.0;
            assert!(k.evaluate(on_big).abs() <= 1e-12);
            let on_k = k.point_towards(u).unwrap();
            assert!(big.evaluate(on_k).abs() <= 1e-12);
        }

        let parabola = Conic::from_coefficients([1.0, 0.0, 0.0, 0.0, -1.0, 0.0]).unwrap();
        assert_eq!(parabola.to_central(), Err(ConicError::NotCentral));
        let cross = Conic::from_coefficients([0.0, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(cross.to_central(), Err(ConicError::DegenerateConic));
        let empty = Conic::from_coefficients([1.0, 0.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(empty.to_central(), Err(ConicError::EmptyLocus));
    }

    #[test]
    fn directed_along_examples() {
        let circle = unit_circle().to_central().unwrap();
        for l in [line(1.0, 0.0, 0.0), line(1.0, 1.0, 3.0), line(0.2, -1.0, 0.1)] {
            assert!(!circle.directed_along(&l));
        }
        let h = xy_minus_one().to_central().unwrap();
        assert!(h.directed_along(&line(0.0, 1.0, 0.0)));
        let h2 = Conic::from_coefficients([1.0, 0.0, -1.0, 0.0, 0.0, -1.0])
            .unwrap()
            .to_central()
            .unwrap();
        assert!(h2.directed_along(&line(1.0, 1.0, 5.0)));
        assert!(!h2.directed_along(&line(1.0, 0.0, 5.0)));
    }

    #[test]
    fn asymptote_examples() {
        let h = xy_minus_one().to_central().unwrap();
        let (a, b) = h.asymptotes().unwrap();
        let axes = [line(1.0, 0.0, 0.0), line(0.0, 1.0, 0.0)];
        assert!(axes.iter().any(|x| x.approx_eq(&a, 1e-12)));
        assert!(axes.iter().any(|x| x.approx_eq(&b, 1e-12)));
        assert!(!a.approx_eq(&b, 1e-6));
        let (d1, d2) = h.asymptote_directions().unwrap();
        let m = h.matrix();
        assert!(m.quad_form(d1).abs() < 1e-15);
        assert!(m.quad_form(d2).abs() < 1e-15);
        assert!((m.bilinear(d1, d2) - 0.5).abs() < 1e-15);

        let h2 = Conic::from_coefficients([1.0, 0.0, -1.0, 0.0, 0.0, -1.0])
            .unwrap()
            .to_central()
            .unwrap();
        let (a, b) = h2.asymptotes().unwrap();
        let diag = [line(1.0, -1.0, 0.0), line(1.0, 1.0, 0.0)];
        assert!(diag.iter().any(|x| x.approx_eq(&a, 1e-12)));
        assert!(diag.iter().any(|x| x.approx_eq(&b, 1e-12)));

        let circle = unit_circle().to_central().unwrap();
        assert_eq!(
            circle.asymptotes(),
            Err(ConicError::NotHyperbola(ConicClass::Ellipse))
        );
    }

    #[test]
    fn tangency_examples() {
        let circle = unit_circle().to_central().unwrap();
        assert!(circle.is_tangent(&line(1.0, 0.0, 1.0)));
        assert!(!circle.is_tangent(&line(1.0, 0.0, 2.0)));
        let h = xy_minus_one().to_central().unwrap();
        assert!(h.is_tangent(&line(0.0, 1.0, 0.0)));
        // chord form through p = (1,0), q = (1,1): (p x q)^2 = |p - q|^2
        let (p, q) = (Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0));
        assert_eq!(p.cross(q).powi(2), (p - q).norm_sq());
        assert!(circle.is_tangent(&Line::through(p, q).unwrap()));
    }

    #[test]
    fn tangency_point_examples() {
        let circle = unit_circle().to_central().unwrap();
        assert_eq!(circle.tangency_point(&line(1.0, 0.0, 1.0)).unwrap(), Vec2::new(1.0, 0.0));
        assert_eq!(circle.tangency_point(&line(0.0, 1.0, 1.0)).unwrap(), Vec2::new(0.0, 1.0));
        assert_eq!(
            circle.tangency_point(&line(0.0, 1.0, 2.0)),
            Err(ConicError::NotTangent)
        );
        let h = xy_minus_one().to_central().unwrap();
        assert_eq!(
            h.tangency_point(&line(0.0, 1.0, 0.0)),
            Err(ConicError::AsymptoteHasNoTangencyPoint)
        );
    }

    #[test]
    fn translated_circle() {
        let phi = AffineMap::translation(Vec2::new(3.0, -2.0));
        let moved = unit_circle().apply_affine(&phi);
        let expect = Conic::from_coefficients([1.0, 0.0, 1.0, -6.0, 4.0, 12.0]).unwrap();
        assert!(moved.same_locus(&expect, 1e-15));
        assert_eq!(moved.centers(), CenterSet::Unique(Vec2::new(3.0, -2.0)));
        assert!(unit_circle()
            .apply_affine(&AffineMap::IDENTITY)
            .same_locus(&unit_circle(), 0.0));
    }

    #[test]
    fn central_affine_matches_general_affine() {
        let phi = AffineMap::new(Mat2::new(1.3, -0.4, 0.9, 2.1), Vec2::new(-1.0, 0.5)).unwrap();
        let k = CentralConic::new(Vec2::new(0.3, -0.7), SymMat2::new(0.8, 0.6, -0.5)).unwrap();
        let a = k.apply_affine(&phi).to_conic();
        let b = k.to_conic().apply_affine(&phi);
        assert!(a.same_locus(&b, 1e-13));
        let mapped = k.apply_affine(&phi);
        let prod = mapped.matrix().mul_vec(mapped.inverse_matrix().mul_vec(Vec2::new(1.0, 0.0)));
        assert!((prod - Vec2::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn area_examples() {
        let circle = unit_circle().to_central().unwrap();
        assert!((circle.area().unwrap() - std::f64::consts::PI).abs() < 1e-15);
        let e = CentralConic::new(Vec2::ZERO, SymMat2::diag(0.25, 1.0)).unwrap();
        assert!((e.area().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-15);
        let h = xy_minus_one().to_central().unwrap();
        assert!(matches!(h.area(), Err(ConicError::NotAnEllipse(_))));
    }

    #[test]
    fn central_constructor_rejects_empty_and_singular() {
        assert_eq!(
            CentralConic::new(Vec2::ZERO, SymMat2::diag(-1.0, -2.0)),
            Err(ConicError::EmptyLocus)
        );
        assert_eq!(
            CentralConic::new(Vec2::ZERO, SymMat2::diag(1.0, 0.0)),
            Err(ConicError::NotCentral)
        );
    }
}
