use serde::Serialize;
use thiserror::Error;

use crate::conic::ConicClass;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("matrix is singular (det = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("points coincide; no line through them")]
    CoincidentPoints,
    #[error("line normal must be a finite nonzero vector")]
    DegenerateNormal,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConicError {
    #[error("quadratic part vanishes; not a conic")]
    NotQuadratic,
    #[error("conic has no unique center")]
    NotCentral,
    #[error("conic contains its center (degenerate)")]
    DegenerateConic,
    #[error("conic has an empty real locus")]
    EmptyLocus,
    #[error("expected a hyperbola, found {0:?}")]
    NotHyperbola(ConicClass),
    #[error("expected an ellipse, found {0:?}")]
    NotAnEllipse(ConicClass),
    #[error("line is not tangent to the conic")]
    NotTangent,
    #[error("asymptote touches the conic only at infinity")]
    AsymptoteHasNoTangencyPoint,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("vertices {0:?} lie on a line")]
    ThreePointsOnLine([usize; 3]),
    #[error("vertex coordinates must be finite")]
    NonFinite,
}

/// One of the three excluded points on the Newton line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularPoint {
    /// Midpoint of the q2-q4 diagonal.
    Mu,
    /// Midpoint of the q1-q3 diagonal.
    Nu,
    /// Third diagonal midpoint.
    Tau,
}

impl std::fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SingularPoint::Mu => "mu",
            SingularPoint::Nu => "nu",
            SingularPoint::Tau => "tau",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NewtonError {
    #[error("a parallelogram has no Newton line")]
    ParallelogramHasNoNewtonLine,
    #[error("parameter t = {t} gives a center at {point}, where no tangent conic exists")]
    SingularParameter { point: SingularPoint, t: f64 },
    #[error("point is {distance:e} away from the Newton line")]
    NotOnNewtonLine { distance: f64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Conic(#[from] ConicError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NinePointError {
    #[error("quadrilateral is a trapezoid")]
    TrapezoidExcluded,
    #[error("diagonals of the quadrilateral are parallel")]
    ParallelDiagonals,
    #[error("point is off the nine-point conic (relative residual {residual:e})")]
    NotOnNinePointConic { residual: f64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Conic(#[from] ConicError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaxEllipseError {
    #[error("quadrilateral is not strictly convex")]
    NotStrictlyConvex,
    #[error("quadrilateral is a parallelogram")]
    Parallelogram,
    #[error("no parameter in (0, 1) yields an inscribed ellipse")]
    NoInscribedEllipse,
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Conic(#[from] ConicError),
}
