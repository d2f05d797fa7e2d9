//! Conics tangent to, and passing through, a quadrilateral.
//!
//! The centers of conics tangent to the four extended sides of a quadrilateral
//! lie on its Newton line; the centers of conics through its four vertices
//! lie on its nine-point conic. This crate computes both loci, builds an
//! explicit conic for every admissible center, finds the largest inscribed
//! ellipse and checks all of it by seeded random sampling.

pub mod conic;
pub mod error;
pub mod geom;
pub mod maxellipse;
pub mod newton;
pub mod ninepoint;
pub mod quad;
pub mod sample;
pub mod tol;
pub mod verify;

pub use conic::{CenterSet, CentralConic, Conic, ConicClass};
pub use error::{ConicError, GeomError, MaxEllipseError, NewtonError, NinePointError, QuadError, SingularPoint};
pub use geom::{AffineMap, Line, Mat2, SymMat2, Vec2};
pub use maxellipse::{max_inscribed_ellipse, InscribedSolution};
pub use newton::{build_family, FamilyKind, TangentFamily};
pub use ninepoint::{build_ninepoint, NinePointConic, Pencil};
pub use quad::{validate, Quad, QuadShape};
