//! Default tolerances. Every predicate scales these by operand magnitude.

/// Geometric predicates: parallelism, collinearity, incidence.
pub const GEOMETRIC: f64 = 1e-9;

/// Algebraic identities.
pub const ALGEBRAIC: f64 = 1e-12;

/// `|det| <= SINGULAR * max(1, |A|_F^2)` marks a matrix singular.
pub const SINGULAR: f64 = 1e-12;

/// Family parameters closer than this to a root of the determinant are refused.
pub const SINGULAR_PARAM_GUARD: f64 = 1e-7;
