use quadloci::{MaxEllipseError, NewtonError, NinePointError, QuadError};
use serde_json::{json, Value};
use thiserror::Error;

use crate::SCHEMA;

pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// The input is well formed but outside the hypotheses of the requested operation.
    #[error("{message}")]
    Hypothesis {
        kind: &'static str,
        message: String,
        details: Value,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Hypothesis { .. } => EXIT_HYPOTHESIS,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Hypothesis { kind, .. } => kind,
        }
    }

    /// The document written to stderr.
    pub fn to_json(&self) -> Value {
        let details = match self {
            CliError::Hypothesis { details, .. } => details.clone(),
            _ => Value::Null,
        };
        json!({
            "schema": SCHEMA,
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "details": details,
            }
        })
    }

    fn hypothesis(kind: &'static str, message: impl ToString, details: Value) -> Self {
        CliError::Hypothesis { kind, message: message.to_string(), details }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::NonFinite => CliError::Usage(e.to_string()),
            QuadError::DuplicateVertex(a, b) => {
                CliError::hypothesis("duplicate_vertex", &e, json!({ "vertices": [a, b] }))
            }
            QuadError::ThreePointsOnLine(t) => {
                CliError::hypothesis("three_points_on_line", &e, json!({ "vertices": t }))
            }
        }
    }
}

impl From<NewtonError> for CliError {
    fn from(e: NewtonError) -> Self {
        match &e {
            NewtonError::ParallelogramHasNoNewtonLine => {
                CliError::hypothesis("parallelogram", &e, Value::Null)
            }
            NewtonError::SingularParameter { point, t } => CliError::hypothesis(
                "singular_parameter",
                &e,
                json!({ "point": point.to_string(), "t": t }),
            ),
            NewtonError::NotOnNewtonLine { distance } => {
                CliError::hypothesis("not_on_newton_line", &e, json!({ "distance": distance }))
            }
            NewtonError::Quad(q) => q.clone().into(),
            NewtonError::Conic(_) => CliError::hypothesis("degenerate_conic", &e, Value::Null),
        }
    }
}

impl From<NinePointError> for CliError {
    fn from(e: NinePointError) -> Self {
        match &e {
            NinePointError::TrapezoidExcluded => CliError::hypothesis("trapezoid", &e, Value::Null),
            NinePointError::ParallelDiagonals => {
                CliError::hypothesis("parallel_diagonals", &e, Value::Null)
            }
            NinePointError::NotOnNinePointConic { residual } => CliError::hypothesis(
                "not_on_nine_point_conic",
                &e,
                json!({ "residual": residual }),
            ),
            NinePointError::Quad(q) => q.clone().into(),
            NinePointError::Conic(_) => CliError::hypothesis("degenerate_conic", &e, Value::Null),
        }
    }
}

impl From<MaxEllipseError> for CliError {
    fn from(e: MaxEllipseError) -> Self {
        match e {
            MaxEllipseError::Newton(n) => n.into(),
            MaxEllipseError::NotStrictlyConvex => {
                CliError::hypothesis("not_strictly_convex", &e, Value::Null)
            }
            MaxEllipseError::Parallelogram => CliError::hypothesis("parallelogram", &e, Value::Null),
            MaxEllipseError::NoInscribedEllipse => {
                CliError::hypothesis("no_inscribed_ellipse", &e, Value::Null)
            }
            MaxEllipseError::Conic(_) => CliError::hypothesis("degenerate_conic", &e, Value::Null),
        }
    }
}
