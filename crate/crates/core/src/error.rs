use thiserror::Error;

use crate::fan::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("linear system is singular")]
    SingularSystem,
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("vector {0} is not primitive")]
    NotPrimitive(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid fan: {}", format_diagnostics(.0))]
    InvalidFan(Vec<Diagnostic>),
    #[error("fan is not complete: {0}")]
    NonCompleteFan(String),
    #[error("fan is not smooth: cone {0} is singular")]
    NotSmooth(usize),
    #[error("ray {0} is not in the support of the fan")]
    RayOutsideSupport(String),
    #[error("ray {0} is already a ray of the fan")]
    DuplicateRay(String),
    #[error("ray set {0:?} does not span a cone of the fan")]
    NotACone(Vec<usize>),
    #[error("divisor is not Cartier: cone {0} has a non-integral covector")]
    NotCartier(usize),
    #[error("divisor is not nef")]
    NotNef,
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("lattice map is not compatible with the fans: source cone {0} has no target cone")]
    IncompatibleMap(usize),
    #[error("divisor lives on a different fan")]
    FanMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
