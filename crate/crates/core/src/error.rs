use thiserror::Error;

/// Errors raised by shape constructors, conversions, samplers and tests.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShapeError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("edge matrix columns do not sum to zero (residual {0:e})")]
    InvalidEdgeMatrix(f64),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("matrix does not have unit Frobenius norm (norm² = {0})")]
    NotUnitNorm(f64),
    #[error("point lies outside the radius-1/2 disk (r = {0})")]
    OutsideDisk(f64),
    #[error("squared sides violate the triangle inequality (a⁴+b⁴+c⁴ = {0})")]
    NotATriangle(f64),
    #[error("quaternion is not unit length (norm² = {0})")]
    InvalidQuaternion(f64),
    #[error("area {area} is outside the range for {kind} triangles")]
    InvalidAreaForKind { kind: &'static str, area: f64 },
    #[error("sample set is inconsistent: {0}")]
    InvalidSampleSet(String),
    #[error("sample set is empty")]
    EmptySet,
    #[error("special function failed to converge: {0}")]
    NoConvergence(&'static str),
}

pub type Result<T, E = ShapeError> = std::result::Result<T, E>;
