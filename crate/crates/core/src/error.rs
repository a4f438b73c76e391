use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point is off the anti-de Sitter quadric (Re(q·q̄) = {value})")]
    OffQuadric { value: f64 },

    #[error("vector `{which}` is not tangent at the base point (inner product {residual:e})")]
    NotTangent { which: &'static str, residual: f64 },

    #[error("axis is not pure imaginary (real part {re:e})")]
    NotPureImaginary { re: f64 },

    #[error("axis is not normalized: ⟨ρ,ρ⟩ = {norm_sq}")]
    UnnormalizedAxis { norm_sq: f64 },

    #[error("axis is zero")]
    ZeroAxis,

    #[error("invalid front: {0}")]
    InvalidFront(String),

    #[error("geodesic curvature covers all of RP¹; no continuous branch of the angle exists")]
    BranchFailure,

    #[error("front does not close over the requested period (frame defect {defect:e})")]
    NotClosable { defect: f64 },

    #[error("fronts are not admissible: {reason} ({} offending pairs)", offending.len())]
    NotAdmissible { reason: String, offending: Vec<(f64, f64)> },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("curve violates ⟨c', c·j⟩ = 0 (residual {residual:e} at s = {at})")]
    NotAsymptoticCompatible { residual: f64, at: f64 },

    #[error("curve is not regular at s = {at}")]
    Singular { at: f64 },

    #[error("sin(ω1 + ω2) ≤ 0 at {count} grid nodes, first at (u, v) = ({u}, {v})")]
    SinePositivity { count: usize, u: f64, v: f64 },

    #[error("point (u, v) = ({u}, {v}) is within {needed} of the patch boundary")]
    BoundaryProximity { u: f64, v: f64, needed: f64 },

    #[error("parameter {at} is outside the sampled domain [{start}, {end}]")]
    OutOfDomain { at: f64, start: f64, end: f64 },

    #[error("coordinate chart is path dependent (defect {defect:e})")]
    PathDependent { defect: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid curve specification: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
