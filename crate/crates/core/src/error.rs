use thiserror::Error;

/// Errors surfaced by the planning library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("halton index must be >= 1 (index 0 maps every base to the origin)")]
    HaltonIndexZero,

    #[error("dimension must be >= 1, got {0}")]
    BadDimension(usize),

    #[error("dispersion measurement only supports d <= 3, got d={0}")]
    DispersionDimension(usize),

    #[error("suboptimality factor requires r > 2*dispersion, got r={r} with 2D={two_d}")]
    RadiusBelowDispersion { r: f64, two_d: f64 },

    #[error("obstacle coverage target {0} exceeds the 0.9 guardrail")]
    CoverageTooHigh(f64),

    #[error(
        "scenario generation failed: obstacle {index} could not be placed after {attempts} \
         attempts without covering start/goal or overshooting the coverage target"
    )]
    ObstaclePlacement { index: usize, attempts: usize },

    #[error("configuration has {got} coordinates but the space has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {value} at axis {axis} is outside the unit cube")]
    OutOfUnitCube { axis: usize, value: f64 },

    #[error("contradictory evidence for configuration {0:?}: stored and new results differ")]
    ContradictoryEvidence(Vec<f64>),

    #[error("schedule target must satisfy n >= 2, got {0}")]
    ScheduleTooSmall(usize),

    #[error("alpha step must lie in (0, 1], got {0}")]
    BadAlphaStep(f64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
