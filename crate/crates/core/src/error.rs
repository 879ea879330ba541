use thiserror::Error;

/// Failures of geometric constructions and predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points coincide; the joining line is undefined")]
    CoincidentPoints,
    #[error("lines coincide; the meeting point is undefined")]
    CoincidentLines,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("lines are not concurrent")]
    NotConcurrent,
    #[error("too few distinct elements: cross-ratio is undefined")]
    TooFewDistinct,
    #[error("point at infinity where a finite point is required")]
    PointAtInfinity,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfig(String),
    #[error("undefined foot: {0}")]
    UndefinedFoot(String),
    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),
    #[error("pencils share a line")]
    SharedLine,
    #[error("pencils do not contain the joining line of their vertices")]
    SharedLineMissing,
    #[error("pencil vertices coincide")]
    CoincidentVertices,
    #[error("degenerate hexagon {0}")]
    DegenerateHexagon(usize),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("degenerate angle at vertex")]
    DegenerateAngle,
    #[error("degenerate reduction step {step} at index {index}: {reason}")]
    DegenerateStep {
        /// 0-based position in the reduction sequence.
        step: usize,
        /// 1-based polygon index chosen at that step.
        index: usize,
        reason: String,
        /// Indices successfully applied before the failure.
        prefix: Vec<usize>,
    },
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
