use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("instance is infeasible: point {point} is not covered by any set")]
    InfeasibleInstance { point: usize },
    #[error("no feasible cover exists")]
    Infeasible,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("weight of set {id} is not positive ({weight})")]
    NonPositiveWeight { id: usize, weight: f64 },
    #[error("metric mismatch: expected {expected}, found {found}")]
    MetricMismatch { expected: String, found: String },
    #[error("unit-disk instance has mixed radii")]
    MixedRadii,
    #[error("half-plane {0} is not a lower half-plane")]
    NotLower(usize),
    #[error("merge precondition violated: left keys overlap right keys")]
    KeyOverlap,
    #[error("entries {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("exhaustive search limited to 24 sets, got {0}")]
    TooLarge(usize),
    #[error("instance generation failed after {0} attempts")]
    GenerationFailure(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
