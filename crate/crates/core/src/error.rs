use thiserror::Error;

/// Errors produced by the design library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input to {0}")]
    NonFinite(&'static str),

    #[error("correlation {0} lies outside [-1, 1]")]
    CorrelationOutOfRange(f64),

    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("degenerate correlation |rho| = 1; the choice set must be collapsed first")]
    DegenerateCorrelation,

    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    #[error("invalid choice set: {0}")]
    InvalidChoiceSet(String),

    #[error("level {level} outside 1..={levels}")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("alternatives {0} and {1} have a utility difference with zero variance")]
    DegeneratePair(usize, usize),

    #[error("preference probability at the boundary of [0, 1]; information is unbounded")]
    InfiniteInformation,

    #[error("quantitative coefficient beta2 is zero; no finite optimum exists")]
    NoFiniteOptimum,

    #[error("infeasible comparison depth {0}")]
    InfeasibleDepth(String),

    #[error("optimality refuted: max psi = {max:.3e} at z = {at:.6}")]
    OptimalityRefuted { max: f64, at: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
