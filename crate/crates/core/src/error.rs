use alloc::string::String;

use crate::lp::LpStatus;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("time series is empty")]
    EmptySeries,
    #[error("at least {required} time samples are required, got {samples}")]
    TooFewSamples { samples: usize, required: usize },
    #[error("missing value for ({alternative}, {criterion}, t={t})")]
    MissingCell {
        alternative: String,
        criterion: String,
        t: usize,
    },
    #[error("duplicate value for ({alternative}, {criterion}, t={t})")]
    DuplicateCell {
        alternative: String,
        criterion: String,
        t: usize,
    },
    #[error("time index must be a 1-based integer, got {0}")]
    InvalidTimeIndex(usize),
    #[error("value for ({alternative}, {criterion}, t={t}) is not a finite number")]
    NonFiniteValue {
        alternative: String,
        criterion: String,
        t: usize,
    },
    #[error("tensor has no {0}")]
    EmptyTensor(&'static str),
    #[error("duplicate {kind} identifier `{id}`")]
    DuplicateIdentifier { kind: &'static str, id: String },
    #[error("unknown descriptive measure `{0}`")]
    UnknownMeasure(String),
    #[error("at least one descriptive measure is required")]
    NoMeasures,
    #[error("unknown criterion `{0}`")]
    UnknownCriterion(String),
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
    #[error("degenerate scale for measure `{measure}`, criterion `{criterion}`: fewer than two distinct values")]
    DegenerateScale { measure: String, criterion: String },
    #[error("scale needs at least two distinct values")]
    DegenerateValues,
    #[error("equal-interval scales need at least 2 breakpoints, got {0}")]
    InvalidGradeCount(usize),
    #[error("breakpoints must be finite and strictly increasing")]
    InvalidBreakpoints,
    #[error("value {x} lies outside the scale [{low}, {high}]")]
    OutOfRange { x: f64, low: f64, high: f64 },
    #[error("index {index} out of bounds for {what} of length {len}")]
    IndexOutOfBounds {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("unknown LP variable `{0}`")]
    UnknownVariable(String),
    #[error("non-finite coefficient in {0}")]
    NonFiniteCoefficient(&'static str),

    #[error("ranking must contain at least two alternatives")]
    RankingTooShort,
    #[error("alternative `{0}` appears more than once in the ranking")]
    RepeatedInRanking(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{variant} works on a single static measure, got {measures}")]
    VariantNeedsSingleMeasure {
        variant: &'static str,
        measures: usize,
    },
    #[error("rankings cover different alternatives")]
    MismatchedRankings,

    #[error("linear program finished with status {status:?} ({context})")]
    Solver {
        status: LpStatus,
        context: &'static str,
    },
    #[error("simulation iteration {iteration} failed with solver status {status:?}")]
    Simulation { iteration: usize, status: LpStatus },
    #[error("ensemble has no entries")]
    EmptyEnsemble,
    #[error("iterations must be at least 1")]
    ZeroIterations,
    #[error("criteria order must be a permutation of the criteria: {0}")]
    InvalidOrder(String),
}
