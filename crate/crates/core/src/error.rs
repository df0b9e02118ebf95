use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid arc ({start}, {end}]: need 0 <= start < end <= 2pi")]
    InvalidArc { start: f64, end: f64 },

    #[error("invalid density on piece {index}: {density}")]
    InvalidDensity { index: usize, density: f64 },

    #[error("pdf pieces do not tile (0, 2pi]: {0}")]
    PdfSupport(String),

    #[error("pdf integrates to {total}, expected 1")]
    NotNormalized { total: f64 },

    #[error("mixture needs equally many pdfs and weights (got {pdfs} pdfs, {weights} weights)")]
    LengthMismatch { pdfs: usize, weights: usize },

    #[error("mixture of zero components")]
    EmptyMixture,

    #[error("weights must be nonnegative and sum to 1 (sum = {sum})")]
    WeightSum { sum: f64 },

    #[error("region arcs overlap near {at}")]
    OverlappingRegion { at: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid boundary vector: {0}")]
    InvalidBoundaries(String),

    #[error("expected {expected} boundaries, found {found}")]
    BoundaryCount { expected: usize, found: usize },

    #[error("{cells} cells requested but only {candidates} candidate boundaries exist")]
    TooManyCells { cells: usize, candidates: usize },

    #[error("grid of {grid_points} points is too coarse for {cells} cells (need at least {min})")]
    GridTooCoarse {
        grid_points: usize,
        cells: usize,
        min: usize,
    },

    #[error("linear boundary optimization requires a non-increasing pdf")]
    NotMonotone,

    #[error("brute force over {combinations} boundary sets exceeds the limit of {limit}")]
    Infeasible { combinations: u128, limit: u128 },

    #[error("partition has {cells} cells but {bits} probing slots address at most 2^{bits}")]
    TooManyCellsForBits { cells: usize, bits: usize },

    #[error("number of probing slots must be in 1..={max}, got {b}")]
    InvalidSlots { b: usize, max: usize },

    #[error("invalid beam: {0}")]
    InvalidBeam(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
