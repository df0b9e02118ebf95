//! Uncertainty-region partitions, the expected-width objective, the
//! boundary optimizer and entropy bounds.

mod bounds;
mod cells;
mod optimize;

pub use bounds::{bounds, BoundsReport, Regime, MAX_UNCONSTRAINED_SLOTS};
pub use cells::{expected_width, BoundaryVector, Cell, Partition};
pub use optimize::{
    brute_force_boundaries, optimize_boundaries, BoundaryMode, BoundarySolution, BRUTE_FORCE_LIMIT,
    DEFAULT_GRID_POINTS,
};
