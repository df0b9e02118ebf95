//! End-to-end codebook design for a prior on the angle of departure.

use super::codebook::Codebook;
use super::construct::{contiguous_codebook_from_boundaries, unconstrained_codebook_from_partition};
use crate::angular::{AngularPdf, RearrangementMap};
use crate::error::{Error, Result};
use crate::partition::{
    optimize_boundaries, BoundaryMode, BoundaryVector, Partition, Regime, MAX_UNCONSTRAINED_SLOTS,
};

/// A designed codebook plus the optimizer output it was built from.
#[derive(Debug, Clone)]
pub struct Design {
    pub codebook: Codebook,
    /// Optimizer objective on the candidate grid, in radians.
    pub objective: f64,
    /// Boundaries in rearranged coordinates (unconstrained) or original
    /// coordinates (contiguous).
    pub boundaries: BoundaryVector,
    pub map: RearrangementMap,
}

/// `2^b` cells: rearrange the prior to a non-increasing density, place the
/// boundaries there, then map the cells back and assign them binary codes.
pub fn design_unconstrained(pdf: &AngularPdf, b: usize, grid_points: usize) -> Result<Design> {
    if b == 0 || b > MAX_UNCONSTRAINED_SLOTS {
        return Err(Error::InvalidSlots {
            b,
            max: MAX_UNCONSTRAINED_SLOTS,
        });
    }
    let (mono, map) = pdf.monotone_rearrangement();
    let sol = optimize_boundaries(&mono, 1 << b, BoundaryMode::Linear, grid_points)?;
    let partition = Partition::from_boundaries(&sol.boundaries);
    let codebook = unconstrained_codebook_from_partition(&partition, &map, b)?;
    Ok(Design {
        codebook,
        objective: sol.objective,
        boundaries: sol.boundaries,
        map,
    })
}

/// `2b` contiguous cells on the original circle; beam `i` spans
/// `(x_i, x_{i+b}]`.
pub fn design_contiguous(pdf: &AngularPdf, b: usize, grid_points: usize) -> Result<Design> {
    if b == 0 {
        return Err(Error::InvalidSlots { b, max: usize::MAX });
    }
    let sol = optimize_boundaries(pdf, 2 * b, BoundaryMode::Circular, grid_points)?;
    let codebook = contiguous_codebook_from_boundaries(&sol.boundaries, b)?;
    Ok(Design {
        codebook,
        objective: sol.objective,
        boundaries: sol.boundaries,
        map: RearrangementMap::identity(),
    })
}

pub fn design(pdf: &AngularPdf, b: usize, regime: Regime, grid_points: usize) -> Result<Design> {
    match regime {
        Regime::Unconstrained => design_unconstrained(pdf, b, grid_points),
        Regime::Contiguous => design_contiguous(pdf, b, grid_points),
    }
}
