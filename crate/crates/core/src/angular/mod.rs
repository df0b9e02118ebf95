//! Angular probability densities on the circle: arcs, piecewise-constant
//! pdfs, mixtures and the monotone rearrangement.

mod arc;
mod pdf;
mod rearrange;

pub use arc::{canonical_angle, region, Arc, ANGLE_EPS, TAU};
pub use pdf::{AngularPdf, Piece, DEFAULT_TOLERANCE};
pub use rearrange::{RearrangementMap, Segment};

use crate::error::Result;

/// Weighted mixture of per-user densities.
pub fn mixture(pdfs: &[AngularPdf], weights: &[f64]) -> Result<AngularPdf> {
    AngularPdf::mixture(pdfs, weights)
}
