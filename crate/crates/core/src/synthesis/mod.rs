//! Scanning-beam codebooks: feedback signatures, induced uncertainty
//! regions, fixed constructions and optimal designs.

mod codebook;
mod construct;
mod design;

pub use codebook::{feedback_signature, induced_partition, Beam, Codebook, FeedbackSignature, MAX_BEAMS};
pub use construct::{
    contiguous_codebook_from_boundaries, es_codebook, halving_codebook,
    unconstrained_codebook_from_partition, uniform_contiguous_codebook, MAX_HALVING_SLOTS,
};
pub use design::{design, design_contiguous, design_unconstrained, Design};
