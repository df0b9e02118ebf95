//! Design and evaluation of non-interactive beam-alignment codebooks.
//!
//! A base station probes `b` beams, each user reports which probes it heard,
//! and the base station narrows every user's angle of departure to the
//! uncertainty region matching that ACK/NACK pattern. This crate chooses
//! the beams that minimize the users' weighted expected region width.
//!
//! - [`angular`]: piecewise-constant densities on the circle.
//! - [`partition`]: uncertainty-region partitions, the boundary optimizer
//!   and entropy bounds.
//! - [`synthesis`]: codebooks, signatures and designs.
//! - [`simulate`]: scenarios, analytic evaluation and Monte Carlo.

pub mod angular;
pub mod error;
pub mod partition;
pub mod simulate;
pub mod synthesis;

pub use error::{Error, Result};
