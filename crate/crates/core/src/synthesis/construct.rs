use std::f64::consts::PI;

use super::codebook::{Beam, Codebook, MAX_BEAMS};
use crate::angular::{Arc, RearrangementMap, TAU};
use crate::error::{Error, Result};
use crate::partition::{BoundaryVector, Partition, Regime};

/// Beam `i >= 3` of the halving construction has `2^(i-2)` arcs.
pub const MAX_HALVING_SLOTS: usize = 24;

fn check_slots(b: usize, max: usize) -> Result<()> {
    if b == 0 || b > max {
        return Err(Error::InvalidSlots { b, max });
    }
    Ok(())
}

/// Width-pi beams that split every cell in half: `(0, pi]`,
/// `(pi/2, 3pi/2]`, then for `i >= 3` the arcs
/// `(pi/2^(i-1), 3pi/2^(i-1)] + j pi/2^(i-3)`, `j < 2^(i-2)`.
pub fn halving_codebook(b: usize) -> Result<Codebook> {
    check_slots(b, MAX_HALVING_SLOTS)?;
    let mut beams = Vec::with_capacity(b);
    for i in 1..=b {
        let arcs: Vec<Arc> = match i {
            1 => vec![Arc::raw(0.0, PI)],
            2 => vec![Arc::raw(PI / 2.0, 1.5 * PI)],
            _ => {
                let lo = PI / (1u64 << (i - 1)) as f64;
                let hi = 3.0 * lo;
                let shift = PI / (1u64 << (i - 3)) as f64;
                (0..1u64 << (i - 2))
                    .map(|j| Arc::raw(lo + j as f64 * shift, hi + j as f64 * shift))
                    .collect()
            }
        };
        beams.push(Beam::new(arcs)?);
    }
    Codebook::new(beams, Regime::Unconstrained)
}

/// Exhaustive-search sectors `((i-1) 2pi/(b+1), i 2pi/(b+1)]`; the last
/// sector is left unprobed.
pub fn es_codebook(b: usize) -> Result<Codebook> {
    check_slots(b, MAX_BEAMS)?;
    let w = TAU / (b + 1) as f64;
    let beams = (0..b)
        .map(|i| Beam::new([Arc::raw(i as f64 * w, (i + 1) as f64 * w)]))
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(beams, Regime::Contiguous)
}

/// Half-circle beams rotated in steps of `pi/b`.
pub fn uniform_contiguous_codebook(b: usize) -> Result<Codebook> {
    check_slots(b, MAX_BEAMS)?;
    let beams = (0..b)
        .map(|i| Beam::new(Arc::span(i as f64 * PI / b as f64, PI)?))
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(beams, Regime::Contiguous)
}

/// Beams for a partition given in rearranged coordinates. Cell `k`
/// (1-based, in list order) is probed by beam `i` iff bit `i-1` of `k-1`
/// is zero, so every cell gets a distinct signature; each beam is mapped
/// back through `map`.
pub fn unconstrained_codebook_from_partition(
    partition: &Partition,
    map: &RearrangementMap,
    b: usize,
) -> Result<Codebook> {
    check_slots(b, MAX_BEAMS - 1)?;
    let m = partition.len();
    if m as u128 > 1u128 << b {
        return Err(Error::TooManyCellsForBits { cells: m, bits: b });
    }
    let preimages: Vec<Vec<Arc>> = partition
        .cells()
        .iter()
        .map(|c| map.inverse_image(&c.region))
        .collect();
    let beams = (0..b)
        .map(|i| {
            let arcs = preimages
                .iter()
                .enumerate()
                .filter(|(k, _)| (k >> i) & 1 == 0)
                .flat_map(|(_, r)| r.iter().copied());
            Beam::new(arcs)
        })
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(beams, Regime::Unconstrained)
}

/// Contiguous beams `(x_i, x_{i+b}]` from `2b` boundary points.
pub fn contiguous_codebook_from_boundaries(boundaries: &BoundaryVector, b: usize) -> Result<Codebook> {
    check_slots(b, MAX_BEAMS)?;
    if boundaries.len() != 2 * b {
        return Err(Error::BoundaryCount {
            expected: 2 * b,
            found: boundaries.len(),
        });
    }
    let x = boundaries.points();
    let beams = (0..b)
        .map(|i| Beam::new(Arc::span(x[i], x[i + b] - x[i])?))
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(beams, Regime::Contiguous)
}
