use std::collections::HashMap;
use std::fmt;

use crate::angular::{canonical_angle, region, Arc, ANGLE_EPS, TAU};
use crate::error::{Error, Result};
use crate::partition::{Cell, Partition, Regime};

/// Most beams a codebook may hold; signatures are packed into a `u64`.
pub const MAX_BEAMS: usize = 64;

/// Angular coverage region of one probing beam.
#[derive(Debug, Clone, PartialEq)]
pub struct Beam {
    acr: Vec<Arc>,
}

impl Beam {
    pub fn new<I: IntoIterator<Item = Arc>>(arcs: I) -> Result<Self> {
        let acr = region::canonicalize(arcs);
        if acr.is_empty() {
            return Err(Error::InvalidBeam("empty coverage region".into()));
        }
        Ok(Beam { acr })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.acr
    }

    pub fn width(&self) -> f64 {
        region::total_width(&self.acr)
    }

    /// True when the coverage runs through the origin, i.e. it is stored as
    /// `(0, e]` plus `(s, 2pi]`.
    pub fn wraps(&self) -> bool {
        self.acr.len() >= 2
            && self.acr[0].start() <= ANGLE_EPS
            && self.acr[self.acr.len() - 1].end() >= TAU - ANGLE_EPS
    }

    /// One arc on the circle, possibly wrapping.
    pub fn is_contiguous(&self) -> bool {
        self.acr.len() == 1 || (self.acr.len() == 2 && self.wraps())
    }

    pub fn contains(&self, theta: f64) -> bool {
        let t = canonical_angle(theta);
        // arcs are sorted and disjoint: only the first arc ending at or after t can hold it
        let i = self.acr.partition_point(|a| a.end() < t);
        i < self.acr.len() && self.acr[i].start() < t
    }

    /// Start and width of the logical arc of a contiguous beam.
    pub fn logical_arc(&self) -> Option<(f64, f64)> {
        match self.acr.as_slice() {
            [a] => Some((a.start(), a.width())),
            [first, last] if self.wraps() => Some((last.start(), last.width() + first.width())),
            _ => None,
        }
    }
}

/// ACK/NACK pattern a user reports after the probing phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FeedbackSignature {
    acks: Vec<bool>,
}

impl FeedbackSignature {
    pub fn new(acks: Vec<bool>) -> Self {
        FeedbackSignature { acks }
    }

    pub fn acks(&self) -> &[bool] {
        &self.acks
    }

    pub fn len(&self) -> usize {
        self.acks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acks.is_empty()
    }

    /// Bit `i` set iff beam `i` was acknowledged.
    pub fn key(&self) -> u64 {
        self.acks
            .iter()
            .enumerate()
            .fold(0, |k, (i, &a)| if a { k | (1 << i) } else { k })
    }

    pub fn from_key(key: u64, len: usize) -> Self {
        FeedbackSignature {
            acks: (0..len).map(|i| key >> i & 1 == 1).collect(),
        }
    }
}

impl fmt::Display for FeedbackSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.acks {
            f.write_str(if a { "A" } else { "N" })?;
        }
        Ok(())
    }
}

/// An ordered set of probing beams.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    beams: Vec<Beam>,
    constraint: Regime,
}

impl Codebook {
    pub fn new(beams: Vec<Beam>, constraint: Regime) -> Result<Self> {
        if beams.is_empty() || beams.len() > MAX_BEAMS {
            return Err(Error::InvalidSlots {
                b: beams.len(),
                max: MAX_BEAMS,
            });
        }
        if constraint == Regime::Contiguous {
            if let Some(i) = beams.iter().position(|b| !b.is_contiguous()) {
                return Err(Error::InvalidBeam(format!("beam {i} is not contiguous")));
            }
        }
        Ok(Codebook { beams, constraint })
    }

    pub fn beams(&self) -> &[Beam] {
        &self.beams
    }

    /// Number of probing slots `b`.
    pub fn len(&self) -> usize {
        self.beams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beams.is_empty()
    }

    pub fn constraint(&self) -> Regime {
        self.constraint
    }

    pub fn signature(&self, aod: f64) -> FeedbackSignature {
        FeedbackSignature::new(self.beams.iter().map(|b| b.contains(aod)).collect())
    }

    /// Packed signature; same as `signature(aod).key()` without allocating.
    pub fn signature_key(&self, aod: f64) -> u64 {
        self.beams
            .iter()
            .enumerate()
            .fold(0, |k, (i, b)| if b.contains(aod) { k | (1 << i) } else { k })
    }

    /// Partition of the circle into uncertainty regions. Each cell's id is
    /// the packed signature of the angles it contains; cells are ordered by
    /// their first appearance counterclockwise from the origin.
    pub fn induced_partition(&self) -> Partition {
        let mut cuts: Vec<f64> = vec![0.0, TAU];
        for b in &self.beams {
            for a in b.arcs() {
                cuts.push(a.start());
                cuts.push(a.end());
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|b, a| *b - *a <= ANGLE_EPS);
        if let Some(last) = cuts.last_mut() {
            *last = TAU;
        }
        let mut order: Vec<u64> = Vec::new();
        let mut regions: HashMap<u64, Vec<Arc>> = HashMap::new();
        for w in cuts.windows(2) {
            if w[1] - w[0] <= ANGLE_EPS {
                continue;
            }
            let arc = Arc::raw(w[0], w[1]);
            let key = self.signature_key(arc.midpoint());
            regions
                .entry(key)
                .or_insert_with(|| {
                    order.push(key);
                    Vec::new()
                })
                .push(arc);
        }
        let cells = order
            .into_iter()
            .map(|id| Cell {
                id,
                region: regions.remove(&id).unwrap_or_default(),
            })
            .collect();
        Partition::new(cells).expect("elementary arcs tile the circle")
    }
}

/// ACK/NACK vector of a user whose angle of departure is `aod`.
pub fn feedback_signature(codebook: &Codebook, aod: f64) -> FeedbackSignature {
    codebook.signature(aod)
}

pub fn induced_partition(codebook: &Codebook) -> Partition {
    codebook.induced_partition()
}
