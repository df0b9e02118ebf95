//! Half-open arcs `(start, end]` on the circle `(0, 2pi]` and helpers for
//! regions made of several arcs.

use crate::error::{Error, Result};

pub const TAU: f64 = std::f64::consts::TAU;

/// Endpoints closer than this are treated as the same angle.
pub const ANGLE_EPS: f64 = 1e-12;

/// Maps any angle onto `(0, 2pi]`; 0 is identified with 2pi.
pub fn canonical_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r == 0.0 {
        TAU
    } else {
        r
    }
}

/// The half-open interval `(start, end]` with `0 <= start < end <= 2pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    start: f64,
    end: f64,
}

impl Arc {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite())
            || start < -ANGLE_EPS
            || end > TAU + ANGLE_EPS
            || end - start <= 0.0
        {
            return Err(Error::InvalidArc { start, end });
        }
        Ok(Arc {
            start: start.max(0.0),
            end: end.min(TAU),
        })
    }

    /// The whole circle `(0, 2pi]`.
    pub fn full() -> Self {
        Arc { start: 0.0, end: TAU }
    }

    // Callers guarantee the bounds; used where values come from already
    // validated arcs.
    pub(crate) fn raw(start: f64, end: f64) -> Self {
        debug_assert!(start < end, "raw arc ({start}, {end}]");
        Arc {
            start: start.max(0.0),
            end: end.min(TAU),
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }

    /// Membership with the `(start, end]` convention after canonicalizing `theta`.
    pub fn contains(&self, theta: f64) -> bool {
        let t = canonical_angle(theta);
        t > self.start && t <= self.end
    }

    /// Overlap with `other`, if it is wider than [`ANGLE_EPS`].
    pub fn intersect(&self, other: &Arc) -> Option<Arc> {
        let s = self.start.max(other.start);
        let e = self.end.min(other.end);
        (e - s > ANGLE_EPS).then(|| Arc::raw(s, e))
    }

    pub fn overlap_width(&self, other: &Arc) -> f64 {
        (self.end.min(other.end) - self.start.max(other.start)).max(0.0)
    }

    /// Arcs covering the circular interval that starts at `start` and runs
    /// counterclockwise for `width` radians. Wrapping past 2pi yields two arcs.
    pub fn span(start: f64, width: f64) -> Result<Vec<Arc>> {
        if !(width > 0.0 && width <= TAU + ANGLE_EPS) || !start.is_finite() {
            return Err(Error::InvalidArc {
                start,
                end: start + width,
            });
        }
        let width = width.min(TAU);
        let mut s = start.rem_euclid(TAU);
        if TAU - s <= ANGLE_EPS {
            s = 0.0;
        }
        let e = s + width;
        if e <= TAU + ANGLE_EPS {
            Ok(vec![Arc::raw(s, e)])
        } else {
            let mut arcs = vec![Arc::raw(0.0, e - TAU), Arc::raw(s, TAU)];
            arcs.retain(|a| a.width() > ANGLE_EPS);
            Ok(arcs)
        }
    }
}

/// Operations on regions: finite unions of arcs, stored as slices of [`Arc`].
pub mod region {
    use super::{Arc, ANGLE_EPS, TAU};
    use crate::error::{Error, Result};

    /// Sorts, merges touching or overlapping arcs and drops slivers.
    pub fn canonicalize<I: IntoIterator<Item = Arc>>(arcs: I) -> Vec<Arc> {
        let mut v: Vec<Arc> = arcs.into_iter().filter(|a| a.width() > ANGLE_EPS).collect();
        v.sort_by(|a, b| a.start.total_cmp(&b.start));
        let mut out: Vec<Arc> = Vec::with_capacity(v.len());
        for a in v {
            match out.last_mut() {
                Some(last) if a.start <= last.end + ANGLE_EPS => {
                    last.end = last.end.max(a.end);
                }
                _ => out.push(a),
            }
        }
        out
    }

    pub fn total_width(arcs: &[Arc]) -> f64 {
        arcs.iter().map(Arc::width).sum()
    }

    pub fn contains(arcs: &[Arc], theta: f64) -> bool {
        arcs.iter().any(|a| a.contains(theta))
    }

    /// Fails if any two arcs share more than [`ANGLE_EPS`] of angle.
    pub fn check_disjoint(arcs: &[Arc]) -> Result<()> {
        let mut v = arcs.to_vec();
        v.sort_by(|a, b| a.start.total_cmp(&b.start));
        for w in v.windows(2) {
            if w[1].start < w[0].end - ANGLE_EPS {
                return Err(Error::OverlappingRegion { at: w[1].start });
            }
        }
        Ok(())
    }

    /// Intersection of two regions.
    pub fn intersect(a: &[Arc], b: &[Arc]) -> Vec<Arc> {
        let a = canonicalize(a.iter().copied());
        let b = canonicalize(b.iter().copied());
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(x) = a[i].intersect(&b[j]) {
                out.push(x);
            }
            if a[i].end < b[j].end {
                i += 1;
            } else {
                j += 1;
            }
        }
        out
    }

    /// `(0, 2pi]` minus the region.
    pub fn complement(arcs: &[Arc]) -> Vec<Arc> {
        let mut out = Vec::new();
        let mut cursor = 0.0;
        for a in canonicalize(arcs.iter().copied()) {
            if a.start - cursor > ANGLE_EPS {
                out.push(Arc::raw(cursor, a.start));
            }
            cursor = a.end;
        }
        if TAU - cursor > ANGLE_EPS {
            out.push(Arc::raw(cursor, TAU));
        }
        out
    }

    /// Symmetric-difference width; zero when two regions agree up to slivers.
    pub fn difference_width(a: &[Arc], b: &[Arc]) -> f64 {
        let both = total_width(&intersect(a, b));
        (total_width(a) - both) + (total_width(b) - both)
    }
}
