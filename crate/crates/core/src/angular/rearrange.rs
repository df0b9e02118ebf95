use super::arc::{region, Arc, ANGLE_EPS};
use super::pdf::AngularPdf;
use crate::error::Result;

/// One translated piece of a [`RearrangementMap`]: `source` is carried onto
/// `image`, which has the same width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub source: Arc,
    pub image: Arc,
}

impl Segment {
    /// Signed translation applied to the source arc.
    pub fn offset(&self) -> f64 {
        self.image.start() - self.source.start()
    }
}

/// A measure-preserving piecewise translation of the circle onto itself.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementMap {
    // sorted by source start, tiles (0, 2pi] on both sides
    segments: Vec<Segment>,
}

impl RearrangementMap {
    pub fn identity() -> Self {
        RearrangementMap {
            segments: vec![Segment {
                source: Arc::full(),
                image: Arc::full(),
            }],
        }
    }

    pub(crate) fn from_pairs(mut pairs: Vec<(Arc, Arc)>) -> Self {
        pairs.sort_by(|a, b| a.0.start().total_cmp(&b.0.start()));
        let mut segments: Vec<Segment> = Vec::with_capacity(pairs.len());
        for (source, image) in pairs {
            match segments.last_mut() {
                Some(last) if (image.start() - last.image.end()).abs() <= ANGLE_EPS => {
                    last.source = Arc::raw(last.source.start(), source.end());
                    last.image = Arc::raw(last.image.start(), image.end());
                }
                _ => segments.push(Segment { source, image }),
            }
        }
        RearrangementMap { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_identity(&self) -> bool {
        self.segments.iter().all(|s| s.offset().abs() <= ANGLE_EPS)
    }

    /// Image of a single angle.
    pub fn forward(&self, theta: f64) -> f64 {
        let t = super::canonical_angle(theta);
        let s = self
            .segments
            .iter()
            .find(|s| s.source.contains(t))
            .unwrap_or(&self.segments[self.segments.len() - 1]);
        (s.image.start() + (t - s.source.start())).min(s.image.end())
    }

    pub fn inverse(&self, theta: f64) -> f64 {
        let t = super::canonical_angle(theta);
        let s = self
            .segments
            .iter()
            .find(|s| s.image.contains(t))
            .unwrap_or(&self.segments[self.segments.len() - 1]);
        (s.source.start() + (t - s.image.start())).min(s.source.end())
    }

    /// `g(region)` as a canonical arc list.
    pub fn forward_image(&self, region: &[Arc]) -> Vec<Arc> {
        self.transport(region, |s| (s.source, s.image))
    }

    /// `g^{-1}(region)` as a canonical arc list.
    pub fn inverse_image(&self, region: &[Arc]) -> Vec<Arc> {
        self.transport(region, |s| (s.image, s.source))
    }

    fn transport(&self, region: &[Arc], dir: impl Fn(&Segment) -> (Arc, Arc)) -> Vec<Arc> {
        let mut out = Vec::new();
        for seg in &self.segments {
            let (from, to) = dir(seg);
            for a in region {
                if let Some(x) = a.intersect(&from) {
                    let s = to.start() + (x.start() - from.start());
                    let e = to.start() + (x.end() - from.start());
                    let e = if (from.end() - x.end()).abs() <= ANGLE_EPS {
                        to.end()
                    } else {
                        e.min(to.end())
                    };
                    if e - s > ANGLE_EPS {
                        out.push(Arc::raw(s.max(to.start()), e));
                    }
                }
            }
        }
        region::canonicalize(out)
    }

    /// Density of `g(X)` when `X` has density `pdf`.
    pub fn push_forward(&self, pdf: &AngularPdf) -> Result<AngularPdf> {
        let mut pieces = Vec::new();
        for p in pdf.pieces() {
            for a in self.forward_image(&[p.arc]) {
                pieces.push((a, p.density));
            }
        }
        AngularPdf::new(pieces)
    }
}
