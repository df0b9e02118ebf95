use super::arc::{region, Arc, ANGLE_EPS, TAU};
use super::rearrange::RearrangementMap;
use crate::error::{Error, Result};

/// Absolute tolerance used for normalization and weight checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Relative gap below which two adjacent densities are considered equal.
const DENSITY_MERGE_RTOL: f64 = 1e-12;

/// One constant-density piece of an [`AngularPdf`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub arc: Arc,
    /// Probability per radian.
    pub density: f64,
}

impl Piece {
    pub fn mass(&self) -> f64 {
        self.arc.width() * self.density
    }
}

/// A piecewise-constant probability density on `(0, 2pi]`.
///
/// Pieces tile the circle in angular order and adjacent pieces never share a
/// density. Zero-density pieces are accepted with a warning.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularPdf {
    pieces: Vec<Piece>,
    // mass of (0, start of piece i]
    cum: Vec<f64>,
}

impl AngularPdf {
    pub fn new(pieces: Vec<(Arc, f64)>) -> Result<Self> {
        Self::with_tolerance(pieces, DEFAULT_TOLERANCE)
    }

    /// Builds a pdf from `(arc, density)` pairs in any order. `tolerance`
    /// bounds both the gap allowed between consecutive arcs and the
    /// normalization error.
    pub fn with_tolerance(mut pieces: Vec<(Arc, f64)>, tolerance: f64) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::PdfSupport("no pieces".into()));
        }
        pieces.sort_by(|a, b| a.0.start().total_cmp(&b.0.start()));
        for (index, &(_, density)) in pieces.iter().enumerate() {
            if !density.is_finite() || density < 0.0 {
                return Err(Error::InvalidDensity { index, density });
            }
        }
        if pieces[0].0.start() > tolerance {
            return Err(Error::PdfSupport(format!(
                "gap (0, {}] before first piece",
                pieces[0].0.start()
            )));
        }
        let last_end = pieces[pieces.len() - 1].0.end();
        if TAU - last_end > tolerance {
            return Err(Error::PdfSupport(format!(
                "gap ({last_end}, 2pi] after last piece"
            )));
        }
        for w in pieces.windows(2) {
            let (prev, next) = (w[0].0, w[1].0);
            if (next.start() - prev.end()).abs() > tolerance {
                let what = if next.start() < prev.end() {
                    "overlap"
                } else {
                    "gap"
                };
                return Err(Error::PdfSupport(format!(
                    "{what} between {} and {}",
                    prev.end(),
                    next.start()
                )));
            }
        }

        // Snap boundaries so the pieces tile exactly, then merge equal levels.
        let n = pieces.len();
        let mut snapped: Vec<Piece> = Vec::with_capacity(n);
        for i in 0..n {
            let start = if i == 0 { 0.0 } else { snapped[i - 1].arc.end() };
            let end = if i + 1 == n { TAU } else { pieces[i].0.end() };
            if end - start <= 0.0 {
                return Err(Error::PdfSupport(format!("degenerate piece at {start}")));
            }
            snapped.push(Piece {
                arc: Arc::raw(start, end),
                density: pieces[i].1,
            });
        }
        let total: f64 = snapped.iter().map(Piece::mass).sum();
        if (total - 1.0).abs() > tolerance {
            return Err(Error::NotNormalized { total });
        }
        Ok(Self::from_tiling(snapped))
    }

    // Pieces must tile (0, 2pi] in order.
    fn from_tiling(tiling: Vec<Piece>) -> Self {
        let mut merged: Vec<Piece> = Vec::with_capacity(tiling.len());
        for p in tiling {
            if p.arc.width() <= ANGLE_EPS && !merged.is_empty() {
                let last = merged.last_mut().unwrap();
                last.arc = Arc::raw(last.arc.start(), p.arc.end());
                continue;
            }
            match merged.last_mut() {
                Some(last) if densities_equal(last.density, p.density) => {
                    let mass = last.mass() + p.mass();
                    last.arc = Arc::raw(last.arc.start(), p.arc.end());
                    last.density = mass / last.arc.width();
                }
                _ => merged.push(p),
            }
        }
        if merged.iter().any(|p| p.density == 0.0) {
            log::warn!("angular pdf has zero-density pieces; support is not the full circle");
        }
        let mut cum = Vec::with_capacity(merged.len());
        let mut acc = 0.0;
        for p in &merged {
            cum.push(acc);
            acc += p.mass();
        }
        AngularPdf { pieces: merged, cum }
    }

    pub fn uniform() -> Self {
        Self::from_tiling(vec![Piece {
            arc: Arc::full(),
            density: 1.0 / TAU,
        }])
    }

    /// Builds a pdf from `(start, end, mass)` triples in radians.
    pub fn from_masses(pieces: &[(f64, f64, f64)]) -> Result<Self> {
        let pairs = pieces
            .iter()
            .map(|&(s, e, m)| Arc::new(s, e).map(|a| (a, m / a.width())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Piece start angles, beginning with 0.
    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.pieces.iter().map(|p| p.arc.start())
    }

    pub fn total_mass(&self) -> f64 {
        self.cum[self.cum.len() - 1] + self.pieces[self.pieces.len() - 1].mass()
    }

    pub fn has_zero_density(&self) -> bool {
        self.pieces.iter().any(|p| p.density == 0.0)
    }

    fn piece_index(&self, theta: f64) -> usize {
        let t = super::canonical_angle(theta);
        // first piece whose end is >= t
        self.pieces
            .partition_point(|p| p.arc.end() < t)
            .min(self.pieces.len() - 1)
    }

    pub fn density_at(&self, theta: f64) -> f64 {
        self.pieces[self.piece_index(theta)].density
    }

    /// Probability of `(0, theta]` for `theta` in `[0, 2pi]`.
    pub fn cdf(&self, theta: f64) -> f64 {
        if theta <= 0.0 {
            return 0.0;
        }
        if theta >= TAU {
            return self.total_mass();
        }
        let i = self.pieces.partition_point(|p| p.arc.end() < theta);
        let p = &self.pieces[i.min(self.pieces.len() - 1)];
        self.cum[i.min(self.pieces.len() - 1)] + (theta - p.arc.start()).max(0.0) * p.density
    }

    /// Inverse of [`cdf`](Self::cdf) for `u` in `(0, 1]`; the result lies in
    /// the interior-or-end `(start, end]` of a positive-density piece.
    pub fn quantile(&self, u: f64) -> f64 {
        let target = u.clamp(0.0, 1.0) * self.total_mass();
        let i = self
            .pieces
            .iter()
            .zip(&self.cum)
            .position(|(p, &c)| p.density > 0.0 && c + p.mass() >= target)
            .unwrap_or_else(|| {
                self.pieces
                    .iter()
                    .rposition(|p| p.density > 0.0)
                    .expect("pdf with positive mass")
            });
        let p = &self.pieces[i];
        let mut theta = p.arc.start() + (target - self.cum[i]) / p.density;
        if theta <= p.arc.start() {
            theta = p.arc.start().next_up();
        }
        theta.min(p.arc.end())
    }

    /// Probability of a region of disjoint arcs.
    pub fn integrate(&self, region: &[Arc]) -> Result<f64> {
        region::check_disjoint(region)?;
        Ok(region.iter().map(|a| self.arc_mass(a)).sum())
    }

    pub(crate) fn arc_mass(&self, arc: &Arc) -> f64 {
        let first = self.pieces.partition_point(|p| p.arc.end() <= arc.start());
        let mut mass = 0.0;
        for p in &self.pieces[first.min(self.pieces.len())..] {
            if p.arc.start() >= arc.end() {
                break;
            }
            mass += p.density * p.arc.overlap_width(arc);
        }
        mass
    }

    /// Differential entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        -self
            .pieces
            .iter()
            .filter(|p| p.density > 0.0)
            .map(|p| p.mass() * p.density.log2())
            .sum::<f64>()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.pieces
            .windows(2)
            .all(|w| w[1].density <= w[0].density * (1.0 + DENSITY_MERGE_RTOL))
    }

    /// Weighted sum of densities; piece boundaries are the union of the inputs'.
    pub fn mixture(pdfs: &[AngularPdf], weights: &[f64]) -> Result<Self> {
        Self::mixture_with_tolerance(pdfs, weights, DEFAULT_TOLERANCE)
    }

    pub fn mixture_with_tolerance(pdfs: &[AngularPdf], weights: &[f64], tolerance: f64) -> Result<Self> {
        if pdfs.len() != weights.len() {
            return Err(Error::LengthMismatch {
                pdfs: pdfs.len(),
                weights: weights.len(),
            });
        }
        if pdfs.is_empty() {
            return Err(Error::EmptyMixture);
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || (sum - 1.0).abs() > tolerance {
            return Err(Error::WeightSum { sum });
        }
        let mut cuts: Vec<f64> = pdfs.iter().flat_map(|p| p.breakpoints()).collect();
        cuts.push(TAU);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|b, a| *b - *a <= ANGLE_EPS);
        let tiling = cuts
            .windows(2)
            .map(|w| {
                let arc = Arc::raw(w[0], w[1]);
                let mid = arc.midpoint();
                let density = pdfs.iter().zip(weights).map(|(p, w)| w * p.density_at(mid)).sum();
                Piece { arc, density }
            })
            .collect();
        Ok(Self::from_tiling(tiling))
    }

    /// Decreasing rearrangement: pieces sorted by non-increasing density and
    /// laid out from 0, ties kept in their original angular order. Returns
    /// the rearranged pdf and the map that carries this pdf onto it.
    pub fn monotone_rearrangement(&self) -> (AngularPdf, RearrangementMap) {
        let mut order: Vec<usize> = (0..self.pieces.len()).collect();
        order.sort_by(|&a, &b| self.pieces[b].density.total_cmp(&self.pieces[a].density));
        let mut cursor = 0.0;
        let mut placed = Vec::with_capacity(order.len());
        let mut pairs = Vec::with_capacity(order.len());
        for (rank, &i) in order.iter().enumerate() {
            let p = self.pieces[i];
            let end = if rank + 1 == order.len() {
                TAU
            } else {
                cursor + p.arc.width()
            };
            let image = Arc::raw(cursor, end);
            placed.push(Piece {
                arc: image,
                density: p.density,
            });
            pairs.push((p.arc, image));
            cursor = end;
        }
        (Self::from_tiling(placed), RearrangementMap::from_pairs(pairs))
    }
}

fn densities_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= DENSITY_MERGE_RTOL * a.max(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    pub(crate) fn quadrant_user(q: usize) -> AngularPdf {
        let mut pieces = Vec::new();
        for k in 0..4 {
            let mass = if k == q { 0.9 } else { 0.1 / 3.0 };
            pieces.push((k as f64 * PI / 2.0, (k + 1) as f64 * PI / 2.0, mass));
        }
        AngularPdf::from_masses(&pieces).unwrap()
    }

    fn quadrant_mixture() -> AngularPdf {
        AngularPdf::mixture(&[quadrant_user(0), quadrant_user(2)], &[0.5, 0.5]).unwrap()
    }

    #[test]
    fn mixture_of_uniforms_is_uniform() {
        let m = AngularPdf::mixture(&[AngularPdf::uniform(), AngularPdf::uniform()], &[0.5, 0.5]).unwrap();
        assert_eq!(m.pieces().len(), 1);
        assert_abs_diff_eq!(m.pieces()[0].density, 1.0 / TAU, epsilon = 1e-15);
    }

    #[test]
    fn two_user_mixture_levels() {
        let m = quadrant_mixture();
        assert_eq!(m.pieces().len(), 4);
        let hi = 14.0 / (15.0 * PI);
        let lo = 1.0 / (15.0 * PI);
        for (k, p) in m.pieces().iter().enumerate() {
            let want = if k % 2 == 0 { hi } else { lo };
            assert_abs_diff_eq!(p.density, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_component_mixture_is_identity() {
        let u = quadrant_user(1);
        let m = AngularPdf::mixture(std::slice::from_ref(&u), &[1.0]).unwrap();
        assert_eq!(m.pieces().len(), u.pieces().len());
        for (a, b) in m.pieces().iter().zip(u.pieces()) {
            assert_abs_diff_eq!(a.density, b.density, epsilon = 1e-15);
        }
    }

    #[test]
    fn mixture_errors() {
        let u = AngularPdf::uniform();
        assert!(matches!(
            AngularPdf::mixture(std::slice::from_ref(&u), &[0.5, 0.5]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            AngularPdf::mixture(&[u.clone(), u.clone()], &[0.5, 0.4]),
            Err(Error::WeightSum { .. })
        ));
        assert!(matches!(
            AngularPdf::mixture(&[u.clone(), u], &[1.5, -0.5]),
            Err(Error::WeightSum { .. })
        ));
        assert!(matches!(AngularPdf::mixture(&[], &[]), Err(Error::EmptyMixture)));
    }

    #[test]
    fn integrate_examples() {
        let u = AngularPdf::uniform();
        assert_abs_diff_eq!(u.integrate(&[Arc::new(0.0, PI).unwrap()]).unwrap(), 0.5);
        let m = quadrant_mixture();
        assert_abs_diff_eq!(
            m.integrate(&[Arc::new(0.0, PI / 2.0).unwrap()]).unwrap(),
            7.0 / 15.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(m.integrate(&[Arc::full()]).unwrap(), 1.0, epsilon = 1e-12);
        let overlapping = [Arc::new(0.0, 2.0).unwrap(), Arc::new(1.0, 3.0).unwrap()];
        assert!(matches!(
            m.integrate(&overlapping),
            Err(Error::OverlappingRegion { .. })
        ));
    }

    #[test]
    fn entropy_closed_forms() {
        assert_abs_diff_eq!(AngularPdf::uniform().entropy_bits(), TAU.log2(), epsilon = 1e-12);
        let eps = TAU / 256.0;
        let spike = AngularPdf::new(vec![
            (Arc::new(0.0, eps).unwrap(), 1.0 / eps),
            (Arc::new(eps, TAU).unwrap(), 0.0),
        ])
        .unwrap();
        assert!(spike.has_zero_density());
        assert_abs_diff_eq!(spike.entropy_bits(), TAU.log2() - 8.0, epsilon = 1e-12);
    }

    #[test]
    fn mixture_entropy_matches_numerical_integration() {
        let m = quadrant_mixture();
        let n = 100_000;
        let h = TAU / n as f64;
        let numeric: f64 = (0..n)
            .map(|i| {
                let f = m.density_at((i as f64 + 0.5) * h);
                -f * f.log2() * h
            })
            .sum();
        assert_abs_diff_eq!(m.entropy_bits(), numeric, epsilon = 1e-9);
        assert_abs_diff_eq!(m.entropy_bits(), 2.0049, epsilon = 5e-5);
    }

    #[test]
    fn validation_errors() {
        let half = Arc::new(0.0, PI).unwrap();
        assert!(matches!(
            AngularPdf::new(vec![(half, 1.0 / PI)]),
            Err(Error::PdfSupport(_))
        ));
        assert!(matches!(
            AngularPdf::new(vec![(Arc::full(), 0.1)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            AngularPdf::new(vec![(Arc::full(), -1.0)]),
            Err(Error::InvalidDensity { .. })
        ));
        let overlap = vec![
            (Arc::new(0.0, 4.0).unwrap(), 0.1),
            (Arc::new(3.0, TAU).unwrap(), 0.1),
        ];
        assert!(matches!(AngularPdf::new(overlap), Err(Error::PdfSupport(_))));
    }

    #[test]
    fn cdf_and_quantile_are_inverse() {
        let m = quadrant_mixture();
        for k in 1..=100 {
            let u = k as f64 / 100.0;
            let theta = m.quantile(u);
            assert!(theta > 0.0 && theta <= TAU);
            assert_abs_diff_eq!(m.cdf(theta), u, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(m.cdf(PI / 2.0), 7.0 / 15.0, epsilon = 1e-12);
    }

    #[test]
    fn quantile_skips_zero_density() {
        let pdf = AngularPdf::new(vec![
            (Arc::new(0.0, 1.0).unwrap(), 0.0),
            (Arc::new(1.0, 2.0).unwrap(), 1.0),
            (Arc::new(2.0, TAU).unwrap(), 0.0),
        ])
        .unwrap();
        for u in [1e-15, 0.25, 0.5, 1.0] {
            let theta = pdf.quantile(u);
            assert!(theta > 1.0 && theta <= 2.0, "{u} -> {theta}");
        }
    }
}
