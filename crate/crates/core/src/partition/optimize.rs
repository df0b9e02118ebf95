//! Grid-exact minimization of `sum_k |u_k| P(u_k)` over contiguous cells.
//!
//! Candidate boundaries are a uniform grid augmented with the pdf's piece
//! boundaries and the `M` equally spaced angles, so piecewise-constant optima
//! and the equal-width construction are always representable. Cell costs are
//! compared in 2^-40 fixed point, which makes path sums exact and independent
//! of summation order: the dynamic program and the exhaustive oracle rank
//! boundary sets identically and report bit-identical objectives.

use super::cells::BoundaryVector;
use crate::angular::{AngularPdf, TAU};
use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 3600;

/// Largest number of boundary sets [`brute_force_boundaries`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Candidates closer than this collapse to one point.
const CANDIDATE_MERGE: f64 = 1e-10;

const FIXED_SCALE: f64 = (1u64 << 40) as f64;
const INF: u64 = u64::MAX;

/// Quadratic scans are used below this many inner-loop evaluations.
const QUADRATIC_WORK: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryMode {
    /// `x_1` fixed at the origin; the pdf must be non-increasing.
    Linear,
    /// Boundaries may rotate freely around the circle.
    Circular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySolution {
    pub boundaries: BoundaryVector,
    /// Achieved `sum_k |u_k| P(u_k)` in radians.
    pub objective: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Strategy {
    Auto,
    Quadratic,
    MongeSplit,
}

struct CandidateGrid {
    n: usize,
    // positions and cumulative mass, doubled with +2pi / +total for wrap cells
    pos: Vec<f64>,
    cum: Vec<f64>,
}

impl CandidateGrid {
    fn build(pdf: &AngularPdf, cells: usize, grid_points: usize) -> Self {
        // (angle, priority): lower priority wins when candidates collide.
        let mut raw: Vec<(f64, u8)> = pdf.breakpoints().map(|b| (b, 0)).collect();
        raw.extend((0..cells).map(|k| (k as f64 * TAU / cells as f64, 1)));
        raw.extend((0..grid_points).map(|k| (k as f64 * TAU / grid_points as f64, 2)));
        for r in raw.iter_mut() {
            if TAU - r.0 <= CANDIDATE_MERGE {
                r.0 = 0.0;
            }
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut pos: Vec<f64> = Vec::with_capacity(raw.len());
        let mut best_pri: Vec<u8> = Vec::with_capacity(raw.len());
        let mut group_start = f64::NEG_INFINITY;
        for (x, pri) in raw {
            if x - group_start <= CANDIDATE_MERGE {
                let last = pos.len() - 1;
                if pri < best_pri[last] {
                    pos[last] = x;
                    best_pri[last] = pri;
                }
            } else {
                group_start = x;
                pos.push(x);
                best_pri.push(pri);
            }
        }
        let n = pos.len();
        let total = pdf.total_mass();
        let mut cum: Vec<f64> = pos.iter().map(|&x| pdf.cdf(x)).collect();
        cum[0] = 0.0;
        for k in 0..n {
            pos.push(pos[k] + TAU);
            cum.push(cum[k] + total);
        }
        CandidateGrid { n, pos, cum }
    }

    /// Cost of the cell from candidate `s` counterclockwise to candidate `t`
    /// (absolute indices; `t <= s` wraps through the origin).
    #[inline]
    fn cell_cost_f64(&self, s: usize, t: usize) -> f64 {
        let t = if t > s { t } else { t + self.n };
        ((self.pos[t] - self.pos[s]) * (self.cum[t] - self.cum[s])).max(0.0)
    }

    #[inline]
    fn cell_cost(&self, s: usize, t: usize) -> u64 {
        (self.cell_cost_f64(s, t) * FIXED_SCALE).round() as u64
    }

    fn objective_of(&self, sorted: &[usize]) -> u64 {
        let m = sorted.len();
        (0..m)
            .map(|k| self.cell_cost(sorted[k], sorted[(k + 1) % m]))
            .sum()
    }

    /// Selection uses the fixed-point sum; the reported objective is the
    /// floating-point sum over the sorted boundaries, so two routes that
    /// pick the same set report the same value.
    fn to_solution(&self, mut indices: Vec<usize>, mode: BoundaryMode) -> BoundarySolution {
        indices.sort_unstable();
        let m = indices.len();
        let objective = (0..m)
            .map(|k| self.cell_cost_f64(indices[k], indices[(k + 1) % m]))
            .sum();
        let points = indices.iter().map(|&i| self.pos[i]).collect();
        BoundarySolution {
            boundaries: BoundaryVector::new(points, mode == BoundaryMode::Circular)
                .expect("grid candidates are distinct"),
            objective,
        }
    }
}

fn check_request(pdf: &AngularPdf, cells: usize, mode: BoundaryMode, grid_points: usize) -> Result<()> {
    if cells == 0 {
        return Err(Error::TooManyCells {
            cells,
            candidates: grid_points,
        });
    }
    if grid_points < 8 * cells {
        return Err(Error::GridTooCoarse {
            grid_points,
            cells,
            min: 8 * cells,
        });
    }
    if mode == BoundaryMode::Linear && !pdf.is_non_increasing() {
        return Err(Error::NotMonotone);
    }
    Ok(())
}

/// Boundaries of `cells` contiguous cells minimizing the expected width over
/// the candidate grid. The result is exact over that grid in both modes;
/// ties resolve to the lexicographically smallest sorted boundary vector.
pub fn optimize_boundaries(
    pdf: &AngularPdf,
    cells: usize,
    mode: BoundaryMode,
    grid_points: usize,
) -> Result<BoundarySolution> {
    optimize_with(pdf, cells, mode, grid_points, Strategy::Auto)
}

pub(crate) fn optimize_with(
    pdf: &AngularPdf,
    cells: usize,
    mode: BoundaryMode,
    grid_points: usize,
    strategy: Strategy,
) -> Result<BoundarySolution> {
    check_request(pdf, cells, mode, grid_points)?;
    let grid = CandidateGrid::build(pdf, cells, grid_points);
    if cells > grid.n {
        return Err(Error::TooManyCells {
            cells,
            candidates: grid.n,
        });
    }
    if cells == 1 {
        return Ok(grid.to_solution(vec![0], mode));
    }
    let strategy = match strategy {
        Strategy::Auto => {
            let work = (grid.n as u64).pow(2) * cells as u64;
            if work <= QUADRATIC_WORK {
                Strategy::Quadratic
            } else {
                Strategy::MongeSplit
            }
        }
        s => s,
    };
    let first = solve_anchor(&grid, 0, cells, strategy, None);
    if mode == BoundaryMode::Linear {
        return Ok(grid.to_solution(first.indices(grid.n), mode));
    }
    // Leftmost optimal paths of a Monge cost never cross, so the path for
    // any anchor in (0, n) lies between the anchor-0 path and its copy
    // shifted once around the circle. Anchors are solved by bisection
    // within those corridors.
    let shifted = AnchorPath {
        cost: first.cost,
        path: first.path.iter().map(|&x| x + grid.n).collect(),
    };
    let mut results = sweep_anchors(&grid, cells, strategy, &first, &shifted);
    results.push(first);
    // Reduction after collection keeps the tie-break independent of scheduling.
    let (_, indices) = results
        .into_iter()
        .map(|p| (p.cost, p.indices(grid.n)))
        .min_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)))
        .expect("at least one anchor");
    Ok(grid.to_solution(indices, mode))
}

/// Optimal path from one anchor, in unrolled candidate indices: `path[0]`
/// is the anchor and `path[cells]` the anchor plus `n`.
#[derive(Debug, Clone)]
struct AnchorPath {
    cost: u64,
    path: Vec<usize>,
}

impl AnchorPath {
    /// Sorted boundary indices on the circle.
    fn indices(&self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.path[..self.path.len() - 1].iter().map(|&x| x % n).collect();
        v.sort_unstable();
        v
    }
}

/// Solves every anchor strictly between `lo.path[0]` and `hi.path[0]`.
fn sweep_anchors(
    grid: &CandidateGrid,
    cells: usize,
    strategy: Strategy,
    lo: &AnchorPath,
    hi: &AnchorPath,
) -> Vec<AnchorPath> {
    let (a, b) = (lo.path[0], hi.path[0]);
    if b - a < 2 {
        return Vec::new();
    }
    let mid = (a + b) / 2;
    let p = solve_anchor(grid, mid, cells, strategy, Some((&lo.path, &hi.path)));
    let (mut left, right) = rayon::join(
        || sweep_anchors(grid, cells, strategy, lo, &p),
        || sweep_anchors(grid, cells, strategy, &p, hi),
    );
    left.push(p);
    left.extend(right);
    left
}

/// Best path of exactly `cells` cells from anchor `a` once around the
/// circle, optionally with boundary `k` confined between `corridor.0[k]`
/// and `corridor.1[k]` (unrolled indices). Ties go to the leftmost path.
fn solve_anchor(
    grid: &CandidateGrid,
    a: usize,
    cells: usize,
    strategy: Strategy,
    corridor: Option<(&[usize], &[usize])>,
) -> AnchorPath {
    let n = grid.n;
    let cost = |r: usize, q: usize| grid.cell_cost((a + r) % n, (a + q) % n);

    // relative range of boundary k
    let mut lo = vec![0usize; cells + 1];
    let mut hi = vec![0usize; cells + 1];
    for k in 1..cells {
        lo[k] = k;
        hi[k] = n - (cells - k);
        if let Some((l, u)) = corridor {
            lo[k] = lo[k].max(l[k].saturating_sub(a));
            hi[k] = hi[k].min(u[k] - a);
        }
        debug_assert!(lo[k] <= hi[k], "empty corridor at boundary {k}");
    }
    lo[cells] = n;
    hi[cells] = n;

    // suffix[r - lo[k]]: best cost from boundary k at r to the closing node;
    // arg[k][r - lo[k]] is the leftmost next boundary achieving it.
    let mut suffix: Vec<u64> = vec![0];
    let mut arg: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for k in (0..cells).rev() {
        let (rl, rh) = (lo[k], hi[k]);
        let (ql0, qh0) = (lo[k + 1], hi[k + 1]);
        let mut next = vec![INF; rh - rl + 1];
        let mut best_q = vec![qh0; rh - rl + 1];
        let eval = |r: usize, q: usize| suffix[q - ql0].saturating_add(cost(r, q));
        let mut row = |r: usize, ql: usize, qh: usize| -> usize {
            let (mut best, mut bq) = (INF, qh);
            for q in ql.max(r + 1)..=qh {
                let v = eval(r, q);
                if v < best {
                    best = v;
                    bq = q;
                }
            }
            next[r - rl] = best;
            best_q[r - rl] = bq;
            bq
        };
        match strategy {
            Strategy::Quadratic | Strategy::Auto => {
                for r in rl..=rh {
                    row(r, ql0, qh0);
                }
            }
            Strategy::MongeSplit => {
                let mut stack = vec![(rl, rh, ql0, qh0)];
                while let Some((r0, r1, ql, qh)) = stack.pop() {
                    if r0 > r1 {
                        continue;
                    }
                    let r = (r0 + r1) / 2;
                    let bq = row(r, ql, qh);
                    if r > r0 {
                        stack.push((r0, r - 1, ql, bq));
                    }
                    stack.push((r + 1, r1, bq, qh));
                }
            }
        }
        suffix = next;
        arg[k] = best_q;
    }
    let cost = suffix[0];
    let mut path = Vec::with_capacity(cells + 1);
    let mut r = 0usize;
    path.push(a);
    for (k, choice) in arg.iter().enumerate() {
        r = choice[r - lo[k]];
        path.push(a + r);
    }
    debug_assert_eq!(
        grid.objective_of(
            &AnchorPath {
                cost,
                path: path.clone()
            }
            .indices(n)
        ),
        cost
    );
    AnchorPath { cost, path }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exhaustive search over every boundary set on the same candidate grid as
/// [`optimize_boundaries`]. Intended as an oracle for small grids.
pub fn brute_force_boundaries(
    pdf: &AngularPdf,
    cells: usize,
    mode: BoundaryMode,
    grid_points: usize,
) -> Result<BoundarySolution> {
    check_request(pdf, cells, mode, grid_points)?;
    let grid = CandidateGrid::build(pdf, cells, grid_points);
    if cells > grid.n {
        return Err(Error::TooManyCells {
            cells,
            candidates: grid.n,
        });
    }
    if cells == 1 {
        return Ok(grid.to_solution(vec![0], mode));
    }
    let combinations = match mode {
        BoundaryMode::Linear => binomial(grid.n - 1, cells - 1),
        BoundaryMode::Circular => binomial(grid.n, cells),
    };
    if combinations > BRUTE_FORCE_LIMIT {
        return Err(Error::Infeasible {
            combinations,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut current: Vec<usize> = (0..cells).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    loop {
        let v = grid.objective_of(&current);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, current.clone()));
        }
        // next combination in lexicographic order; linear mode pins index 0
        let first_free = if mode == BoundaryMode::Linear { 1 } else { 0 };
        let mut i = cells;
        loop {
            if i == first_free {
                let (_, idx) = best.expect("at least one combination");
                return Ok(grid.to_solution(idx, mode));
            }
            i -= 1;
            if current[i] < grid.n - cells + i {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..cells {
            current[j] = current[j - 1] + 1;
        }
    }
}
