use crate::angular::{region, AngularPdf, Arc, ANGLE_EPS, TAU};
use crate::error::{Error, Result};

/// Slack allowed when checking that cells tile the circle.
const TILING_TOLERANCE: f64 = 1e-9;

/// One uncertainty region: a finite union of arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub id: u64,
    pub region: Vec<Arc>,
}

impl Cell {
    pub fn width(&self) -> f64 {
        region::total_width(&self.region)
    }

    pub fn contains(&self, theta: f64) -> bool {
        region::contains(&self.region, theta)
    }
}

/// A set of disjoint cells whose union is `(0, 2pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    cells: Vec<Cell>,
}

impl Partition {
    /// Validates the tiling. Cell regions are canonicalized and empty cells
    /// are dropped.
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        let cells: Vec<Cell> = cells
            .into_iter()
            .map(|c| Cell {
                id: c.id,
                region: region::canonicalize(c.region),
            })
            .filter(|c| c.width() > ANGLE_EPS)
            .collect();
        if cells.is_empty() {
            return Err(Error::InvalidPartition("no cells".into()));
        }
        let mut arcs: Vec<Arc> = cells.iter().flat_map(|c| c.region.iter().copied()).collect();
        arcs.sort_by(|a, b| a.start().total_cmp(&b.start()));
        let mut cursor = 0.0;
        for a in &arcs {
            if a.start() < cursor - TILING_TOLERANCE {
                return Err(Error::InvalidPartition(format!("cells overlap at {}", a.start())));
            }
            if a.start() > cursor + TILING_TOLERANCE {
                return Err(Error::InvalidPartition(format!(
                    "({cursor}, {}] is not covered",
                    a.start()
                )));
            }
            cursor = a.end();
        }
        if TAU - cursor > TILING_TOLERANCE {
            return Err(Error::InvalidPartition(format!("({cursor}, 2pi] is not covered")));
        }
        Ok(Partition { cells })
    }

    /// The single cell `(0, 2pi]`.
    pub fn trivial() -> Self {
        Partition {
            cells: vec![Cell {
                id: 0,
                region: vec![Arc::full()],
            }],
        }
    }

    /// Contiguous cells `(x_k, x_{k+1}]`, the last one closing back to `x_1`.
    /// Cell ids follow boundary order starting at 0.
    pub fn from_boundaries(boundaries: &BoundaryVector) -> Self {
        let cells = boundaries
            .cell_spans()
            .enumerate()
            .map(|(k, region)| Cell { id: k as u64, region })
            .collect();
        Partition { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_of(&self, theta: f64) -> Option<&Cell> {
        self.cells.iter().find(|c| c.contains(theta))
    }

    pub fn total_width(&self) -> f64 {
        self.cells.iter().map(Cell::width).sum()
    }
}

/// Expected width of the cell containing an angle drawn from `pdf`.
pub fn expected_width(partition: &Partition, pdf: &AngularPdf) -> f64 {
    partition
        .cells()
        .iter()
        .map(|c| c.width() * c.region.iter().map(|a| pdf.arc_mass(a)).sum::<f64>())
        .sum()
}

/// Boundary points of a partition into contiguous cells.
///
/// Points increase strictly and span less than a full turn. `x_1` may be any
/// angle; in linear mode it is the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryVector {
    points: Vec<f64>,
    circular: bool,
}

impl BoundaryVector {
    pub fn new(points: Vec<f64>, circular: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidBoundaries("no boundary points".into()));
        }
        if points.iter().any(|x| !x.is_finite() || *x < 0.0 || *x > TAU) {
            return Err(Error::InvalidBoundaries("points must lie in [0, 2pi]".into()));
        }
        if points.windows(2).any(|w| w[1] - w[0] <= ANGLE_EPS) {
            return Err(Error::InvalidBoundaries("points must increase strictly".into()));
        }
        if points[points.len() - 1] - points[0] >= TAU - ANGLE_EPS {
            return Err(Error::InvalidBoundaries("points span a full turn".into()));
        }
        if !circular && points[0] != 0.0 && points[0] != TAU {
            return Err(Error::InvalidBoundaries(
                "linear boundaries start at the origin".into(),
            ));
        }
        Ok(BoundaryVector { points, circular })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_circular(&self) -> bool {
        self.circular
    }

    /// Cell regions in boundary order.
    pub fn cell_spans(&self) -> impl Iterator<Item = Vec<Arc>> + '_ {
        let m = self.points.len();
        (0..m).map(move |k| {
            let start = self.points[k];
            let width = if k + 1 < m {
                self.points[k + 1] - start
            } else {
                self.points[0] + TAU - start
            };
            Arc::span(start, width).expect("validated boundaries")
        })
    }

    pub fn widths(&self) -> Vec<f64> {
        let m = self.points.len();
        (0..m)
            .map(|k| {
                if k + 1 < m {
                    self.points[k + 1] - self.points[k]
                } else {
                    self.points[0] + TAU - self.points[k]
                }
            })
            .collect()
    }
}
