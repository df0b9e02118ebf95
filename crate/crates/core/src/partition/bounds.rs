use crate::angular::{AngularPdf, TAU};
use crate::error::{Error, Result};

/// Largest slot budget accepted for the unconstrained regime, where the
/// number of cells is `2^b`.
pub const MAX_UNCONSTRAINED_SLOTS: usize = 30;

/// Which beam shapes are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Arbitrary unions of arcs; up to `2^b` cells.
    Unconstrained,
    /// One arc per beam; up to `2b` cells.
    Contiguous,
}

impl Regime {
    /// Maximum number of uncertainty regions `b` probes can produce.
    pub fn max_cells(self, b: usize) -> usize {
        match self {
            Regime::Unconstrained => 1usize << b,
            Regime::Contiguous => 2 * b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Unconstrained => "unconstrained",
            Regime::Contiguous => "contiguous",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unconstrained" => Ok(Regime::Unconstrained),
            "contiguous" => Ok(Regime::Contiguous),
            other => Err(Error::InvalidScenario(format!("unknown constraint `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    /// `2^h / M` with `M` the regime's cell budget.
    pub lower: f64,
    /// Width achieved by the equal-cell construction.
    pub upper: f64,
    pub entropy_bits: f64,
    pub regime: Regime,
}

/// Entropy bounds on the optimal expected width with `b` probing slots.
pub fn bounds(pdf: &AngularPdf, b: usize, regime: Regime) -> Result<BoundsReport> {
    let max = match regime {
        Regime::Unconstrained => MAX_UNCONSTRAINED_SLOTS,
        Regime::Contiguous => usize::MAX / 2,
    };
    if b == 0 || b > max {
        return Err(Error::InvalidSlots { b, max });
    }
    let h = pdf.entropy_bits();
    let (lower, upper) = match regime {
        Regime::Unconstrained => ((h - b as f64).exp2(), TAU / (b as f64).exp2()),
        Regime::Contiguous => (h.exp2() / (2 * b) as f64, std::f64::consts::PI / b as f64),
    };
    Ok(BoundsReport {
        lower,
        upper,
        entropy_bits: h,
        regime,
    })
}
