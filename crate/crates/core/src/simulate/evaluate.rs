use std::fmt;
use std::str::FromStr;

use super::monte_carlo::Empirical;
use super::scenario::Scenario;
use crate::angular::TAU;
use crate::error::{Error, Result};
use crate::partition::{bounds, expected_width, BoundsReport, Regime};
use crate::synthesis::{
    design_contiguous, design_unconstrained, es_codebook, halving_codebook, uniform_contiguous_codebook,
    Codebook,
};

/// Codebook families that can be evaluated side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    OptimalUnconstrained,
    OptimalContiguous,
    Halving,
    UniformContiguous,
    ExhaustiveSearch,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::OptimalUnconstrained,
        Scheme::OptimalContiguous,
        Scheme::Halving,
        Scheme::UniformContiguous,
        Scheme::ExhaustiveSearch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::OptimalUnconstrained => "optimal-unconstrained",
            Scheme::OptimalContiguous => "optimal-contiguous",
            Scheme::Halving => "halving",
            Scheme::UniformContiguous => "uniform-contiguous",
            Scheme::ExhaustiveSearch => "es",
        }
    }

    /// Which bound family applies to this scheme.
    pub fn regime(self) -> Regime {
        match self {
            Scheme::OptimalUnconstrained | Scheme::Halving => Regime::Unconstrained,
            _ => Regime::Contiguous,
        }
    }

    /// Builds the scheme's codebook for the scenario's mixture prior and
    /// probing budget.
    pub fn codebook(self, scenario: &Scenario, grid_points: usize) -> Result<Codebook> {
        let b = scenario.b();
        match self {
            Scheme::OptimalUnconstrained => {
                Ok(design_unconstrained(scenario.mixture(), b, grid_points)?.codebook)
            }
            Scheme::OptimalContiguous => Ok(design_contiguous(scenario.mixture(), b, grid_points)?.codebook),
            Scheme::Halving => halving_codebook(b),
            Scheme::UniformContiguous => uniform_contiguous_codebook(b),
            Scheme::ExhaustiveSearch => es_codebook(b),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidScenario(format!("unknown scheme `{s}`")))
    }
}

/// Performance of one codebook on one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub scheme: String,
    pub b: usize,
    /// Weighted expected uncertainty-region width, radians.
    pub analytic: f64,
    pub per_user: Vec<f64>,
    pub empirical: Option<Empirical>,
    pub bounds: BoundsReport,
    /// ES width `2pi/(b+1)` divided by `analytic`.
    pub gain_vs_es: f64,
    /// `(b + d) / T` when the frame is known.
    pub overhead: Option<f64>,
}

/// Expected width of ES with `b` slots, independent of the prior.
pub fn es_width(b: usize) -> f64 {
    TAU / (b + 1) as f64
}

/// Per-user and weighted expected widths of the codebook's uncertainty regions.
pub fn analytic_performance(
    scenario: &Scenario,
    codebook: &Codebook,
    scheme: &str,
) -> Result<EvaluationReport> {
    analytic_with_regime(scenario, codebook, scheme, codebook.constraint())
}

pub(crate) fn analytic_with_regime(
    scenario: &Scenario,
    codebook: &Codebook,
    scheme: &str,
    regime: Regime,
) -> Result<EvaluationReport> {
    let partition = codebook.induced_partition();
    let per_user: Vec<f64> = scenario
        .users()
        .iter()
        .map(|u| expected_width(&partition, &u.pdf))
        .collect();
    let analytic = scenario
        .users()
        .iter()
        .zip(&per_user)
        .map(|(u, w)| u.weight * w)
        .sum();
    let b = codebook.len();
    Ok(EvaluationReport {
        scheme: scheme.to_string(),
        b,
        analytic,
        per_user,
        empirical: None,
        bounds: bounds(scenario.mixture(), b, regime)?,
        gain_vs_es: es_width(b) / analytic,
        overhead: scenario.overhead(),
    })
}

/// Evaluates every scheme in [`Scheme::ALL`] on the scenario.
pub fn compare_schemes(scenario: &Scenario, grid_points: usize) -> Result<Vec<EvaluationReport>> {
    compare_selected(scenario, grid_points, &Scheme::ALL)
}

pub fn compare_selected(
    scenario: &Scenario,
    grid_points: usize,
    schemes: &[Scheme],
) -> Result<Vec<EvaluationReport>> {
    schemes
        .iter()
        .map(|&s| {
            let cb = s.codebook(scenario, grid_points)?;
            analytic_with_regime(scenario, &cb, s.name(), s.regime())
        })
        .collect()
}
