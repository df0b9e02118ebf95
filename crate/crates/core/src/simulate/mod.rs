//! Scenario evaluation: analytic expected widths, Monte Carlo simulation of
//! the probe/feedback protocol and cross-scheme comparison.

mod evaluate;
mod monte_carlo;
mod scenario;

pub use evaluate::{
    analytic_performance, compare_schemes, compare_selected, es_width, EvaluationReport, Scheme,
};
pub use monte_carlo::{run_monte_carlo, run_monte_carlo_sharded, Empirical};
pub use scenario::{Scenario, User};
