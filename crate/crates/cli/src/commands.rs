//! Subcommand implementations.

use std::io::Write;
use std::path::{Path, PathBuf};

use beamalign::partition::{bounds, Regime};
use beamalign::simulate::{
    analytic_performance, compare_selected, run_monte_carlo, EvaluationReport, Scheme,
};
use beamalign::synthesis::Codebook;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::brange::parse_b_range;
use crate::codebook_file::{quantize, read_codebook, CodebookFile};
use crate::error::{CliError, Result};
use crate::output;
use crate::scenario_file::{parse_scenario, ResolvedScenario};

#[derive(Debug, Parser)]
#[command(
    name = "beamalign",
    version,
    about = "Design and evaluate beam-alignment scanning codebooks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Design the optimal codebook for the scenario's constraint.
    Design(RunArgs),
    /// Monte Carlo evaluation of a codebook file or a named scheme.
    Simulate(SimulateArgs),
    /// Evaluate schemes over a range of slot counts.
    Sweep(RunArgs),
    /// Entropy bounds for a range of slot counts.
    Bounds(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Scenario JSON file.
    #[arg(long)]
    pub scenario: PathBuf,
    /// Output directory; tables go to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Scheme name, or a comma-separated list for `sweep`.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Slot count `n` or inclusive range `lo..hi`.
    #[arg(long = "b")]
    pub b: Option<String>,
    /// Candidate grid size for the boundary optimizer.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Monte Carlo samples per user; `1e5` style accepted.
    #[arg(long, value_parser = parse_count)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Codebook JSON file; overrides `--scheme`.
    #[arg(long)]
    pub codebook: Option<PathBuf>,
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("`{s}` is not a non-negative integer")),
    }
}

/// Scenario with command-line overrides applied.
struct Context {
    resolved: ResolvedScenario,
    path: PathBuf,
    grid_points: usize,
    samples: u64,
    seed: u64,
}

impl Context {
    fn load(args: &RunArgs) -> Result<Self> {
        let resolved = parse_scenario(&args.scenario)?;
        let grid_points = args.grid.unwrap_or(resolved.grid_points);
        if grid_points == 0 {
            return Err(CliError::Usage("--grid must be positive".into()));
        }
        let samples = args.samples.unwrap_or(resolved.samples);
        let seed = args.seed.unwrap_or(resolved.seed);
        Ok(Context {
            path: args.scenario.clone(),
            grid_points,
            samples,
            seed,
            resolved,
        })
    }

    fn b_values(&self, b: Option<&str>) -> Result<Vec<usize>> {
        match b {
            Some(s) => Ok(parse_b_range(s)?.collect()),
            None => Ok(vec![self.resolved.scenario.b()]),
        }
    }

    fn single_b(&self, b: Option<&str>) -> Result<beamalign::simulate::Scenario> {
        let values = self.b_values(b)?;
        if values.len() != 1 {
            return Err(CliError::Usage("this command takes a single --b value".into()));
        }
        self.resolved
            .scenario
            .with_slots(values[0])
            .map_err(|e| CliError::invariant("b", e))
    }

    fn constraint(&self) -> Regime {
        self.resolved.scenario.constraint()
    }

    fn echo(&self, command: &str, extra: serde_json::Value) -> serde_json::Value {
        let f = &self.resolved.file;
        let mut v = json!({
            "command": command,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "scenario": self.path.display().to_string(),
            "schema_version": f.schema_version,
            "users": f.users.len(),
            "b": self.resolved.scenario.b(),
            "constraint": self.constraint().name(),
            "grid_points": self.grid_points,
            "samples": self.samples,
            "seed": self.seed,
            "d": f.d,
            "T": f.t,
        });
        if let (Some(map), serde_json::Value::Object(extra)) = (v.as_object_mut(), extra) {
            map.extend(extra);
        }
        v
    }
}

fn default_scheme(constraint: Regime) -> Scheme {
    match constraint {
        Regime::Unconstrained => Scheme::OptimalUnconstrained,
        Regime::Contiguous => Scheme::OptimalContiguous,
    }
}

fn parse_scheme(s: &str) -> Result<Scheme> {
    s.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "unknown scheme `{s}`; expected one of {}",
            scheme_names()
        ))
    })
}

fn scheme_names() -> String {
    Scheme::ALL.map(Scheme::name).join(", ")
}

/// Comma-separated filter; `None` selects every scheme.
fn parse_scheme_list(s: Option<&str>) -> Result<Vec<Scheme>> {
    let Some(s) = s else {
        return Ok(Scheme::ALL.to_vec());
    };
    let list: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    if list.is_empty() {
        return Err(CliError::Usage("--scheme filter selects no schemes".into()));
    }
    let mut out = Vec::with_capacity(list.len());
    for name in list {
        let k = parse_scheme(name)?;
        if !out.contains(&k) {
            out.push(k);
        }
    }
    Ok(out)
}

struct Outputs {
    dir: Option<PathBuf>,
}

impl Outputs {
    fn new(dir: Option<&Path>) -> Result<Self> {
        if let Some(d) = dir {
            std::fs::create_dir_all(d).map_err(|e| CliError::io(d, e))?;
        }
        Ok(Outputs {
            dir: dir.map(Path::to_path_buf),
        })
    }

    fn file<F>(&self, name: &str, f: F) -> Result<()>
    where
        F: FnOnce(&mut dyn Write, &Path) -> Result<()>,
    {
        if let Some(dir) = &self.dir {
            let path = dir.join(name);
            output::to_file(&path, |w| f(w, &path))?;
            log::info!("wrote {}", path.display());
        }
        Ok(())
    }

    /// Writes to the file when an output directory is set, and to stdout.
    fn table<F>(&self, name: &str, f: F) -> Result<()>
    where
        F: Fn(&mut dyn Write, &Path) -> Result<()>,
    {
        self.file(name, &f)?;
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        f(&mut lock, Path::new("<stdout>"))
    }

    fn json(&self, name: &str, value: &serde_json::Value) -> Result<()> {
        self.file(name, |w, path| {
            let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
            text.push('\n');
            w.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))
        })
    }
}

fn codebook_for(scheme: Scheme, scenario: &beamalign::simulate::Scenario, grid: usize) -> Result<Codebook> {
    let cb = scheme
        .codebook(scenario, grid)
        .map_err(|e| CliError::from_core(format!("scheme {scheme}"), e))?;
    quantize(&cb)
}

fn write_listings(
    out: &Outputs,
    codebook: &Codebook,
    scenario: &beamalign::simulate::Scenario,
) -> Result<()> {
    out.file("codebook.json", |w, path| {
        w.write_all(CodebookFile::from_codebook(codebook).to_json().as_bytes())
            .map_err(|e| CliError::io(path, e))
    })?;
    out.file("beams.csv", |w, path| output::write_beams(w, codebook, path))?;
    out.file("cells.csv", |w, path| {
        output::write_cells(w, codebook, scenario.mixture(), path)
    })
}

pub fn cmd_design(args: &RunArgs) -> Result<Vec<EvaluationReport>> {
    let ctx = Context::load(args)?;
    let scenario = ctx.single_b(args.b.as_deref())?;
    let scheme = match &args.scheme {
        Some(s) => parse_scheme(s)?,
        None => default_scheme(ctx.constraint()),
    };
    // evaluated on the beams as written, so a re-read reproduces the value
    let codebook = codebook_for(scheme, &scenario, ctx.grid_points)?;
    let report = analytic_performance(&scenario, &codebook, scheme.name())
        .map_err(|e| CliError::from_core("evaluation", e))?;
    let out = Outputs::new(args.out.as_deref())?;
    write_listings(&out, &codebook, &scenario)?;
    let reports = vec![report];
    out.table("results.csv", |w, p| output::write_results(w, &reports, p))?;
    out.json(
        "run.json",
        &ctx.echo("design", json!({"b": scenario.b(), "schemes": [scheme.name()]})),
    )?;
    Ok(reports)
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<Vec<EvaluationReport>> {
    let run = &args.run;
    let ctx = Context::load(run)?;
    let scenario = ctx.single_b(run.b.as_deref())?;
    if ctx.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let (codebook, label, source) = match &args.codebook {
        Some(path) => {
            let cb = read_codebook(path)?;
            (cb, "codebook".to_string(), path.display().to_string())
        }
        None => {
            let scheme = match &run.scheme {
                Some(s) => parse_scheme(s)?,
                None => default_scheme(ctx.constraint()),
            };
            let cb = codebook_for(scheme, &scenario, ctx.grid_points)?;
            (cb, scheme.name().to_string(), scheme.name().to_string())
        }
    };
    if codebook.len() != scenario.b() {
        return Err(CliError::invariant(
            "codebook",
            format!(
                "{} beams but the scenario has b = {}",
                codebook.len(),
                scenario.b()
            ),
        ));
    }
    let report = run_monte_carlo(&scenario, &codebook, ctx.samples, ctx.seed, &label)
        .map_err(|e| CliError::from_core("simulation", e))?;
    let out = Outputs::new(run.out.as_deref())?;
    write_listings(&out, &codebook, &scenario)?;
    let reports = vec![report];
    out.table("results.csv", |w, p| output::write_results(w, &reports, p))?;
    out.json(
        "run.json",
        &ctx.echo("simulate", json!({"b": scenario.b(), "codebook": source})),
    )?;
    Ok(reports)
}

pub fn cmd_sweep(args: &RunArgs) -> Result<Vec<EvaluationReport>> {
    let ctx = Context::load(args)?;
    let schemes = parse_scheme_list(args.scheme.as_deref())?;
    let bs = ctx.b_values(args.b.as_deref())?;
    let mut reports = Vec::new();
    for &b in &bs {
        let scenario = ctx
            .resolved
            .scenario
            .with_slots(b)
            .map_err(|e| CliError::invariant("b", e))?;
        let rows = compare_selected(&scenario, ctx.grid_points, &schemes)
            .map_err(|e| CliError::from_core(format!("b = {b}"), e))?;
        reports.extend(rows);
    }
    let out = Outputs::new(args.out.as_deref())?;
    out.file("results.csv", |w, p| output::write_results(w, &reports, p))?;
    out.table("sweep.csv", |w, p| output::write_sweep(w, &reports, p))?;
    out.json(
        "run.json",
        &ctx.echo(
            "sweep",
            json!({
                "b_values": bs,
                "schemes": schemes.iter().map(|s| s.name()).collect::<Vec<_>>(),
            }),
        ),
    )?;
    Ok(reports)
}

pub fn cmd_bounds(args: &RunArgs) -> Result<Vec<(usize, beamalign::partition::BoundsReport)>> {
    let ctx = Context::load(args)?;
    let bs = ctx.b_values(args.b.as_deref())?;
    let mixture = ctx.resolved.scenario.mixture();
    let mut rows = Vec::new();
    for &b in &bs {
        for regime in output::regimes_for(ctx.constraint()) {
            let r = bounds(mixture, b, regime).map_err(|e| CliError::invariant(format!("b = {b}"), e))?;
            rows.push((b, r));
        }
    }
    let out = Outputs::new(args.out.as_deref())?;
    out.table("bounds.csv", |w, p| output::write_bounds(w, &rows, p))?;
    out.json("run.json", &ctx.echo("bounds", json!({"b_values": bs})))?;
    Ok(rows)
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Design(a) => cmd_design(a).map(drop),
        Command::Simulate(a) => cmd_simulate(a).map(drop),
        Command::Sweep(a) => cmd_sweep(a).map(drop),
        Command::Bounds(a) => cmd_bounds(a).map(drop),
    }
}
