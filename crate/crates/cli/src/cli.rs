//! Argument parsing.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{cmd_fit, cmd_postopt, cmd_simulate};
use crate::config::RunConfig;
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "utastar", version, about = "Preference disaggregation over criteria time series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a value model to the ranking; writes model.json and report.json.
    Fit(RunArgs),
    /// Min/max post-optimization of every marginal function; writes postopt.json.
    Postopt(RunArgs),
    /// Monte Carlo weighted-sum exploration; writes ensemble.json.
    Simulate(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// CSV with header alternative,criterion,t,value
    #[arg(long)]
    pub tensor: Option<PathBuf>,
    /// One-line ranking, e.g. `A > B ~ C`
    #[arg(long)]
    pub ranking: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Default 42
    #[arg(long)]
    pub seed: Option<u64>,
    /// e.g. mean,slope
    #[arg(long)]
    pub measures: Option<String>,
    /// observed | equal:<alpha>
    #[arg(long)]
    pub scale_policy: Option<String>,
    /// e.g. c1>c3>c2
    #[arg(long)]
    pub criteria_order: Option<String>,
    /// e.g. c1=max,c2=min
    #[arg(long)]
    pub directions: Option<String>,
    /// Write one SVG per (measure, criterion)
    #[arg(long)]
    pub plots: bool,
    /// Plot raw instead of normalized marginal values
    #[arg(long)]
    pub raw_plots: bool,
    /// uta | utastar | utastar-t
    #[arg(long)]
    pub variant: Option<String>,
    /// Worker threads for simulate (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
}

impl RunArgs {
    pub fn to_config(&self) -> CliResult<RunConfig> {
        let file = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            tensor: self.tensor.clone(),
            ranking: self.ranking.clone(),
            out: self.out.clone(),
            measures: self.measures.clone(),
            scale_policy: self.scale_policy.clone(),
            delta: self.delta,
            epsilon: self.epsilon,
            gamma: self.gamma,
            iterations: self.iterations,
            seed: self.seed,
            criteria_order: self.criteria_order.clone(),
            directions: self.directions.clone(),
            plots: self.plots.then_some(true),
            raw_plots: self.raw_plots.then_some(true),
            variant: self.variant.clone(),
            threads: self.threads,
        };
        Ok(file.overlay(flags))
    }
}

/// Runs a command and writes its files; returns the summary.
pub fn run(command: &Command) -> CliResult<String> {
    let (args, exec): (&RunArgs, fn(&_) -> _) = match command {
        Command::Fit(a) => (a, cmd_fit),
        Command::Postopt(a) => (a, cmd_postopt),
        Command::Simulate(a) => (a, cmd_simulate),
    };
    let settings = args.to_config()?.resolve()?;
    let outcome = exec(&settings)?;
    outcome.write(&settings.out)?;
    Ok(outcome.summary)
}
