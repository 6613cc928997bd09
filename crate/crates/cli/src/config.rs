//! Run configuration: an optional JSON file overlaid by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use utastar_core::disagg::{DisaggConfig, Variant};
use utastar_core::timeseries::{parse_measures, Direction, Measure, ScalePolicy};

use crate::error::{CliError, CliResult};

pub const DEFAULT_ITERATIONS: usize = 1000;
pub const DEFAULT_SEED: u64 = 42;

/// Every field optional so file and flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub tensor: Option<PathBuf>,
    pub ranking: Option<PathBuf>,
    pub out: Option<PathBuf>,
    /// e.g. `mean,slope`
    pub measures: Option<String>,
    /// `observed` or `equal:<alpha>`
    pub scale_policy: Option<String>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub gamma: Option<f64>,
    pub iterations: Option<usize>,
    pub seed: Option<u64>,
    /// e.g. `c1>c3>c2`
    pub criteria_order: Option<String>,
    /// e.g. `c1=max,c2=min`
    pub directions: Option<String>,
    pub plots: Option<bool>,
    pub raw_plots: Option<bool>,
    pub variant: Option<String>,
    pub threads: Option<usize>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($field:ident),*) => {
        RunConfig { $($field: $top.$field.or($base.$field)),* }
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("config `{}`: {e}", path.display())))
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay_fields!(base, top; tensor, ranking, out, measures, scale_policy, delta, epsilon,
            gamma, iterations, seed, criteria_order, directions, plots, raw_plots, variant, threads)
    }

    pub fn resolve(self) -> CliResult<Settings> {
        let require = |p: Option<PathBuf>, what: &str| {
            p.ok_or_else(|| CliError::Config(format!("no {what} given (flag --{what} or config key)")))
        };
        let defaults = DisaggConfig::default();
        let variant: Variant = match &self.variant {
            Some(v) => v.parse()?,
            None => defaults.variant,
        };
        let measures = match (&self.measures, variant) {
            (Some(list), _) => parse_measures(list)?,
            (None, Variant::UtastarT) => vec![Measure::Mean, Measure::Slope],
            (None, _) => vec![Measure::Last],
        };
        let policy = match &self.scale_policy {
            Some(p) => p.parse()?,
            None => ScalePolicy::ObservedValues,
        };
        let disagg = DisaggConfig {
            delta: self.delta.unwrap_or(defaults.delta),
            epsilon: self.epsilon.unwrap_or(defaults.epsilon),
            gamma: self.gamma.unwrap_or(defaults.gamma),
            variant,
        };
        disagg.validate()?;
        let iterations = self.iterations.unwrap_or(DEFAULT_ITERATIONS);
        if iterations == 0 {
            return Err(utastar_core::Error::ZeroIterations.into());
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        let directions = match &self.directions {
            Some(list) => parse_directions(list)?,
            None => Vec::new(),
        };
        Ok(Settings {
            tensor: require(self.tensor, "tensor")?,
            ranking: require(self.ranking, "ranking")?,
            out: require(self.out, "out")?,
            measures,
            policy,
            disagg,
            iterations,
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            criteria_order: self.criteria_order,
            directions,
            plots: self.plots.unwrap_or(false),
            raw_plots: self.raw_plots.unwrap_or(false),
            threads: self.threads,
        })
    }
}

/// Parses `c1=max,c2=min`.
pub fn parse_directions(list: &str) -> CliResult<Vec<(String, Direction)>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (id, dir) = pair
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("direction `{pair}` is not `criterion=max|min`")))?;
            Ok((id.trim().to_string(), dir.parse()?))
        })
        .collect()
}

/// Validated settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub tensor: PathBuf,
    pub ranking: PathBuf,
    pub out: PathBuf,
    pub measures: Vec<Measure>,
    pub policy: ScalePolicy,
    pub disagg: DisaggConfig,
    pub iterations: usize,
    pub seed: u64,
    pub criteria_order: Option<String>,
    pub directions: Vec<(String, Direction)>,
    pub plots: bool,
    pub raw_plots: bool,
    pub threads: Option<usize>,
}
