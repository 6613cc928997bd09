//! Parallel Monte Carlo simulation.

use rayon::prelude::*;
use utastar_core::disagg::{DisaggConfig, RankingChain, ValueModel};
use utastar_core::postopt::{CriteriaOrder, MoProblem, SolutionEnsemble};
use utastar_core::timeseries::MeasureTensor;

use crate::error::{CliError, CliResult};

/// Runs the iterations on `threads` workers (all cores when `None`). The
/// ensemble does not depend on the worker count.
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    measures: &MeasureTensor,
    ranking: &RankingChain,
    config: &DisaggConfig,
    fitted: &ValueModel,
    iterations: usize,
    seed: u64,
    order: Option<&CriteriaOrder>,
    threads: Option<usize>,
) -> CliResult<SolutionEnsemble> {
    if iterations == 0 {
        return Err(utastar_core::Error::ZeroIterations.into());
    }
    let problem = MoProblem::new(measures, ranking, config, fitted)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let outcomes = pool.install(|| {
        (0..iterations)
            .into_par_iter()
            .map(|i| problem.run_iteration(seed, i, order))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(SolutionEnsemble::from_outcomes(seed, order.cloned(), outcomes)?)
}
