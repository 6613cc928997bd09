//! Exploring the set of optimal value models.
//!
//! Two analyses share the fitted error bound:
//!
//! - [`classical_minmax`] minimizes and maximizes every `u_kj(c*)` over the
//!   near-optimal polyhedron `z <= z* (1 + gamma)` and averages the solutions.
//! - [`mo_simulate`] repeatedly draws criterion weights `mu`, maximizes
//!   `Σ_j mu_j Σ_k u_kj(c*)` over `z <= z* + epsilon`, and counts how often
//!   each distinct optimal weight vector appears.
//!
//! Iteration `i` of a simulation draws its weights from a ChaCha stream keyed
//! by `(seed, i)`, so iterations can run in any order or in parallel and
//! [`SolutionEnsemble::from_outcomes`] still produces the same ensemble.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disagg::{build_program, DisaggConfig, DisaggProgram, RankingChain, StepWeights, ValueModel};
use crate::lp::{LinearProgram, LpStatus, Relation, Sense};
use crate::timeseries::{CriterionSpec, MeasureTensor};
use crate::{Error, Result};

/// Weight components are rounded to this grid before solutions are compared.
pub const DEDUP_PRECISION: f64 = 1e-6;

/// Criterion weights `mu_j` of a weighted-sum objective.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidConfig("criterion weights must lie in [0, 1]".into()));
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the largest component; the lowest index wins ties.
    pub fn leader(&self) -> usize {
        let mut best = 0;
        for (j, v) in self.0.iter().enumerate() {
            if *v > self.0[best] {
                best = j;
            }
        }
        best
    }

    /// Componentwise multiple, without the `[0, 1]` range check.
    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|v| v * factor).collect())
    }
}

/// Strict relevance order over criteria, most relevant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaOrder(Vec<usize>);

impl CriteriaOrder {
    /// From criterion indices; must be a permutation of `0..criteria`.
    pub fn from_indices(indices: Vec<usize>, criteria: usize) -> Result<Self> {
        let mut seen = vec![false; criteria];
        if indices.len() != criteria {
            return Err(Error::InvalidOrder(alloc::format!(
                "expected {criteria} criteria, got {}",
                indices.len()
            )));
        }
        for &j in &indices {
            match seen.get_mut(j) {
                Some(slot) if !*slot => *slot = true,
                _ => return Err(Error::InvalidOrder(alloc::format!("bad or repeated index {j}"))),
            }
        }
        Ok(Self(indices))
    }

    pub fn from_ids<S: AsRef<str>>(criteria: &[CriterionSpec], ids: &[S]) -> Result<Self> {
        let indices = ids
            .iter()
            .map(|id| {
                criteria
                    .iter()
                    .position(|c| c.id == id.as_ref())
                    .ok_or_else(|| Error::InvalidOrder(alloc::format!("unknown criterion `{}`", id.as_ref())))
            })
            .collect::<Result<Vec<usize>>>()?;
        Self::from_indices(indices, criteria.len())
    }

    /// Parses `c1>c3>c2`.
    pub fn parse(criteria: &[CriterionSpec], text: &str) -> Result<Self> {
        let ids: Vec<&str> = text.split('>').map(str::trim).collect();
        if ids.iter().any(|id| id.is_empty()) {
            return Err(Error::InvalidOrder(alloc::format!("malformed order `{text}`")));
        }
        Self::from_ids(criteria, &ids)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn ids(&self, criteria: &[CriterionSpec]) -> Vec<String> {
        self.0.iter().map(|&j| criteria[j].id.clone()).collect()
    }
}

/// Random stream of simulation iteration `iteration`.
pub fn iteration_rng(seed: u64, iteration: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration as u64);
    rng
}

/// Independent `U[0, 1)` draw per criterion, not normalized.
pub fn sample_mu<R: Rng + ?Sized>(rng: &mut R, criteria: usize) -> WeightVector {
    WeightVector((0..criteria).map(|_| rng.random::<f64>()).collect())
}

/// Draws one uniform per criterion and hands them out in descending order
/// along `order`.
pub fn sample_mu_ordered<R: Rng + ?Sized>(rng: &mut R, order: &CriteriaOrder) -> WeightVector {
    let draws: Vec<f64> = (0..order.0.len()).map(|_| rng.random::<f64>()).collect();
    assign_ordered(&draws, order)
}

/// Sorts `draws` descending and gives the largest to the most relevant
/// criterion. Equal draws are nudged down so the chain stays strict.
pub fn assign_ordered(draws: &[f64], order: &CriteriaOrder) -> WeightVector {
    let mut sorted = draws.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    for pos in 1..sorted.len() {
        if sorted[pos] >= sorted[pos - 1] {
            sorted[pos] = sorted[pos - 1].next_down().max(0.0);
        }
    }
    let mut mu = vec![0.0; draws.len()];
    for (&j, v) in order.0.iter().zip(sorted) {
        mu[j] = v;
    }
    WeightVector(mu)
}

/// One optimal point of a weighted-sum program.
#[derive(Debug, Clone, PartialEq)]
pub struct MoSolution {
    pub weights: StepWeights,
    pub sigma_plus: Vec<f64>,
    pub sigma_minus: Vec<f64>,
    /// Attained `Σ_j mu_j Σ_k u_kj(c*)`.
    pub objective: f64,
}

/// The fitting polyhedron with the total error bounded by `z* + epsilon`.
#[derive(Debug, Clone)]
pub struct MoProblem {
    program: DisaggProgram,
    criteria: usize,
}

impl MoProblem {
    pub fn new(
        measures: &MeasureTensor,
        ranking: &RankingChain,
        config: &DisaggConfig,
        fitted: &ValueModel,
    ) -> Result<Self> {
        let bound = fitted.objective().max(0.0) + config.epsilon;
        let program = bounded_program(measures, ranking, config, bound)?;
        Ok(Self {
            program,
            criteria: measures.criteria().len(),
        })
    }

    pub fn program(&self) -> &DisaggProgram {
        &self.program
    }

    /// The bounded polyhedron (with the fitting objective).
    pub fn polyhedron(&self) -> &LinearProgram {
        self.program.lp()
    }

    /// Full LP assignment for a stored solution.
    pub fn assignment(&self, weights: &StepWeights, sigma_plus: &[f64], sigma_minus: &[f64]) -> Result<Vec<f64>> {
        self.program.assignment_with_errors(weights, sigma_plus, sigma_minus)
    }

    pub fn solve(&self, mu: &WeightVector) -> Result<MoSolution> {
        self.solve_raw(mu).map_err(|status| Error::Solver {
            status,
            context: "weighted-sum program",
        })
    }

    fn solve_raw(&self, mu: &WeightVector) -> core::result::Result<MoSolution, LpStatus> {
        if mu.len() != self.criteria {
            return Err(LpStatus::NumericalFailure);
        }
        let mut lp = self.program.lp().clone();
        let terms: Vec<_> = (0..self.criteria)
            .flat_map(|j| self.program.criterion_terms(j, mu.0[j]))
            .collect();
        lp.set_objective(Sense::Maximize, &terms)
            .map_err(|_| LpStatus::NumericalFailure)?;
        let solution = lp.solve();
        if solution.status != LpStatus::Optimal {
            return Err(solution.status);
        }
        let (sigma_plus, sigma_minus) = self.program.errors_from(&solution.values);
        Ok(MoSolution {
            weights: self.program.weights_from(&solution.values),
            sigma_plus,
            sigma_minus,
            objective: solution.objective,
        })
    }

    /// Draws the weights of `iteration` and solves.
    pub fn run_iteration(
        &self,
        seed: u64,
        iteration: usize,
        order: Option<&CriteriaOrder>,
    ) -> Result<IterationOutcome> {
        let mut rng = iteration_rng(seed, iteration);
        let mu = match order {
            Some(order) => sample_mu_ordered(&mut rng, order),
            None => sample_mu(&mut rng, self.criteria),
        };
        let solution = self
            .solve_raw(&mu)
            .map_err(|status| Error::Simulation { iteration, status })?;
        Ok(IterationOutcome {
            iteration,
            mu,
            solution,
        })
    }
}

fn bounded_program(
    measures: &MeasureTensor,
    ranking: &RankingChain,
    config: &DisaggConfig,
    bound: f64,
) -> Result<DisaggProgram> {
    let mut program = build_program(measures, ranking, config)?;
    let errors = program.error_terms();
    program.lp_mut().add_constraint(&errors, Relation::Le, bound)?;
    Ok(program)
}

/// Solves one weighted-sum program with criterion weights `mu`.
pub fn mo_solve(
    measures: &MeasureTensor,
    ranking: &RankingChain,
    config: &DisaggConfig,
    fitted: &ValueModel,
    mu: &WeightVector,
) -> Result<MoSolution> {
    MoProblem::new(measures, ranking, config, fitted)?.solve(mu)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationOutcome {
    pub iteration: usize,
    pub mu: WeightVector,
    pub solution: MoSolution,
}

/// A distinct optimal weight vector and how often it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleEntry {
    /// Weights of the first iteration that produced this entry.
    pub weights: StepWeights,
    pub sigma_plus: Vec<f64>,
    pub sigma_minus: Vec<f64>,
    /// Objective attained by the representative under its own `mu`.
    pub objective: f64,
    pub mu: WeightVector,
    pub first_iteration: usize,
    pub count: usize,
    /// Per criterion: iterations mapped here whose `mu` peaked on that criterion.
    pub leader_counts: Vec<usize>,
    key: StepWeights,
}

impl EnsembleEntry {
    /// Rebuilds an entry from stored fields.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        weights: StepWeights,
        sigma_plus: Vec<f64>,
        sigma_minus: Vec<f64>,
        objective: f64,
        mu: WeightVector,
        first_iteration: usize,
        count: usize,
        leader_counts: Vec<usize>,
    ) -> Self {
        let key = dedup_key(&weights);
        Self {
            weights,
            sigma_plus,
            sigma_minus,
            objective,
            mu,
            first_iteration,
            count,
            leader_counts,
            key,
        }
    }

    /// `Σ_k u_kj(c*)` per criterion; fixes the objective under any `mu`.
    pub fn criterion_totals(&self) -> Vec<f64> {
        self.weights.criterion_totals()
    }
}

fn dedup_key(weights: &StepWeights) -> StepWeights {
    weights.map(|w| libm::round(w / DEDUP_PRECISION) * DEDUP_PRECISION)
}

/// Distinct solutions of a simulation with occurrence counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionEnsemble {
    pub iterations: usize,
    pub seed: u64,
    pub order: Option<CriteriaOrder>,
    /// In order of first appearance.
    pub entries: Vec<EnsembleEntry>,
    pub weighted_average: StepWeights,
}

impl SolutionEnsemble {
    /// Merges per-iteration outcomes. The result does not depend on the order
    /// in which outcomes arrive.
    pub fn from_outcomes(
        seed: u64,
        order: Option<CriteriaOrder>,
        mut outcomes: Vec<IterationOutcome>,
    ) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::ZeroIterations);
        }
        outcomes.sort_by_key(|o| o.iteration);
        let iterations = outcomes.len();
        let mut entries: Vec<EnsembleEntry> = Vec::new();
        for outcome in outcomes {
            let key = dedup_key(&outcome.solution.weights);
            let leader = outcome.mu.leader();
            let existing = entries.iter_mut().find(|e| {
                e.key
                    .max_difference(&key)
                    .is_some_and(|d| d <= DEDUP_PRECISION * (1.0 + 1e-9))
            });
            match existing {
                Some(entry) => {
                    entry.count += 1;
                    entry.leader_counts[leader] += 1;
                }
                None => {
                    let mut leader_counts = vec![0; outcome.mu.len()];
                    leader_counts[leader] = 1;
                    entries.push(EnsembleEntry {
                        weights: outcome.solution.weights,
                        sigma_plus: outcome.solution.sigma_plus,
                        sigma_minus: outcome.solution.sigma_minus,
                        objective: outcome.solution.objective,
                        mu: outcome.mu,
                        first_iteration: outcome.iteration,
                        count: 1,
                        leader_counts,
                        key,
                    });
                }
            }
        }
        let weighted_average = weighted_average(entries.iter().map(|e| (&e.weights, e.count)))?;
        Ok(Self {
            iterations,
            seed,
            order,
            entries,
            weighted_average,
        })
    }

    pub fn recompute_weighted_average(&self) -> Result<StepWeights> {
        weighted_average(self.entries.iter().map(|e| (&e.weights, e.count)))
    }

    /// Groups entries whose criterion totals agree within `tolerance`;
    /// returns `(totals, summed count)` in order of first appearance.
    pub fn profile_classes(&self, tolerance: f64) -> Vec<(Vec<f64>, usize)> {
        let mut classes: Vec<(Vec<f64>, usize)> = Vec::new();
        for entry in &self.entries {
            let totals = entry.criterion_totals();
            let found = classes.iter_mut().find(|(t, _)| {
                t.iter().zip(&totals).all(|(a, b)| (a - b).abs() <= tolerance)
            });
            match found {
                Some((_, count)) => *count += entry.count,
                None => classes.push((totals, entry.count)),
            }
        }
        classes
    }
}

/// Occurrence-weighted mean `Σ count · w / Σ count`, componentwise.
pub fn weighted_average<'a, I>(items: I) -> Result<StepWeights>
where
    I: IntoIterator<Item = (&'a StepWeights, usize)>,
{
    let mut iter = items.into_iter();
    let (first, first_count) = iter.next().ok_or(Error::EmptyEnsemble)?;
    let mut sum = first.map(|w| w * first_count as f64);
    let mut total = first_count;
    for (weights, count) in iter {
        if !weights.same_shape(first) {
            return Err(Error::DimensionMismatch {
                what: "ensemble weights",
                expected: first.flat().count(),
                got: weights.flat().count(),
            });
        }
        for (k, j, l, w) in weights.indexed() {
            sum.steps_mut(k, j)[l] += w * count as f64;
        }
        total += count;
    }
    if total == 0 {
        return Err(Error::EmptyEnsemble);
    }
    Ok(sum.map(|w| w / total as f64))
}

/// Runs `iterations` weighted-sum draws serially.
#[allow(clippy::too_many_arguments)]
pub fn mo_simulate(
    measures: &MeasureTensor,
    ranking: &RankingChain,
    config: &DisaggConfig,
    fitted: &ValueModel,
    iterations: usize,
    seed: u64,
    order: Option<&CriteriaOrder>,
) -> Result<SolutionEnsemble> {
    if iterations == 0 {
        return Err(Error::ZeroIterations);
    }
    let problem = MoProblem::new(measures, ranking, config, fitted)?;
    let outcomes = (0..iterations)
        .map(|i| problem.run_iteration(seed, i, order))
        .collect::<Result<Vec<_>>>()?;
    SolutionEnsemble::from_outcomes(seed, order.cloned(), outcomes)
}

/// Range of `u_kj(c*)` over the near-optimal polyhedron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairBounds {
    pub measure: usize,
    pub criterion: usize,
    pub min: f64,
    pub max: f64,
    /// `u_kj(c*)` of the averaged solution.
    pub average: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalBounds {
    /// `(k, j)` in measure-major order.
    pub rows: Vec<PairBounds>,
    /// Mean of all `2 n h` extreme solutions.
    pub average_weights: StepWeights,
}

/// Minimizes and maximizes every `u_kj(c*)` subject to the fitting
/// constraints and `z <= z* + gamma z*`.
pub fn classical_minmax(
    measures: &MeasureTensor,
    ranking: &RankingChain,
    config: &DisaggConfig,
    fitted: &ValueModel,
) -> Result<ClassicalBounds> {
    let z = fitted.objective().max(0.0);
    let program = bounded_program(measures, ranking, config, z + config.gamma * z)?;
    let (h, n) = (measures.measures().len(), measures.criteria().len());
    let mut rows = Vec::with_capacity(h * n);
    let mut solutions = Vec::with_capacity(2 * h * n);
    for k in 0..h {
        for j in 0..n {
            let terms: Vec<_> = program.weight_vars(k, j).iter().map(|v| (*v, 1.0)).collect();
            let mut extremes = [0.0; 2];
            for (slot, sense) in [Sense::Minimize, Sense::Maximize].into_iter().enumerate() {
                let mut lp = program.lp().clone();
                lp.set_objective(sense, &terms)?;
                let solution = lp.solve();
                if solution.status != LpStatus::Optimal {
                    return Err(Error::Solver {
                        status: solution.status,
                        context: "post-optimization program",
                    });
                }
                extremes[slot] = solution.objective;
                solutions.push(program.weights_from(&solution.values));
            }
            rows.push(PairBounds {
                measure: k,
                criterion: j,
                min: extremes[0],
                max: extremes[1],
                average: 0.0,
            });
        }
    }
    let average_weights = weighted_average(solutions.iter().map(|w| (w, 1)))?;
    for row in &mut rows {
        row.average = average_weights.pair_total(row.measure, row.criterion);
    }
    Ok(ClassicalBounds {
        rows,
        average_weights,
    })
}
