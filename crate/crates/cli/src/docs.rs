//! JSON documents written by the CLI.

use serde::{Deserialize, Serialize};
use utastar_core::disagg::{
    kendall_tau, DisaggConfig, KendallTau, ModelParts, RankingChain, StepWeights, ValueModel,
};
use utastar_core::postopt::{ClassicalBounds, SolutionEnsemble};
use utastar_core::timeseries::{CriterionSpec, MeasureTensor, ScaleGrid, ScalePolicy};

use crate::error::CliResult;

pub const SCHEMA_VERSION: u32 = 1;

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub delta: f64,
    pub epsilon: f64,
    pub gamma: f64,
    pub variant: String,
}

impl ConfigDoc {
    pub fn new(config: &DisaggConfig) -> Self {
        Self {
            delta: config.delta,
            epsilon: config.epsilon,
            gamma: config.gamma,
            variant: config.variant.id().to_string(),
        }
    }

    pub fn to_config(&self) -> CliResult<DisaggConfig> {
        let config = DisaggConfig {
            delta: self.delta,
            epsilon: self.epsilon,
            gamma: self.gamma,
            variant: self.variant.parse()?,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionDoc {
    pub id: String,
    pub direction: String,
}

/// A fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub schema_version: u32,
    pub measures: Vec<String>,
    pub scale_policy: String,
    pub criteria: Vec<CriterionDoc>,
    /// `scales[k][j]` breakpoints
    pub scales: Vec<Vec<Vec<f64>>>,
    /// `weights[k][j][l]`
    pub weights: Vec<Vec<Vec<f64>>>,
    pub ranked: Vec<String>,
    pub sigma_plus: Vec<f64>,
    pub sigma_minus: Vec<f64>,
    pub z: f64,
    pub config: ConfigDoc,
}

impl ModelDoc {
    pub fn new(model: &ValueModel, policy: ScalePolicy) -> Self {
        let n = model.criteria().len();
        Self {
            schema_version: SCHEMA_VERSION,
            measures: model.measures().iter().map(|m| m.id().to_string()).collect(),
            scale_policy: policy.to_string(),
            criteria: model
                .criteria()
                .iter()
                .map(|c| CriterionDoc {
                    id: c.id.clone(),
                    direction: c.direction.to_string(),
                })
                .collect(),
            scales: model
                .scales()
                .chunks(n)
                .map(|row| row.iter().map(|g| g.breakpoints().to_vec()).collect())
                .collect(),
            weights: model.weights().to_nested(),
            ranked: model.ranked().to_vec(),
            sigma_plus: model.sigma_plus().to_vec(),
            sigma_minus: model.sigma_minus().to_vec(),
            z: model.objective(),
            config: ConfigDoc::new(model.config()),
        }
    }

    pub fn to_model(&self) -> CliResult<ValueModel> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(crate::error::CliError::Config(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let criteria = self
            .criteria
            .iter()
            .map(|c| Ok(CriterionSpec::new(c.id.clone(), c.direction.parse()?)))
            .collect::<CliResult<Vec<_>>>()?;
        let scales = self
            .scales
            .iter()
            .flatten()
            .map(|b| ScaleGrid::from_breakpoints(b.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let parts = ModelParts {
            measures: self
                .measures
                .iter()
                .map(|m| m.parse())
                .collect::<Result<Vec<_>, _>>()?,
            criteria,
            scales,
            weights: StepWeights::from_nested(self.weights.clone())?,
            ranked: self.ranked.clone(),
            sigma_plus: self.sigma_plus.clone(),
            sigma_minus: self.sigma_minus.clone(),
            objective: self.z,
            config: self.config.to_config()?,
        };
        Ok(ValueModel::from_parts(parts)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightRow {
    /// `w_{k}_{j}_{l}`, 1-based
    pub name: String,
    pub measure: String,
    pub criterion: String,
    pub step: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueRow {
    pub alternative: String,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KendallDoc {
    pub tau: f64,
    pub concordant: usize,
    pub discordant: usize,
    pub tied_pairs: usize,
}

impl From<KendallTau> for KendallDoc {
    fn from(k: KendallTau) -> Self {
        Self {
            tau: k.tau,
            concordant: k.concordant,
            discordant: k.discordant,
            tied_pairs: k.tied_pairs,
        }
    }
}

/// Summary of a fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema_version: u32,
    pub z: f64,
    pub config: ConfigDoc,
    /// Nonzero step weights only.
    pub weights: Vec<WeightRow>,
    /// `u_kj(c*)` per `[k][j]`.
    pub criterion_weights: Vec<Vec<f64>>,
    /// Best first.
    pub global_values: Vec<ValueRow>,
    pub model_ranking: Vec<Vec<String>>,
    pub dm_ranking: String,
    pub kendall_tau: KendallDoc,
}

/// Nonzero weights as named rows.
pub fn weight_rows(model: &ValueModel, weights: &StepWeights) -> Vec<WeightRow> {
    weights
        .indexed()
        .filter(|(_, _, _, w)| *w != 0.0)
        .map(|(k, j, l, w)| WeightRow {
            name: format!("w_{}_{}_{}", k + 1, j + 1, l + 1),
            measure: model.measures()[k].id().to_string(),
            criterion: model.criteria()[j].id.clone(),
            step: l + 1,
            value: w,
        })
        .collect()
}

impl ReportDoc {
    pub fn new(model: &ValueModel, measures: &MeasureTensor, ranking: &RankingChain) -> CliResult<Self> {
        let ranked = model.rank_alternatives(measures)?;
        // compare on the reference set only
        let in_reference = |id: &String| ranking.ids().contains(id);
        let model_classes: Vec<Vec<String>> = ranked
            .classes
            .iter()
            .map(|c| c.iter().filter(|id| in_reference(id)).cloned().collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect();
        let tau = kendall_tau(&ranking.classes(), &model_classes)?;
        let h = model.measures().len();
        let n = model.criteria().len();
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            z: model.objective(),
            config: ConfigDoc::new(model.config()),
            weights: weight_rows(model, model.weights()),
            criterion_weights: (0..h)
                .map(|k| (0..n).map(|j| model.weights().pair_total(k, j)).collect())
                .collect(),
            global_values: ranked
                .values
                .into_iter()
                .map(|(alternative, value)| ValueRow { alternative, value })
                .collect(),
            model_ranking: ranked.classes,
            dm_ranking: ranking.to_string(),
            kendall_tau: tau.into(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub measure: usize,
    pub criterion: usize,
    pub min: f64,
    pub max: f64,
    pub average: f64,
}

/// Classical post-optimization result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PostoptDoc {
    pub schema_version: u32,
    pub z: f64,
    pub gamma: f64,
    /// `z + gamma z`
    pub error_bound: f64,
    pub measures: Vec<String>,
    pub criteria: Vec<String>,
    /// Measure-major; indices are 1-based.
    pub rows: Vec<BoundsRow>,
    pub average_weights: Vec<Vec<Vec<f64>>>,
}

impl PostoptDoc {
    pub fn new(model: &ValueModel, bounds: &ClassicalBounds) -> Self {
        let z = model.objective();
        let gamma = model.config().gamma;
        Self {
            schema_version: SCHEMA_VERSION,
            z,
            gamma,
            error_bound: z + gamma * z,
            measures: model.measures().iter().map(|m| m.id().to_string()).collect(),
            criteria: model.criteria().iter().map(|c| c.id.clone()).collect(),
            rows: bounds
                .rows
                .iter()
                .map(|r| BoundsRow {
                    measure: r.measure + 1,
                    criterion: r.criterion + 1,
                    min: r.min,
                    max: r.max,
                    average: r.average,
                })
                .collect(),
            average_weights: bounds.average_weights.to_nested(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub count: usize,
    pub first_iteration: usize,
    pub objective: f64,
    pub mu: Vec<f64>,
    /// Iterations whose largest `mu` fell on each criterion.
    pub leader_counts: Vec<usize>,
    /// `Σ_k u_kj(c*)` per criterion.
    pub criterion_totals: Vec<f64>,
    pub w: Vec<Vec<Vec<f64>>>,
    pub sigma_plus: Vec<f64>,
    pub sigma_minus: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub criterion_totals: Vec<f64>,
    pub count: usize,
}

/// Monte Carlo simulation result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleDoc {
    pub schema_version: u32,
    pub iterations: usize,
    pub seed: u64,
    pub order: Option<Vec<String>>,
    pub z: f64,
    pub epsilon: f64,
    pub measures: Vec<String>,
    pub criteria: Vec<String>,
    pub entries: Vec<EntryDoc>,
    /// Entries grouped by criterion totals; these fix the objective for every `mu`.
    pub classes: Vec<ClassDoc>,
    pub weighted_average: Vec<Vec<Vec<f64>>>,
}

/// Tolerance for grouping entries into classes.
pub const CLASS_TOLERANCE: f64 = 1e-6;

impl EnsembleDoc {
    pub fn new(model: &ValueModel, ensemble: &SolutionEnsemble) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            iterations: ensemble.iterations,
            seed: ensemble.seed,
            order: ensemble.order.as_ref().map(|o| o.ids(model.criteria())),
            z: model.objective(),
            epsilon: model.config().epsilon,
            measures: model.measures().iter().map(|m| m.id().to_string()).collect(),
            criteria: model.criteria().iter().map(|c| c.id.clone()).collect(),
            entries: ensemble
                .entries
                .iter()
                .map(|e| EntryDoc {
                    count: e.count,
                    first_iteration: e.first_iteration,
                    objective: e.objective,
                    mu: e.mu.as_slice().to_vec(),
                    leader_counts: e.leader_counts.clone(),
                    criterion_totals: e.criterion_totals(),
                    w: e.weights.to_nested(),
                    sigma_plus: e.sigma_plus.clone(),
                    sigma_minus: e.sigma_minus.clone(),
                })
                .collect(),
            classes: ensemble
                .profile_classes(CLASS_TOLERANCE)
                .into_iter()
                .map(|(criterion_totals, count)| ClassDoc {
                    criterion_totals,
                    count,
                })
                .collect(),
            weighted_average: ensemble.weighted_average.to_nested(),
        }
    }
}
