//! UTA, UTASTAR and UTASTAR-T disaggregation programs and fitted value models.
//!
//! Every marginal value function `u_kj` is piecewise linear on the scale of
//! its (measure, criterion) pair and is parameterized by its non-negative
//! step increments `w_kjl`, so monotonicity holds by construction. The global
//! value of an alternative is the sum of all marginal values. The fitting
//! program minimizes the over/under-estimation errors needed to reproduce the
//! decision-maker's ranking with a gap of at least `delta` between strictly
//! preferred neighbours.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::lp::{LinearProgram, LpStatus, Relation, Sense, VarId};
use crate::timeseries::{CriterionSpec, Measure, MeasureTensor, ScaleGrid};
use crate::{Error, Result};

/// Global values closer than this are reported as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preference {
    /// `a ≻ b`
    Strict,
    /// `a ∼ b`
    Indifferent,
}

/// The decision-maker's weak order over reference alternatives, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingChain {
    ids: Vec<String>,
    // links[i] relates ids[i] and ids[i + 1]
    links: Vec<Preference>,
}

impl RankingChain {
    pub fn new(ids: Vec<String>, links: Vec<Preference>) -> Result<Self> {
        if ids.len() < 2 {
            return Err(Error::RankingTooShort);
        }
        if links.len() != ids.len() - 1 {
            return Err(Error::DimensionMismatch {
                what: "ranking links",
                expected: ids.len() - 1,
                got: links.len(),
            });
        }
        for (pos, id) in ids.iter().enumerate() {
            if ids[..pos].contains(id) {
                return Err(Error::RepeatedInRanking(id.clone()));
            }
        }
        Ok(Self { ids, links })
    }

    /// A chain of strict preferences.
    pub fn strict<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        let links = vec![Preference::Strict; ids.len().saturating_sub(1)];
        Self::new(ids, links)
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn links(&self) -> &[Preference] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Indifference classes, best first.
    pub fn classes(&self) -> Vec<Vec<String>> {
        let mut classes = vec![vec![self.ids[0].clone()]];
        for (id, link) in self.ids[1..].iter().zip(&self.links) {
            match link {
                Preference::Strict => classes.push(vec![id.clone()]),
                Preference::Indifferent => classes
                    .last_mut()
                    .expect("at least one class")
                    .push(id.clone()),
            }
        }
        classes
    }

    /// The same chain read worst-first.
    pub fn reversed(&self) -> Self {
        Self {
            ids: self.ids.iter().rev().cloned().collect(),
            links: self.links.iter().rev().copied().collect(),
        }
    }
}

impl FromStr for RankingChain {
    type Err = Error;

    /// Parses `MY > RU ~ TR`; error columns are 1-based character positions.
    fn from_str(text: &str) -> Result<Self> {
        let parse_error = |column: usize, message: &str| Error::Parse {
            column,
            message: message.to_string(),
        };
        let chars: Vec<char> = text.chars().collect();
        let mut ids = Vec::new();
        let mut links = Vec::new();
        let mut pos = 0;
        let mut expect_id = true;
        loop {
            while pos < chars.len() && chars[pos].is_whitespace() {
                pos += 1;
            }
            if pos == chars.len() {
                break;
            }
            let c = chars[pos];
            let is_op = c == '>' || c == '~';
            if expect_id {
                if is_op {
                    return Err(parse_error(
                        pos + 1,
                        &alloc::format!("expected an alternative identifier, found `{c}`"),
                    ));
                }
                let start = pos;
                while pos < chars.len()
                    && !chars[pos].is_whitespace()
                    && chars[pos] != '>'
                    && chars[pos] != '~'
                {
                    pos += 1;
                }
                let id: String = chars[start..pos].iter().collect();
                if ids.contains(&id) {
                    return Err(parse_error(
                        start + 1,
                        &alloc::format!("alternative `{id}` appears more than once"),
                    ));
                }
                ids.push(id);
            } else {
                if !is_op {
                    return Err(parse_error(pos + 1, "expected `>` or `~` between alternatives"));
                }
                links.push(if c == '>' {
                    Preference::Strict
                } else {
                    Preference::Indifferent
                });
                pos += 1;
            }
            expect_id = !expect_id;
        }
        if ids.is_empty() {
            return Err(parse_error(1, "empty ranking"));
        }
        if expect_id {
            return Err(parse_error(
                chars.len() + 1,
                "ranking ends with an operator; expected an alternative identifier",
            ));
        }
        Self::new(ids, links)
    }
}

impl fmt::Display for RankingChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ids[0])?;
        for (id, link) in self.ids[1..].iter().zip(&self.links) {
            let op = match link {
                Preference::Strict => '>',
                Preference::Indifferent => '~',
            };
            write!(f, " {op} {id}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// Single error per alternative, static criteria.
    Uta,
    /// Double errors, static criteria.
    Utastar,
    /// Double errors, one value function per (measure, criterion) pair.
    #[default]
    UtastarT,
}

impl Variant {
    pub fn id(self) -> &'static str {
        match self {
            Variant::Uta => "uta",
            Variant::Utastar => "utastar",
            Variant::UtastarT => "utastar-t",
        }
    }

    fn has_overestimation(self) -> bool {
        self != Variant::Uta
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uta" => Ok(Variant::Uta),
            "utastar" => Ok(Variant::Utastar),
            "utastar-t" | "utastar_t" | "utastart" => Ok(Variant::UtastarT),
            other => Err(Error::InvalidConfig(alloc::format!("unknown variant `{other}`"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisaggConfig {
    /// Minimum global-value gap between strictly preferred neighbours.
    pub delta: f64,
    /// Slack on the error bound in the multi-objective exploration.
    pub epsilon: f64,
    /// Relative slack on the error bound in classical post-optimization.
    pub gamma: f64,
    pub variant: Variant,
}

impl Default for DisaggConfig {
    fn default() -> Self {
        Self {
            delta: 0.05,
            epsilon: 1e-6,
            gamma: 0.01,
            variant: Variant::UtastarT,
        }
    }
}

impl DisaggConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(Error::InvalidConfig("delta must be a positive number".into()));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidConfig("epsilon must be non-negative".into()));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::InvalidConfig("gamma must be non-negative".into()));
        }
        Ok(())
    }
}

/// Step increments `w[k][j][l]` of all marginal value functions.
#[derive(Debug, Clone, PartialEq)]
pub struct StepWeights {
    measures: usize,
    criteria: usize,
    // k * criteria + j
    steps: Vec<Vec<f64>>,
}

impl StepWeights {
    /// All-zero weights shaped after the scales of `measures`.
    pub fn zeros(measures: &MeasureTensor) -> Self {
        Self {
            measures: measures.measures().len(),
            criteria: measures.criteria().len(),
            steps: measures
                .scales()
                .iter()
                .map(|g| vec![0.0; g.segments()])
                .collect(),
        }
    }

    /// From nested `[k][j][l]` vectors; every (k, j) needs at least one step.
    pub fn from_nested(nested: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let measures = nested.len();
        let criteria = nested.first().map_or(0, Vec::len);
        if measures == 0 || criteria == 0 {
            return Err(Error::EmptyTensor("weights"));
        }
        let mut steps = Vec::with_capacity(measures * criteria);
        for per_measure in nested {
            if per_measure.len() != criteria {
                return Err(Error::DimensionMismatch {
                    what: "weights per measure",
                    expected: criteria,
                    got: per_measure.len(),
                });
            }
            for s in per_measure {
                if s.is_empty() {
                    return Err(Error::EmptyTensor("weight steps"));
                }
                if s.iter().any(|w| !w.is_finite()) {
                    return Err(Error::NonFiniteCoefficient("weights"));
                }
                steps.push(s);
            }
        }
        Ok(Self {
            measures,
            criteria,
            steps,
        })
    }

    pub fn measures(&self) -> usize {
        self.measures
    }

    pub fn criteria(&self) -> usize {
        self.criteria
    }

    pub fn steps(&self, measure: usize, criterion: usize) -> &[f64] {
        &self.steps[measure * self.criteria + criterion]
    }

    pub fn steps_mut(&mut self, measure: usize, criterion: usize) -> &mut [f64] {
        &mut self.steps[measure * self.criteria + criterion]
    }

    pub fn get(&self, measure: usize, criterion: usize, step: usize) -> f64 {
        self.steps(measure, criterion)[step]
    }

    pub fn set(&mut self, measure: usize, criterion: usize, step: usize, value: f64) -> Result<()> {
        let steps = self.steps_mut(measure, criterion);
        let len = steps.len();
        let slot = steps.get_mut(step).ok_or(Error::IndexOutOfBounds {
            what: "weight steps",
            index: step,
            len,
        })?;
        *slot = value;
        Ok(())
    }

    /// `u_kj(c*)`: the full increment of one marginal function.
    pub fn pair_total(&self, measure: usize, criterion: usize) -> f64 {
        self.steps(measure, criterion).iter().sum()
    }

    /// `Σ_j Σ_l w_kjl`; equals 1 for a normalized model.
    pub fn measure_total(&self, measure: usize) -> f64 {
        (0..self.criteria).map(|j| self.pair_total(measure, j)).sum()
    }

    /// `Σ_k u_kj(c*)`: the weight a criterion carries over all measures.
    pub fn criterion_total(&self, criterion: usize) -> f64 {
        (0..self.measures).map(|k| self.pair_total(k, criterion)).sum()
    }

    pub fn criterion_totals(&self) -> Vec<f64> {
        (0..self.criteria).map(|j| self.criterion_total(j)).collect()
    }

    /// Values in `(k, j, l)` order.
    pub fn flat(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().flatten().copied()
    }

    /// `(k, j, l, w)` tuples in `(k, j, l)` order.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        self.steps.iter().enumerate().flat_map(move |(pair, steps)| {
            let (k, j) = (pair / self.criteria, pair % self.criteria);
            steps.iter().enumerate().map(move |(l, w)| (k, j, l, *w))
        })
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        self.steps
            .chunks(self.criteria)
            .map(|per_measure| per_measure.to_vec())
            .collect()
    }

    pub fn same_shape(&self, other: &StepWeights) -> bool {
        self.measures == other.measures
            && self.criteria == other.criteria
            && self
                .steps
                .iter()
                .zip(&other.steps)
                .all(|(a, b)| a.len() == b.len())
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        Self {
            measures: self.measures,
            criteria: self.criteria,
            steps: self
                .steps
                .iter()
                .map(|s| s.iter().map(|w| f(*w)).collect())
                .collect(),
        }
    }

    /// Largest absolute componentwise difference; `None` if shapes differ.
    pub fn max_difference(&self, other: &StepWeights) -> Option<f64> {
        self.same_shape(other).then(|| {
            self.flat()
                .zip(other.flat())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    fn matches_scales(&self, scales: &[ScaleGrid]) -> bool {
        self.steps.len() == scales.len()
            && self
                .steps
                .iter()
                .zip(scales)
                .all(|(s, g)| s.len() == g.segments())
    }
}

/// A disaggregation LP together with the meaning of its variables.
#[derive(Debug, Clone, PartialEq)]
pub struct DisaggProgram {
    lp: LinearProgram,
    variant: Variant,
    measures: usize,
    criteria: usize,
    // k * criteria + j -> one variable per step
    weight_vars: Vec<Vec<VarId>>,
    ranked: Vec<usize>,
    sigma_plus: Vec<Option<VarId>>,
    sigma_minus: Vec<VarId>,
}

impl DisaggProgram {
    pub fn lp(&self) -> &LinearProgram {
        &self.lp
    }

    pub fn lp_mut(&mut self) -> &mut LinearProgram {
        &mut self.lp
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn weight_var(&self, measure: usize, criterion: usize, step: usize) -> VarId {
        self.weight_vars[measure * self.criteria + criterion][step]
    }

    pub fn weight_vars(&self, measure: usize, criterion: usize) -> &[VarId] {
        &self.weight_vars[measure * self.criteria + criterion]
    }

    /// Indices (into the measure tensor) of the ranked alternatives, best first.
    pub fn ranked(&self) -> &[usize] {
        &self.ranked
    }

    /// Terms of `Σ_i (σ⁺ + σ⁻)`.
    pub fn error_terms(&self) -> Vec<(VarId, f64)> {
        self.sigma_plus
            .iter()
            .flatten()
            .chain(&self.sigma_minus)
            .map(|v| (*v, 1.0))
            .collect()
    }

    /// Terms of `coef * Σ_k u_kj(c*)` for one criterion.
    pub fn criterion_terms(&self, criterion: usize, coef: f64) -> Vec<(VarId, f64)> {
        (0..self.measures)
            .flat_map(|k| self.weight_vars(k, criterion).iter().map(move |v| (*v, coef)))
            .collect()
    }

    pub fn weights_from(&self, values: &[f64]) -> StepWeights {
        StepWeights {
            measures: self.measures,
            criteria: self.criteria,
            steps: self
                .weight_vars
                .iter()
                .map(|vars| vars.iter().map(|v| values[v.index()]).collect())
                .collect(),
        }
    }

    /// `(σ⁺, σ⁻)` per ranked alternative, best first.
    pub fn errors_from(&self, values: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let plus = self
            .sigma_plus
            .iter()
            .map(|v| v.map_or(0.0, |v| values[v.index()]))
            .collect();
        let minus = self.sigma_minus.iter().map(|v| values[v.index()]).collect();
        (plus, minus)
    }

    /// Full assignment for the given weights with all errors at zero.
    pub fn assignment_for(&self, weights: &StepWeights) -> Result<Vec<f64>> {
        if weights.measures != self.measures
            || weights.criteria != self.criteria
            || weights
                .steps
                .iter()
                .zip(&self.weight_vars)
                .any(|(s, v)| s.len() != v.len())
        {
            return Err(Error::DimensionMismatch {
                what: "weights",
                expected: self.weight_vars.iter().map(Vec::len).sum(),
                got: weights.flat().count(),
            });
        }
        let mut values = vec![0.0; self.lp.num_variables()];
        for (vars, steps) in self.weight_vars.iter().zip(&weights.steps) {
            for (v, w) in vars.iter().zip(steps) {
                values[v.index()] = *w;
            }
        }
        Ok(values)
    }

    /// Full assignment for the given weights and error values.
    pub fn assignment_with_errors(
        &self,
        weights: &StepWeights,
        sigma_plus: &[f64],
        sigma_minus: &[f64],
    ) -> Result<Vec<f64>> {
        let r = self.ranked.len();
        for (what, got) in [("sigma_plus", sigma_plus.len()), ("sigma_minus", sigma_minus.len())] {
            if got != r {
                return Err(Error::DimensionMismatch { what, expected: r, got });
            }
        }
        let mut values = self.assignment_for(weights)?;
        for (v, x) in self.sigma_plus.iter().zip(sigma_plus) {
            if let Some(v) = v {
                values[v.index()] = *x;
            }
        }
        for (v, x) in self.sigma_minus.iter().zip(sigma_minus) {
            values[v.index()] = *x;
        }
        Ok(values)
    }
}

/// Builds the fitting program: pairwise gap constraints along the ranking,
/// one normalization row per measure, and `min Σ (σ⁺ + σ⁻)`.
pub fn build_program(
    measures: &MeasureTensor,
    ranking: &RankingChain,
    config: &DisaggConfig,
) -> Result<DisaggProgram> {
    config.validate()?;
    let (h, n) = (measures.measures().len(), measures.criteria().len());
    if config.variant != Variant::UtastarT && h != 1 {
        return Err(Error::VariantNeedsSingleMeasure {
            variant: config.variant.id(),
            measures: h,
        });
    }
    let ranked = ranking
        .ids()
        .iter()
        .map(|id| {
            measures
                .alternative_index(id)
                .ok_or_else(|| Error::UnknownAlternative(id.clone()))
        })
        .collect::<Result<Vec<usize>>>()?;

    let mut lp = LinearProgram::new(Sense::Minimize);
    let mut weight_vars = Vec::with_capacity(h * n);
    for k in 0..h {
        for j in 0..n {
            let vars = (0..measures.scale(k, j).segments())
                .map(|l| {
                    let name = match config.variant {
                        Variant::UtastarT => alloc::format!("w_{}_{}_{}", k + 1, j + 1, l + 1),
                        Variant::Uta | Variant::Utastar => alloc::format!("w_{}_{}", j + 1, l + 1),
                    };
                    lp.add_variable(name)
                })
                .collect::<Vec<VarId>>();
            weight_vars.push(vars);
        }
    }
    let mut sigma_plus = Vec::with_capacity(ranked.len());
    let mut sigma_minus = Vec::with_capacity(ranked.len());
    for id in ranking.ids() {
        sigma_plus.push(
            config
                .variant
                .has_overestimation()
                .then(|| lp.add_variable(alloc::format!("sp_{id}"))),
        );
        sigma_minus.push(lp.add_variable(alloc::format!("sm_{id}")));
    }

    // u[c(a)] - σ⁺(a) + σ⁻(a) as a dense row
    let mut expressions = Vec::with_capacity(ranked.len());
    for (r, &i) in ranked.iter().enumerate() {
        let mut row = vec![0.0; lp.num_variables()];
        for k in 0..h {
            for j in 0..n {
                let location = measures.scale(k, j).locate(measures.value(i, j, k))?;
                let vars = &weight_vars[k * n + j];
                for v in &vars[..location.segment] {
                    row[v.index()] += 1.0;
                }
                row[vars[location.segment].index()] += location.fraction;
            }
        }
        if let Some(plus) = sigma_plus[r] {
            row[plus.index()] -= 1.0;
        }
        row[sigma_minus[r].index()] += 1.0;
        expressions.push(row);
    }

    for (pair, link) in ranking.links().iter().enumerate() {
        let terms: Vec<(VarId, f64)> = expressions[pair]
            .iter()
            .zip(&expressions[pair + 1])
            .enumerate()
            .filter_map(|(v, (a, b))| {
                let d = a - b;
                (d != 0.0).then(|| (crate::lp::var_id(v), d))
            })
            .collect();
        match link {
            Preference::Strict => lp.add_constraint(&terms, Relation::Ge, config.delta)?,
            Preference::Indifferent => lp.add_constraint(&terms, Relation::Eq, 0.0)?,
        };
    }
    for k in 0..h {
        let terms: Vec<(VarId, f64)> = weight_vars[k * n..(k + 1) * n]
            .iter()
            .flatten()
            .map(|v| (*v, 1.0))
            .collect();
        lp.add_constraint(&terms, Relation::Eq, 1.0)?;
    }

    let mut program = DisaggProgram {
        lp,
        variant: config.variant,
        measures: h,
        criteria: n,
        weight_vars,
        ranked,
        sigma_plus,
        sigma_minus,
    };
    let errors = program.error_terms();
    program.lp.set_objective(Sense::Minimize, &errors)?;
    Ok(program)
}

/// Solves the fitting program and packages the optimal model.
pub fn fit(
    measures: &MeasureTensor,
    ranking: &RankingChain,
    config: &DisaggConfig,
) -> Result<ValueModel> {
    let program = build_program(measures, ranking, config)?;
    let solution = program.lp.solve();
    match solution.status {
        LpStatus::Optimal => {}
        // errors can always absorb any violation, so this is a solver defect
        status => {
            return Err(Error::Solver {
                status,
                context: "fitting program",
            })
        }
    }
    let weights = program.weights_from(&solution.values);
    let (sigma_plus, sigma_minus) = program.errors_from(&solution.values);
    Ok(ValueModel {
        measures: measures.measures().to_vec(),
        criteria: measures.criteria().to_vec(),
        scales: measures.scales().to_vec(),
        weights,
        ranked: ranking.ids().to_vec(),
        sigma_plus,
        sigma_minus,
        objective: solution.objective.max(0.0),
        config: *config,
    })
}

/// Cumulative values of one marginal function at its breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalFunction {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl MarginalFunction {
    /// Values divided by `u(c*)`; unchanged when `u(c*) = 0`.
    pub fn normalized(&self) -> MarginalFunction {
        let best = self.values.last().copied().unwrap_or(0.0);
        let values = if best > 0.0 {
            self.values.iter().map(|v| v / best).collect()
        } else {
            self.values.clone()
        };
        MarginalFunction {
            breakpoints: self.breakpoints.clone(),
            values,
        }
    }
}

/// Fields of a [`ValueModel`], for persistence.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParts {
    pub measures: Vec<Measure>,
    pub criteria: Vec<CriterionSpec>,
    /// `measure * n + criterion` order.
    pub scales: Vec<ScaleGrid>,
    pub weights: StepWeights,
    pub ranked: Vec<String>,
    pub sigma_plus: Vec<f64>,
    pub sigma_minus: Vec<f64>,
    pub objective: f64,
    pub config: DisaggConfig,
}

/// A fitted additive value model.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueModel {
    measures: Vec<Measure>,
    criteria: Vec<CriterionSpec>,
    scales: Vec<ScaleGrid>,
    weights: StepWeights,
    ranked: Vec<String>,
    sigma_plus: Vec<f64>,
    sigma_minus: Vec<f64>,
    objective: f64,
    config: DisaggConfig,
}

/// Model ranking by descending global value.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelRanking {
    /// `(alternative, global value)`, best first.
    pub values: Vec<(String, f64)>,
    /// Classes of alternatives tied within [`TIE_TOLERANCE`], best first.
    pub classes: Vec<Vec<String>>,
}

impl ValueModel {
    pub fn from_parts(parts: ModelParts) -> Result<Self> {
        let expected = parts.measures.len() * parts.criteria.len();
        if parts.scales.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "scales",
                expected,
                got: parts.scales.len(),
            });
        }
        if parts.weights.measures != parts.measures.len()
            || parts.weights.criteria != parts.criteria.len()
            || !parts.weights.matches_scales(&parts.scales)
        {
            return Err(Error::DimensionMismatch {
                what: "weights",
                expected,
                got: parts.weights.steps.len(),
            });
        }
        for (what, sigma) in [("sigma_plus", &parts.sigma_plus), ("sigma_minus", &parts.sigma_minus)] {
            if sigma.len() != parts.ranked.len() {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: parts.ranked.len(),
                    got: sigma.len(),
                });
            }
        }
        parts.config.validate()?;
        Ok(Self {
            measures: parts.measures,
            criteria: parts.criteria,
            scales: parts.scales,
            weights: parts.weights,
            ranked: parts.ranked,
            sigma_plus: parts.sigma_plus,
            sigma_minus: parts.sigma_minus,
            objective: parts.objective,
            config: parts.config,
        })
    }

    /// A model with the given weights on the scales of `measures` and no
    /// fitted errors.
    pub fn from_weights(
        measures: &MeasureTensor,
        weights: StepWeights,
        config: DisaggConfig,
    ) -> Result<Self> {
        Self::from_parts(ModelParts {
            measures: measures.measures().to_vec(),
            criteria: measures.criteria().to_vec(),
            scales: measures.scales().to_vec(),
            weights,
            ranked: Vec::new(),
            sigma_plus: Vec::new(),
            sigma_minus: Vec::new(),
            objective: 0.0,
            config,
        })
    }

    pub fn into_parts(self) -> ModelParts {
        ModelParts {
            measures: self.measures,
            criteria: self.criteria,
            scales: self.scales,
            weights: self.weights,
            ranked: self.ranked,
            sigma_plus: self.sigma_plus,
            sigma_minus: self.sigma_minus,
            objective: self.objective,
            config: self.config,
        }
    }

    pub fn measures(&self) -> &[Measure] {
        &self.measures
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn scale(&self, measure: usize, criterion: usize) -> &ScaleGrid {
        &self.scales[measure * self.criteria.len() + criterion]
    }

    pub fn scales(&self) -> &[ScaleGrid] {
        &self.scales
    }

    pub fn weights(&self) -> &StepWeights {
        &self.weights
    }

    pub fn ranked(&self) -> &[String] {
        &self.ranked
    }

    pub fn sigma_plus(&self) -> &[f64] {
        &self.sigma_plus
    }

    pub fn sigma_minus(&self) -> &[f64] {
        &self.sigma_minus
    }

    /// Optimal total error `z*`.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn config(&self) -> &DisaggConfig {
        &self.config
    }

    pub fn marginal_value(&self, measure: usize, criterion: usize, x: f64) -> Result<f64> {
        self.check_pair(measure, criterion)?;
        let location = self.scale(measure, criterion).locate(x)?;
        let steps = self.weights.steps(measure, criterion);
        let below: f64 = steps[..location.segment].iter().sum();
        Ok(below + location.fraction * steps[location.segment])
    }

    pub fn marginal_function(&self, measure: usize, criterion: usize) -> Result<MarginalFunction> {
        self.check_pair(measure, criterion)?;
        let mut values = Vec::with_capacity(self.weights.steps(measure, criterion).len() + 1);
        let mut acc = 0.0;
        values.push(acc);
        for w in self.weights.steps(measure, criterion) {
            acc += w;
            values.push(acc);
        }
        Ok(MarginalFunction {
            breakpoints: self.scale(measure, criterion).breakpoints().to_vec(),
            values,
        })
    }

    fn check_pair(&self, measure: usize, criterion: usize) -> Result<()> {
        if measure >= self.measures.len() {
            return Err(Error::IndexOutOfBounds {
                what: "measures",
                index: measure,
                len: self.measures.len(),
            });
        }
        if criterion >= self.criteria.len() {
            return Err(Error::IndexOutOfBounds {
                what: "criteria",
                index: criterion,
                len: self.criteria.len(),
            });
        }
        Ok(())
    }

    fn check_tensor(&self, measures: &MeasureTensor) -> Result<()> {
        if measures.measures() != self.measures.as_slice() {
            return Err(Error::DimensionMismatch {
                what: "measures",
                expected: self.measures.len(),
                got: measures.measures().len(),
            });
        }
        if measures.criteria().len() != self.criteria.len() {
            return Err(Error::DimensionMismatch {
                what: "criteria",
                expected: self.criteria.len(),
                got: measures.criteria().len(),
            });
        }
        Ok(())
    }

    fn value_of_index(&self, measures: &MeasureTensor, i: usize) -> Result<f64> {
        let mut total = 0.0;
        for k in 0..self.measures.len() {
            for j in 0..self.criteria.len() {
                total += self.marginal_value(k, j, measures.value(i, j, k))?;
            }
        }
        Ok(total)
    }

    /// `u[c(a)] = Σ_k Σ_j u_kj(s_ajk)`.
    pub fn global_value(&self, measures: &MeasureTensor, alternative: &str) -> Result<f64> {
        self.check_tensor(measures)?;
        let i = measures
            .alternative_index(alternative)
            .ok_or_else(|| Error::UnknownAlternative(alternative.to_string()))?;
        self.value_of_index(measures, i)
    }

    /// Ranks every alternative of `measures` by descending global value.
    pub fn rank_alternatives(&self, measures: &MeasureTensor) -> Result<ModelRanking> {
        self.check_tensor(measures)?;
        let mut values = measures
            .alternatives()
            .iter()
            .enumerate()
            .map(|(i, id)| Ok((id.clone(), self.value_of_index(measures, i)?)))
            .collect::<Result<Vec<(String, f64)>>>()?;
        // stable: ties keep tensor order
        values.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut classes: Vec<Vec<String>> = Vec::new();
        let mut previous = f64::NAN;
        for (id, value) in &values {
            match classes.last_mut() {
                Some(class) if (previous - value).abs() <= TIE_TOLERANCE => class.push(id.clone()),
                _ => classes.push(vec![id.clone()]),
            }
            previous = *value;
        }
        Ok(ModelRanking { values, classes })
    }
}

/// Pair counts behind a Kendall tau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KendallTau {
    /// `(concordant - discordant) / (n (n - 1) / 2)`.
    pub tau: f64,
    pub concordant: usize,
    pub discordant: usize,
    /// Pairs tied in either ranking; they count as neither.
    pub tied_pairs: usize,
}

/// Kendall tau between two weak orders given as classes, best first.
///
/// Uses the strict-order formula; tied pairs are reported, not corrected for.
pub fn kendall_tau<S: AsRef<str>>(a: &[Vec<S>], b: &[Vec<S>]) -> Result<KendallTau> {
    let levels = |order: &[Vec<S>]| -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = order
            .iter()
            .enumerate()
            .flat_map(|(level, class)| class.iter().map(move |id| (id.as_ref().to_string(), level)))
            .collect();
        out.sort();
        out
    };
    let (la, lb) = (levels(a), levels(b));
    let same_ids = la.len() == lb.len()
        && la.iter().zip(&lb).all(|(x, y)| x.0 == y.0)
        && la.windows(2).all(|w| w[0].0 != w[1].0);
    if !same_ids {
        return Err(Error::MismatchedRankings);
    }
    let n = la.len();
    let (mut concordant, mut discordant, mut tied_pairs) = (0, 0, 0);
    for p in 0..n {
        for q in p + 1..n {
            let da = la[p].1 as i64 - la[q].1 as i64;
            let db = lb[p].1 as i64 - lb[q].1 as i64;
            match (da * db).signum() {
                1 => concordant += 1,
                -1 => discordant += 1,
                _ => tied_pairs += 1,
            }
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let tau = if pairs == 0 {
        1.0
    } else {
        (concordant as f64 - discordant as f64) / pairs as f64
    };
    Ok(KendallTau {
        tau,
        concordant,
        discordant,
        tied_pairs,
    })
}

/// Kendall tau between two strict orders, best first.
pub fn kendall_tau_strict<S: AsRef<str>>(a: &[S], b: &[S]) -> Result<KendallTau> {
    let wa: Vec<Vec<&str>> = a.iter().map(|s| vec![s.as_ref()]).collect();
    let wb: Vec<Vec<&str>> = b.iter().map(|s| vec![s.as_ref()]).collect();
    kendall_tau(&wa, &wb)
}
