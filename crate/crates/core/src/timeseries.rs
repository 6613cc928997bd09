//! Raw criteria tensors, descriptive measures and evaluation scales.
//!
//! A [`TimeSeriesTensor`] holds `m × n × T` raw performances. Applying
//! [`extract_measures`] summarizes every series with `h` descriptive measures
//! and yields a [`MeasureTensor`] of `m × n × h` values together with one
//! [`ScaleGrid`] per (measure, criterion) pair.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Direction {
    #[default]
    Maximize,
    Minimize,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" | "maximize" => Ok(Direction::Maximize),
            "min" | "minimize" => Ok(Direction::Minimize),
            other => Err(Error::InvalidConfig(alloc::format!(
                "unknown direction `{other}` (expected max or min)"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Maximize => "max",
            Direction::Minimize => "min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionSpec {
    pub id: String,
    pub direction: Direction,
}

impl CriterionSpec {
    pub fn new(id: impl Into<String>, direction: Direction) -> Self {
        Self {
            id: id.into(),
            direction,
        }
    }

    pub fn maximize(id: impl Into<String>) -> Self {
        Self::new(id, Direction::Maximize)
    }
}

/// One cell of a tabular tensor source. `t` is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub alternative: String,
    pub criterion: String,
    pub t: usize,
    pub value: f64,
}

impl Record {
    pub fn new(alternative: impl Into<String>, criterion: impl Into<String>, t: usize, value: f64) -> Self {
        Self {
            alternative: alternative.into(),
            criterion: criterion.into(),
            t,
            value,
        }
    }
}

/// Dense `m × n × T` tensor of raw performances.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesTensor {
    alternatives: Vec<String>,
    criteria: Vec<CriterionSpec>,
    samples: usize,
    // (i * n + j) * T + t
    values: Vec<f64>,
}

impl TimeSeriesTensor {
    /// Builds a tensor from explicit series, `series[i][j]` being the
    /// series of alternative `i` on criterion `j`.
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        series: Vec<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(Error::EmptyTensor("alternatives"));
        }
        if criteria.is_empty() {
            return Err(Error::EmptyTensor("criteria"));
        }
        check_unique("alternative", alternatives.iter().map(String::as_str))?;
        check_unique("criterion", criteria.iter().map(|c| c.id.as_str()))?;
        if series.len() != alternatives.len() {
            return Err(Error::DimensionMismatch {
                what: "alternatives",
                expected: alternatives.len(),
                got: series.len(),
            });
        }
        let samples = series
            .first()
            .and_then(|row| row.first())
            .map_or(0, Vec::len);
        if samples < 2 {
            return Err(Error::TooFewSamples {
                samples,
                required: 2,
            });
        }
        let mut values = Vec::with_capacity(alternatives.len() * criteria.len() * samples);
        for (i, row) in series.into_iter().enumerate() {
            if row.len() != criteria.len() {
                return Err(Error::DimensionMismatch {
                    what: "criteria",
                    expected: criteria.len(),
                    got: row.len(),
                });
            }
            for (j, s) in row.into_iter().enumerate() {
                if s.len() != samples {
                    return Err(Error::DimensionMismatch {
                        what: "samples",
                        expected: samples,
                        got: s.len(),
                    });
                }
                if let Some(t) = s.iter().position(|v| !v.is_finite()) {
                    return Err(Error::NonFiniteValue {
                        alternative: alternatives[i].clone(),
                        criterion: criteria[j].id.clone(),
                        t: t + 1,
                    });
                }
                values.extend(s);
            }
        }
        Ok(Self {
            alternatives,
            criteria,
            samples,
            values,
        })
    }

    /// Assembles a tensor from one record per cell.
    ///
    /// Alternatives and criteria are ordered by first appearance. Every
    /// criterion starts out as [`Direction::Maximize`]; use
    /// [`set_direction`](Self::set_direction) to change it.
    pub fn from_records<I>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = Record>,
    {
        let mut alternatives: Vec<String> = Vec::new();
        let mut criteria: Vec<String> = Vec::new();
        let mut alt_index: BTreeMap<String, usize> = BTreeMap::new();
        let mut crit_index: BTreeMap<String, usize> = BTreeMap::new();
        let mut cells: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
        let mut samples = 0;

        for record in records {
            if record.t == 0 {
                return Err(Error::InvalidTimeIndex(record.t));
            }
            if !record.value.is_finite() {
                return Err(Error::NonFiniteValue {
                    alternative: record.alternative,
                    criterion: record.criterion,
                    t: record.t,
                });
            }
            let i = *alt_index.entry(record.alternative.clone()).or_insert_with(|| {
                alternatives.push(record.alternative.clone());
                alternatives.len() - 1
            });
            let j = *crit_index.entry(record.criterion.clone()).or_insert_with(|| {
                criteria.push(record.criterion.clone());
                criteria.len() - 1
            });
            if cells.insert((i, j, record.t - 1), record.value).is_some() {
                return Err(Error::DuplicateCell {
                    alternative: record.alternative,
                    criterion: record.criterion,
                    t: record.t,
                });
            }
            samples = samples.max(record.t);
        }

        if alternatives.is_empty() {
            return Err(Error::EmptyTensor("records"));
        }
        if samples < 2 {
            return Err(Error::TooFewSamples {
                samples,
                required: 2,
            });
        }
        let mut values = Vec::with_capacity(alternatives.len() * criteria.len() * samples);
        for (i, alternative) in alternatives.iter().enumerate() {
            for (j, criterion) in criteria.iter().enumerate() {
                for t in 0..samples {
                    match cells.get(&(i, j, t)) {
                        Some(v) => values.push(*v),
                        None => {
                            return Err(Error::MissingCell {
                                alternative: alternative.clone(),
                                criterion: criterion.clone(),
                                t: t + 1,
                            })
                        }
                    }
                }
            }
        }
        Ok(Self {
            alternatives,
            criteria: criteria.into_iter().map(CriterionSpec::maximize).collect(),
            samples,
            values,
        })
    }

    pub fn set_direction(&mut self, criterion: &str, direction: Direction) -> Result<()> {
        let spec = self
            .criteria
            .iter_mut()
            .find(|c| c.id == criterion)
            .ok_or_else(|| Error::UnknownCriterion(criterion.to_string()))?;
        spec.direction = direction;
        Ok(())
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn series(&self, alternative: usize, criterion: usize) -> &[f64] {
        let start = (alternative * self.criteria.len() + criterion) * self.samples;
        &self.values[start..start + self.samples]
    }
}

fn check_unique<'a>(kind: &'static str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = BTreeMap::new();
    for id in ids {
        if seen.insert(id, ()).is_some() {
            return Err(Error::DuplicateIdentifier {
                kind,
                id: id.to_string(),
            });
        }
    }
    Ok(())
}

/// Arithmetic mean of a series.
pub fn mean_measure(series: &[f64]) -> Result<f64> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(series.iter().sum::<f64>() / series.len() as f64)
}

/// Least-squares slope of `p_t = a + b t` with `t = 1..T`.
pub fn slope_measure(series: &[f64]) -> Result<f64> {
    let samples = series.len();
    if samples < 2 {
        return Err(Error::TooFewSamples {
            samples,
            required: 2,
        });
    }
    let mean = mean_measure(series)?;
    let t_mean = (samples as f64 + 1.0) / 2.0;
    let (mut cross, mut spread) = (0.0, 0.0);
    for (t, p) in series.iter().enumerate() {
        let dt = (t + 1) as f64 - t_mean;
        cross += (p - mean) * dt;
        spread += dt * dt;
    }
    Ok(cross / spread)
}

/// Last observed value; collapses a series to a static performance.
pub fn last_measure(series: &[f64]) -> Result<f64> {
    series.last().copied().ok_or(Error::EmptySeries)
}

/// Descriptive measure applied to every criterion series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Mean,
    Slope,
    /// Value at the final sample; the static view used by classical UTA/UTASTAR.
    Last,
}

impl Measure {
    pub fn id(self) -> &'static str {
        match self {
            Measure::Mean => "mean",
            Measure::Slope => "slope",
            Measure::Last => "last",
        }
    }

    pub fn evaluate(self, series: &[f64]) -> Result<f64> {
        match self {
            Measure::Mean => mean_measure(series),
            Measure::Slope => slope_measure(series),
            Measure::Last => last_measure(series),
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "mean" => Ok(Measure::Mean),
            "slope" => Ok(Measure::Slope),
            "last" => Ok(Measure::Last),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// How breakpoints of a scale are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalePolicy {
    /// Sorted distinct observed values.
    #[default]
    ObservedValues,
    /// The given number of equally spaced breakpoints over `[min, max]`.
    EqualInterval(usize),
}

impl FromStr for ScalePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "observed" {
            return Ok(ScalePolicy::ObservedValues);
        }
        if let Some(count) = s.strip_prefix("equal:") {
            let alpha: usize = count
                .parse()
                .map_err(|_| Error::InvalidConfig(alloc::format!("bad grade count `{count}`")))?;
            if alpha < 2 {
                return Err(Error::InvalidGradeCount(alpha));
            }
            return Ok(ScalePolicy::EqualInterval(alpha));
        }
        Err(Error::InvalidConfig(alloc::format!(
            "unknown scale policy `{s}` (expected observed or equal:<alpha>)"
        )))
    }
}

impl fmt::Display for ScalePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalePolicy::ObservedValues => f.write_str("observed"),
            ScalePolicy::EqualInterval(alpha) => write!(f, "equal:{alpha}"),
        }
    }
}

/// Position of a value on a scale: `x = c[segment] + fraction * (c[segment + 1] - c[segment])`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Location {
    /// 0-based segment index, `0 ..= alpha - 2`.
    pub segment: usize,
    pub fraction: f64,
}

/// Strictly increasing breakpoints `c^1 < … < c^alpha` of one evaluation scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    breakpoints: Vec<f64>,
}

impl ScaleGrid {
    pub fn from_breakpoints(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::DegenerateValues);
        }
        let increasing = breakpoints.iter().all(|c| c.is_finite())
            && breakpoints.windows(2).all(|w| w[0] < w[1]);
        if !increasing {
            return Err(Error::InvalidBreakpoints);
        }
        Ok(Self { breakpoints })
    }

    pub fn build(values: &[f64], policy: ScalePolicy) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBreakpoints);
        }
        let mut sorted: Vec<f64> = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        if sorted.len() < 2 {
            return Err(Error::DegenerateValues);
        }
        match policy {
            ScalePolicy::ObservedValues => Ok(Self {
                breakpoints: sorted,
            }),
            ScalePolicy::EqualInterval(alpha) => {
                if alpha < 2 {
                    return Err(Error::InvalidGradeCount(alpha));
                }
                let (low, high) = (sorted[0], sorted[sorted.len() - 1]);
                let step = (high - low) / (alpha - 1) as f64;
                let mut breakpoints: Vec<f64> =
                    (0..alpha - 1).map(|l| low + step * l as f64).collect();
                breakpoints.push(high);
                Self::from_breakpoints(breakpoints)
            }
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Number of breakpoints (`alpha`).
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn segments(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn worst(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn best(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1]
    }

    pub fn locate(&self, x: f64) -> Result<Location> {
        let (low, high) = (self.worst(), self.best());
        if !(low..=high).contains(&x) {
            return Err(Error::OutOfRange { x, low, high });
        }
        let last = self.segments() - 1;
        // number of breakpoints <= x, at least 1 since x >= low
        let at_or_below = self.breakpoints.partition_point(|c| *c <= x);
        let segment = (at_or_below - 1).min(last);
        let (from, to) = (self.breakpoints[segment], self.breakpoints[segment + 1]);
        let fraction = if x == to { 1.0 } else { (x - from) / (to - from) };
        Ok(Location { segment, fraction })
    }
}

/// Dense `m × n × h` tensor of descriptive-measure values with one scale per
/// (measure, criterion) pair.
///
/// Values are stored in maximize orientation: series of minimize criteria are
/// negated before measures are computed.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTensor {
    alternatives: Vec<String>,
    criteria: Vec<CriterionSpec>,
    measures: Vec<Measure>,
    policy: ScalePolicy,
    // (i * n + j) * h + k
    values: Vec<f64>,
    // k * n + j
    scales: Vec<ScaleGrid>,
}

impl MeasureTensor {
    fn assemble(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        measures: Vec<Measure>,
        policy: ScalePolicy,
        values: Vec<f64>,
    ) -> Result<Self> {
        let (m, n, h) = (alternatives.len(), criteria.len(), measures.len());
        let mut scales = Vec::with_capacity(n * h);
        for (k, measure) in measures.iter().enumerate() {
            for (j, criterion) in criteria.iter().enumerate() {
                let column: Vec<f64> = (0..m).map(|i| values[(i * n + j) * h + k]).collect();
                let grid = ScaleGrid::build(&column, policy).map_err(|e| match e {
                    Error::DegenerateValues => Error::DegenerateScale {
                        measure: measure.id().to_string(),
                        criterion: criterion.id.clone(),
                    },
                    other => other,
                })?;
                scales.push(grid);
            }
        }
        Ok(Self {
            alternatives,
            criteria,
            measures,
            policy,
            values,
            scales,
        })
    }

    /// Wraps a static `m × n` performance table as a single-measure tensor.
    ///
    /// Rows are in maximize orientation already; criterion directions are
    /// kept for reporting only.
    pub fn from_performance_table(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        rows: &[Vec<f64>],
        policy: ScalePolicy,
    ) -> Result<Self> {
        check_unique("alternative", alternatives.iter().map(String::as_str))?;
        check_unique("criterion", criteria.iter().map(|c| c.id.as_str()))?;
        if rows.len() != alternatives.len() {
            return Err(Error::DimensionMismatch {
                what: "alternatives",
                expected: alternatives.len(),
                got: rows.len(),
            });
        }
        let mut values = Vec::with_capacity(rows.len() * criteria.len());
        for row in rows {
            if row.len() != criteria.len() {
                return Err(Error::DimensionMismatch {
                    what: "criteria",
                    expected: criteria.len(),
                    got: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::assemble(alternatives, criteria, alloc::vec![Measure::Last], policy, values)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn measures(&self) -> &[Measure] {
        &self.measures
    }

    pub fn policy(&self) -> ScalePolicy {
        self.policy
    }

    pub fn alternative_index(&self, id: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a == id)
    }

    pub fn value(&self, alternative: usize, criterion: usize, measure: usize) -> f64 {
        let (n, h) = (self.criteria.len(), self.measures.len());
        self.values[(alternative * n + criterion) * h + measure]
    }

    pub fn scale(&self, measure: usize, criterion: usize) -> &ScaleGrid {
        &self.scales[measure * self.criteria.len() + criterion]
    }

    /// Scales in `measure * n + criterion` order.
    pub fn scales(&self) -> &[ScaleGrid] {
        &self.scales
    }
}

/// Summarizes every series of `tensor` with the given measures and builds the
/// evaluation scales.
pub fn extract_measures(
    tensor: &TimeSeriesTensor,
    measures: &[Measure],
    policy: ScalePolicy,
) -> Result<MeasureTensor> {
    if measures.is_empty() {
        return Err(Error::NoMeasures);
    }
    let (m, n) = (tensor.alternatives.len(), tensor.criteria.len());
    let mut values = Vec::with_capacity(m * n * measures.len());
    let mut flipped = Vec::with_capacity(tensor.samples);
    for i in 0..m {
        for (j, criterion) in tensor.criteria.iter().enumerate() {
            let series = tensor.series(i, j);
            let series = match criterion.direction {
                Direction::Maximize => series,
                Direction::Minimize => {
                    flipped.clear();
                    flipped.extend(series.iter().map(|p| -p));
                    &flipped[..]
                }
            };
            for measure in measures {
                values.push(measure.evaluate(series)?);
            }
        }
    }
    MeasureTensor::assemble(
        tensor.alternatives.clone(),
        tensor.criteria.clone(),
        measures.to_vec(),
        policy,
        values,
    )
}

/// Parses a comma-separated measure list such as `mean,slope`.
pub fn parse_measures(list: &str) -> Result<Vec<Measure>> {
    let measures = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Measure>>>()?;
    if measures.is_empty() {
        return Err(Error::NoMeasures);
    }
    Ok(measures)
}
