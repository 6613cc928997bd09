#![allow(dead_code)]

use utastar_core::disagg::{DisaggConfig, RankingChain, StepWeights};
use utastar_core::timeseries::{
    extract_measures, CriterionSpec, Measure, MeasureTensor, ScalePolicy, TimeSeriesTensor,
};

/// Life expectancy, years of schooling, GNI per capita; six samples each.
pub const EMERGING: [(&str, [[f64; 6]; 3]); 10] = [
    ("BR", [[65.3, 67.6, 70.1, 71.9, 73.3, 74.8], [8.00, 8.95, 9.95, 10.15, 11.05, 11.60], [10065.0, 10959.0, 11161.0, 12032.0, 14420.0, 15062.0]]),
    ("CN", [[69.0, 69.9, 71.7, 73.7, 75.0, 76.0], [6.80, 7.25, 7.85, 8.75, 9.85, 10.30], [1520.0, 2508.0, 3632.0, 5632.0, 9387.0, 13347.0]]),
    ("IN", [[57.9, 60.4, 62.6, 64.5, 66.5, 68.4], [5.35, 5.90, 6.45, 7.35, 8.25, 8.55], [1754.0, 2046.0, 2522.0, 3239.0, 4499.0, 5814.0]]),
    ("ID", [[63.3, 65.0, 66.3, 67.2, 68.1, 69.1], [6.75, 7.20, 8.70, 9.30, 9.95, 10.30], [4337.0, 5930.0, 5308.0, 6547.0, 8267.0, 10130.0]]),
    ("MY", [[70.7, 71.8, 72.8, 73.6, 74.1, 74.8], [8.10, 8.90, 10.25, 10.15, 11.35, 11.35], [9772.0, 13439.0, 14500.0, 17157.0, 19725.0, 23712.0]]),
    ("MX", [[70.8, 72.8, 74.4, 75.3, 76.1, 77.0], [8.05, 8.55, 9.15, 9.85, 10.50, 10.80], [12074.0, 12028.0, 14388.0, 14693.0, 15395.0, 16249.0]]),
    ("PH", [[65.3, 66.1, 66.7, 67.2, 67.7, 68.3], [8.70, 8.95, 9.50, 9.75, 9.75, 10.20], [3962.0, 4111.0, 4994.0, 6058.0, 7478.0, 8232.0]]),
    ("RU", [[68.0, 66.0, 65.1, 65.8, 68.6, 70.3], [10.95, 10.85, 11.85, 12.60, 13.10, 13.35], [19461.0, 12011.0, 12933.0, 17797.0, 21075.0, 22094.0]]),
    ("ZA", [[62.1, 61.4, 55.9, 51.6, 54.5, 57.9], [8.95, 10.65, 11.00, 11.15, 11.55, 11.75], [9987.0, 9566.0, 9719.0, 10935.0, 11833.0, 12110.0]]),
    ("TR", [[64.3, 67.0, 70.0, 72.5, 74.2, 75.6], [6.70, 7.20, 8.30, 8.95, 10.55, 11.05], [10494.0, 11317.0, 12807.0, 14987.0, 16506.0, 18976.0]]),
];

pub const RANKING: &str = "MY > RU > TR > BR > CN > IN > ID > MX > PH > ZA";

/// Printed global values of the ranked alternatives.
pub const GLOBAL_VALUES: [(&str, f64); 10] = [
    ("MY", 1.80), ("RU", 1.20), ("TR", 1.15), ("BR", 1.10), ("CN", 0.90),
    ("IN", 0.85), ("ID", 0.80), ("MX", 0.75), ("PH", 0.70), ("ZA", 0.00),
];

/// Nonzero step weights `(k, j, l, w)`, 1-based, of the single fitted vertex.
pub const FITTED_VERTEX: [(usize, usize, usize, f64); 7] = [
    (1, 1, 3, 0.10), (1, 3, 7, 0.05), (1, 3, 8, 0.85),
    (2, 1, 2, 0.60), (2, 1, 7, 0.20), (2, 2, 2, 0.05), (2, 3, 4, 0.15),
];

/// The vertex reported for every draw under `c1 > c3 > c2`.
pub const VERTEX_C1_C3_C2: [(usize, usize, usize, f64); 9] = [
    (1, 1, 1, 0.7), (1, 1, 3, 0.025), (1, 3, 7, 0.05), (1, 3, 8, 0.225),
    (2, 1, 1, 0.75), (2, 1, 3, 0.05), (2, 1, 6, 0.075), (2, 1, 7, 0.05), (2, 3, 4, 0.075),
];

/// The two vertices reported under `c1 > c2 > c3`, with their counts.
pub type Vertex = [(usize, usize, usize, f64); 11];

pub const VERTICES_C1_C2_C3: [(usize, Vertex); 2] = [
    (338, [(1, 1, 1, 0.55), (1, 1, 2, 0.1), (1, 2, 6, 0.0), (1, 2, 7, 0.35), (2, 1, 1, 0.7), (2, 1, 3, 0.05),
           (2, 1, 6, 0.1), (2, 1, 7, 0.05), (2, 1, 9, 0.05), (2, 2, 4, 0.05), (2, 3, 4, 0.0)]),
    (662, [(1, 1, 1, 0.70), (1, 1, 2, 0.0), (1, 2, 6, 0.05), (1, 2, 7, 0.25), (2, 1, 1, 0.7), (2, 1, 3, 0.05),
           (2, 1, 6, 0.1), (2, 1, 7, 0.0), (2, 1, 9, 0.10), (2, 2, 4, 0.0), (2, 3, 4, 0.05)]),
];

pub fn tensor() -> TimeSeriesTensor {
    let alternatives = EMERGING.iter().map(|(id, _)| id.to_string()).collect();
    let criteria = (1..=3).map(|j| CriterionSpec::maximize(format!("c{j}"))).collect();
    let series = EMERGING
        .iter()
        .map(|(_, rows)| rows.iter().map(|r| r.to_vec()).collect())
        .collect();
    TimeSeriesTensor::new(alternatives, criteria, series).unwrap()
}

pub fn measures() -> MeasureTensor {
    extract_measures(&tensor(), &[Measure::Mean, Measure::Slope], ScalePolicy::ObservedValues).unwrap()
}

pub fn ranking() -> RankingChain {
    RANKING.parse().unwrap()
}

pub fn config() -> DisaggConfig {
    DisaggConfig::default()
}

/// Step weights on the paper scales from 1-based sparse entries.
pub fn sparse_weights(measures: &MeasureTensor, entries: &[(usize, usize, usize, f64)]) -> StepWeights {
    let mut weights = StepWeights::zeros(measures);
    for &(k, j, l, w) in entries {
        weights.set(k - 1, j - 1, l - 1, w).unwrap();
    }
    weights
}
