//! Tensor CSV and ranking file readers.

use std::fs;
use std::io::Read;
use std::path::Path;

use utastar_core::disagg::RankingChain;
use utastar_core::timeseries::{Record, TimeSeriesTensor};

use crate::error::{CliError, CliResult};

const HEADER: [&str; 4] = ["alternative", "criterion", "t", "value"];

/// Reads a tensor from `alternative,criterion,t,value` records.
pub fn load_tensor(path: &Path) -> CliResult<TimeSeriesTensor> {
    let file = fs::File::open(path).map_err(|e| CliError::input(path, e))?;
    read_tensor(file, path)
}

/// Like [`load_tensor`]; `path` only labels errors.
pub fn read_tensor<R: Read>(reader: R, path: &Path) -> CliResult<TimeSeriesTensor> {
    let bad = |line: u64, message: String| CliError::Tensor {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = csv.headers().map_err(|e| bad(1, e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != HEADER {
        return Err(bad(1, format!("expected header `{}`", HEADER.join(","))));
    }
    let mut records = Vec::new();
    for row in csv.records() {
        let row = row.map_err(|e| bad(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        let t = row[2]
            .parse::<usize>()
            .map_err(|_| bad(line, format!("time index `{}` is not a positive integer", &row[2])))?;
        let value = row[3]
            .parse::<f64>()
            .map_err(|_| bad(line, format!("value `{}` is not numeric", &row[3])))?;
        records.push(Record::new(&row[0], &row[1], t, value));
    }
    TimeSeriesTensor::from_records(records).map_err(|e| bad(0, e.to_string()))
}

/// Reads a one-line ranking such as `MY > RU ~ TR`.
pub fn load_ranking(path: &Path) -> CliResult<RankingChain> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(path, e))?;
    parse_ranking(text.trim_end_matches(['\n', '\r']), path)
}

pub fn parse_ranking(text: &str, path: &Path) -> CliResult<RankingChain> {
    text.parse().map_err(|e| match e {
        utastar_core::Error::Parse { column, message } => CliError::Ranking {
            path: path.to_path_buf(),
            column,
            message,
        },
        other => CliError::Core(other),
    })
}
