use std::path::{Path, PathBuf};

use serde::Serialize;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input file `{}` not found", .0.display())]
    InputNotFound(PathBuf),
    #[error("cannot read `{}`: {source}", .path.display())]
    InputUnreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", .path.display())]
    Tensor {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("ranking `{}`, column {column}: {message}", .path.display())]
    Ranking {
        path: PathBuf,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Config(String),
    #[error("model file `{}`: {message}", .path.display())]
    Model { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] utastar_core::Error),
    #[error("cannot write to `{}`: {source}", .path.display())]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    schema_version: u32,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    exit_code: i32,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
}

impl CliError {
    pub fn input(path: &Path, source: std::io::Error) -> Self {
        if source.kind() == std::io::ErrorKind::NotFound {
            CliError::InputNotFound(path.to_path_buf())
        } else {
            CliError::InputUnreadable {
                path: path.to_path_buf(),
                source,
            }
        }
    }

    pub fn output(path: &Path, source: std::io::Error) -> Self {
        CliError::Output {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use utastar_core::Error as E;
        match self {
            CliError::InputNotFound(_) => "input-not-found",
            CliError::InputUnreadable { .. } => "input-unreadable",
            CliError::Tensor { .. } => "tensor-invalid",
            CliError::Ranking { .. } => "ranking-parse",
            CliError::Config(_) => "config-invalid",
            CliError::Model { .. } => "model-invalid",
            CliError::Output { .. } => "output-io",
            CliError::Core(e) => match e {
                E::Solver { .. } | E::Simulation { .. } => "solver-failure",
                E::Parse { .. } => "ranking-parse",
                E::ZeroIterations
                | E::InvalidConfig(_)
                | E::InvalidOrder(_)
                | E::UnknownMeasure(_)
                | E::NoMeasures
                | E::InvalidGradeCount(_)
                | E::VariantNeedsSingleMeasure { .. } => "config-invalid",
                E::DegenerateScale { .. } | E::DegenerateValues => "degenerate-scale",
                E::UnknownAlternative(_)
                | E::RankingTooShort
                | E::RepeatedInRanking(_)
                | E::MismatchedRankings => "ranking-invalid",
                _ => "input-invalid",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.code() {
            "input-unreadable" | "output-io" => EXIT_IO,
            "solver-failure" => EXIT_SOLVER,
            _ => EXIT_INPUT,
        }
    }

    fn path(&self) -> Option<&Path> {
        match self {
            CliError::InputNotFound(path) => Some(path),
            CliError::InputUnreadable { path, .. }
            | CliError::Tensor { path, .. }
            | CliError::Ranking { path, .. }
            | CliError::Model { path, .. }
            | CliError::Output { path, .. } => Some(path),
            CliError::Config(_) | CliError::Core(_) => None,
        }
    }

    /// The error as a JSON object.
    pub fn to_json(&self) -> String {
        let column = match self {
            CliError::Ranking { column, .. } => Some(*column),
            CliError::Core(utastar_core::Error::Parse { column, .. }) => Some(*column),
            _ => None,
        };
        let line = match self {
            CliError::Tensor { line, .. } => Some(*line),
            _ => None,
        };
        let object = ErrorObject {
            schema_version: crate::docs::SCHEMA_VERSION,
            error: ErrorBody {
                code: self.code(),
                exit_code: self.exit_code(),
                message: self.to_string(),
                path: self.path().map(|p| p.display().to_string()),
                line,
                column,
            },
        };
        serde_json::to_string(&object).expect("error object serializes")
    }
}

pub type CliResult<T> = Result<T, CliError>;
