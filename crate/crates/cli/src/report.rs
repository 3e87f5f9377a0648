use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use simsel_core::{
    parse_problem, saturate, Heuristic, Limit, Limits, Outcome, ParseError, SaturationResult, Signature,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot read {path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
    #[error("{path}:{}:{}: {}", .err.line, .err.column, .err.kind)]
    Parse { path: PathBuf, err: ParseError },
}

/// One problem run under one heuristic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    /// `proof`, `saturated`, `resource_out` or `error`.
    pub outcome: String,
    /// The exhausted limit for `resource_out`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub limit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub wall_time_s: f64,
    pub processed: u64,
    pub generated: u64,
    pub kclauses_per_sec: f64,
    pub heuristic: String,
}

impl RunReport {
    pub fn solved(&self) -> bool {
        self.outcome == "proof"
    }

    fn new(problem: String, heuristic: &Heuristic, result: &SaturationResult, wall_time_s: f64) -> Self {
        let (outcome, limit) = match result.outcome {
            Outcome::Proof => ("proof", None),
            Outcome::Saturated => ("saturated", None),
            Outcome::ResourceOut(l) => (
                "resource_out",
                Some(match l {
                    Limit::Time => "time",
                    Limit::Processed => "processed",
                    Limit::Generated => "generated",
                }),
            ),
        };
        let processed = result.stats.processed;
        RunReport {
            problem,
            outcome: outcome.to_string(),
            limit: limit.map(str::to_string),
            error: None,
            wall_time_s,
            processed,
            generated: result.stats.generated,
            kclauses_per_sec: kclauses_per_sec(processed, wall_time_s),
            heuristic: heuristic.to_string(),
        }
    }

    /// A report for a problem that could not be loaded.
    pub fn failed(problem: String, heuristic: &Heuristic, error: &RunError) -> Self {
        RunReport {
            problem,
            outcome: "error".to_string(),
            limit: None,
            error: Some(error.to_string()),
            wall_time_s: 0.0,
            processed: 0,
            generated: 0,
            kclauses_per_sec: 0.0,
            heuristic: heuristic.to_string(),
        }
    }
}

/// Processed clauses per second, in thousands; zero for a zero wall time.
pub fn kclauses_per_sec(processed: u64, wall_time_s: f64) -> f64 {
    if wall_time_s > 0.0 {
        processed as f64 / (1000.0 * wall_time_s)
    } else {
        0.0
    }
}

pub fn problem_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// A finished run with everything needed to print its derivation.
pub struct ProblemRun {
    pub report: RunReport,
    pub result: SaturationResult,
    pub signature: Signature,
}

/// Parses, saturates and reports. The wall time covers proof-state setup
/// and the given-clause loop, not file reading or parsing.
pub fn run_problem(path: &Path, heuristic: &Heuristic, limits: Limits) -> Result<RunReport, RunError> {
    solve(path, heuristic, limits).map(|run| run.report)
}

pub fn solve(path: &Path, heuristic: &Heuristic, limits: Limits) -> Result<ProblemRun, RunError> {
    let text = std::fs::read_to_string(path).map_err(|err| RunError::Io {
        path: path.to_path_buf(),
        err,
    })?;
    let problem = parse_problem(&text).map_err(|err| RunError::Parse {
        path: path.to_path_buf(),
        err,
    })?;
    let start = Instant::now();
    let result = saturate(&problem.signature, problem.clauses, heuristic, &limits);
    let wall = start.elapsed().as_secs_f64();
    Ok(ProblemRun {
        report: RunReport::new(problem_name(path), heuristic, &result, wall),
        result,
        signature: problem.signature,
    })
}
