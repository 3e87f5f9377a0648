//! Runs several heuristics over a directory of problems and tabulates
//! solved counts, speed, relative gain and complementarity.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use simsel_core::{Heuristic, Limits};
use thiserror::Error;

use crate::report::{problem_name, run_problem, RunReport};

#[derive(Debug, Error)]
pub enum BenchmarkError {
    #[error("cannot list {path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
    #[error("no problem files (*.p, *.tptp) in {0}")]
    Empty(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub heuristic: String,
    pub baseline: bool,
    pub solved: usize,
    /// Total processed clauses over total wall time, in thousands per
    /// second.
    pub mean_kclauses_per_sec: f64,
    /// `100 * (solved - solved_baseline) / solved_baseline`, one decimal;
    /// absent when the baseline solved nothing.
    pub ref_plus_pct: Option<f64>,
    /// Problems solved here but not by the baseline.
    pub complementarity: usize,
    pub runs: Vec<RunReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkTable {
    pub problems: Vec<String>,
    pub baseline: String,
    pub rows: Vec<BenchmarkRow>,
}

pub fn problem_files(dir: &Path) -> Result<Vec<PathBuf>, BenchmarkError> {
    let io = |err| BenchmarkError::Io {
        path: dir.to_path_buf(),
        err,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        let is_problem = path
            .extension()
            .is_some_and(|e| e == "p" || e == "tptp");
        if is_problem && path.is_file() {
            files.push(path);
        }
    }
    if files.is_empty() {
        return Err(BenchmarkError::Empty(dir.to_path_buf()));
    }
    files.sort_by_key(|p| problem_name(p));
    Ok(files)
}

/// Runs every heuristic, and the baseline, on every problem of `dir`.
/// Problems run in parallel; rows keep the given heuristic order with the
/// baseline first unless it is already listed.
pub fn run_benchmark(
    dir: &Path,
    heuristics: &[Heuristic],
    baseline: &Heuristic,
    limits: Limits,
) -> Result<BenchmarkTable, BenchmarkError> {
    let files = problem_files(dir)?;
    let baseline_name = baseline.to_string();
    let mut strategies: Vec<&Heuristic> = heuristics.iter().collect();
    if !heuristics.iter().any(|h| h.to_string() == baseline_name) {
        strategies.insert(0, baseline);
    }

    let jobs: Vec<(usize, &PathBuf)> = (0..strategies.len())
        .flat_map(|h| files.iter().map(move |f| (h, f)))
        .collect();
    let reports: Vec<RunReport> = jobs
        .par_iter()
        .map(|&(h, path)| {
            let heuristic = strategies[h];
            run_problem(path, heuristic, limits)
                .unwrap_or_else(|e| RunReport::failed(problem_name(path), heuristic, &e))
        })
        .collect();

    let mut rows: Vec<BenchmarkRow> = reports
        .chunks(files.len())
        .zip(&strategies)
        .map(|(runs, h)| {
            let heuristic = h.to_string();
            let processed: u64 = runs.iter().map(|r| r.processed).sum();
            let wall: f64 = runs.iter().map(|r| r.wall_time_s).sum();
            BenchmarkRow {
                baseline: heuristic == baseline_name,
                heuristic,
                solved: runs.iter().filter(|r| r.solved()).count(),
                mean_kclauses_per_sec: crate::report::kclauses_per_sec(processed, wall),
                ref_plus_pct: None,
                complementarity: 0,
                runs: runs.to_vec(),
            }
        })
        .collect();

    let base = rows.iter().find(|r| r.baseline).expect("baseline row");
    let base_solved = base.solved;
    let base_set: HashSet<String> = base
        .runs
        .iter()
        .filter(|r| r.solved())
        .map(|r| r.problem.clone())
        .collect();
    for row in &mut rows {
        row.ref_plus_pct = ref_plus(row.solved, base_solved);
        row.complementarity = row
            .runs
            .iter()
            .filter(|r| r.solved() && !base_set.contains(&r.problem))
            .count();
    }

    Ok(BenchmarkTable {
        problems: files.iter().map(|f| problem_name(f)).collect(),
        baseline: baseline_name,
        rows,
    })
}

pub fn ref_plus(solved: usize, baseline: usize) -> Option<f64> {
    if baseline == 0 {
        return None;
    }
    let pct = 100.0 * (solved as f64 - baseline as f64) / baseline as f64;
    Some((pct * 10.0).round() / 10.0)
}

impl BenchmarkTable {
    /// Human-readable summary, one line per heuristic.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} problems, baseline {}",
            self.problems.len(),
            self.baseline
        );
        let _ = writeln!(out, "{:>7} {:>9} {:>7} {:>5}  heuristic", "solved", "kcl/s", "%Ref+", "+base");
        for row in &self.rows {
            let pct = row
                .ref_plus_pct
                .map_or_else(|| "-".to_string(), |p| format!("{p:.1}"));
            let _ = writeln!(
                out,
                "{:>7} {:>9.2} {:>7} {:>5}  {}{}",
                row.solved,
                row.mean_kclauses_per_sec,
                pct,
                row.complementarity,
                row.heuristic,
                if row.baseline { "  [baseline]" } else { "" }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_gain() {
        assert_eq!(ref_plus(10, 10), Some(0.0));
        assert_eq!(ref_plus(841, 711), Some(18.3));
        assert_eq!(ref_plus(706, 711), Some(-0.7));
        assert_eq!(ref_plus(3, 0), None);
    }
}
