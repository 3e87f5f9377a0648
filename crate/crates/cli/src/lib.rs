//! Problem runner, benchmark harness and strategy presets behind the
//! `simsel` binary.

pub mod bench;
pub mod presets;
pub mod report;

pub use bench::{run_benchmark, BenchmarkError, BenchmarkRow, BenchmarkTable};
pub use report::{run_problem, solve, ProblemRun, RunError, RunReport};
