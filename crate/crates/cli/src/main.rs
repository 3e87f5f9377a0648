use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;
use simsel_cli::{presets, run_benchmark, solve, RunReport};
use simsel_core::{Heuristic, Limits, Outcome};

/// Saturation prover with conjecture-similarity clause selection.
///
/// Heuristics are given in the grammar `(n*Name(Prio,args..),..)` or by a
/// preset name: ref, term, tfidf, pref, lev, ted, struc.
#[derive(Parser, Debug)]
#[command(name = "simsel", version)]
struct Cli {
    /// TPTP CNF problem file.
    #[arg(required_unless_present = "benchmark", conflicts_with = "benchmark")]
    problem: Option<PathBuf>,

    /// Clause selection heuristic; repeat to benchmark several.
    #[arg(long = "heuristic", value_name = "SPEC")]
    heuristics: Vec<String>,

    /// Wall-clock limit per problem, in seconds.
    #[arg(long, value_name = "SEC")]
    timeout: Option<f64>,

    #[arg(long, value_name = "N")]
    max_processed: Option<u64>,

    #[arg(long, value_name = "N", default_value_t = 1_000_000)]
    max_generated: u64,

    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,

    /// Print the derivation of the empty clause.
    #[arg(long)]
    derivation: bool,

    /// Run every heuristic over the problem files of a directory.
    #[arg(long, value_name = "DIR")]
    benchmark: Option<PathBuf>,

    /// Baseline heuristic for %Ref+ and complementarity.
    #[arg(long, value_name = "SPEC", default_value = "ref", requires = "benchmark")]
    baseline: String,
}

const EXIT_INPUT: u8 = 3;

#[derive(Serialize)]
struct SingleOutput<'a> {
    #[serde(flatten)]
    report: &'a RunReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    derivation: Option<Vec<String>>,
}

fn heuristic(spec: &str) -> Result<Heuristic> {
    presets::resolve(spec).with_context(|| format!("bad heuristic `{spec}`"))
}

fn limits(cli: &Cli) -> Result<Limits> {
    let timeout = match cli.timeout {
        Some(t) if !(t.is_finite() && t >= 0.0) => bail!("timeout must be a non-negative number"),
        Some(t) => Some(Duration::from_secs_f64(t)),
        None => None,
    };
    Ok(Limits {
        timeout,
        max_processed: cli.max_processed,
        max_generated: Some(cli.max_generated),
    })
}

fn single(cli: &Cli, path: &Path) -> Result<ExitCode> {
    let h = match cli.heuristics.as_slice() {
        [] => heuristic("lev")?,
        [one] => heuristic(one)?,
        _ => bail!("a single problem takes one heuristic; combine CEFs as (n1*A(..),n2*B(..))"),
    };
    let run = solve(path, &h, limits(cli)?)?;
    let derivation = match (&run.result.derivation, cli.derivation) {
        (Some(d), true) => Some(d.render(&run.signature).lines().map(str::to_string).collect()),
        _ => None,
    };
    if cli.json {
        let out = SingleOutput {
            report: &run.report,
            derivation,
        };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        let r = &run.report;
        let outcome = match &r.limit {
            Some(l) => format!("{} ({l})", r.outcome),
            None => r.outcome.clone(),
        };
        println!("% problem:   {}", r.problem);
        println!("% heuristic: {}", r.heuristic);
        println!("% outcome:   {outcome}");
        println!(
            "% processed: {}  generated: {}  time: {:.3}s  kclauses/s: {:.2}",
            r.processed, r.generated, r.wall_time_s, r.kclauses_per_sec
        );
        for line in derivation.into_iter().flatten() {
            println!("{line}");
        }
    }
    Ok(ExitCode::from(match run.result.outcome {
        Outcome::Proof => 0,
        Outcome::Saturated => 1,
        Outcome::ResourceOut(_) => 2,
    }))
}

fn benchmark(cli: &Cli, dir: &Path) -> Result<ExitCode> {
    let specs: Vec<&str> = if cli.heuristics.is_empty() {
        presets::NAMES.to_vec()
    } else {
        cli.heuristics.iter().map(String::as_str).collect()
    };
    let hs = specs.iter().map(|s| heuristic(s)).collect::<Result<Vec<_>>>()?;
    let baseline = heuristic(&cli.baseline)?;
    let table = run_benchmark(dir, &hs, &baseline, limits(cli)?)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else {
        print!("{}", table.render());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match (&cli.benchmark, &cli.problem) {
        (Some(dir), _) => benchmark(&cli, dir),
        (None, Some(path)) => single(&cli, path),
        (None, None) => unreachable!("clap requires a problem or --benchmark"),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(EXIT_INPUT)
    })
}
