//! Classic benchmark-suite runner.
//!
//! Protocol: every suite function is minimized `runs` times per algorithm,
//! run `i` seeded with `seed_base + i`. The hybrid runs with 6 nests (20 on
//! the 10-dimensional Rosenbrock), one migrated vertex, abandonment period
//! `k = 2n` generations, spread tolerance 1e-7, and a per-function goal
//! level; a run that converges somewhere short of the goal with budget left
//! (spread stop at a local basin, or every simplex collapsed) restarts with
//! a fresh colony on the same evaluation meter. Mean evaluations, mean error
//! and success rate are aggregated per (function, algorithm).

use std::path::Path;

use nmcs::benchmarks::{error_vs_optimum, suite, BenchmarkFunction};
use nmcs::hybrid::{nmcs_minimize, HybridParams};
use nmcs::nelder_mead::{nms_minimize, NmsConfig, NmsStart};
use nmcs::{EvaluationBudget, StopRule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Algorithm, ExperimentConfig, HarnessError, ParamOverrides};

/// Spread tolerance shared by every early-stopping run in the harness.
pub const EPSILON: f64 = 1e-7;

/// Success threshold on the error against the known optimum. (A declared
/// convention for this report, not a value carried over from elsewhere.)
pub const SUCCESS_ERROR: f64 = 1e-3;

/// Colony size for a suite function: 20 nests on the 10-dimensional
/// Rosenbrock, 6 everywhere else.
pub fn protocol_nests(function: &str) -> usize {
    if function == "R10" {
        20
    } else {
        6
    }
}

/// Default evaluation ceiling per run. The deep valleys get room for the
/// restart protocol; everything else converges well within 5000.
pub fn protocol_budget(function: &str) -> usize {
    match function {
        "S45" | "R5" => 20_000,
        "R10" => 100_000,
        _ => 5_000,
    }
}

/// Goal offset above the known optimum at which a run is declared converged.
/// One decade below each function's error gate, except Z2 where the gate
/// itself is the reporting threshold 1e-5 and the two Rosenbrock valleys
/// where descending a further decade would triple the evaluation bill for
/// no reportable gain.
pub fn protocol_goal_offset(function: &str) -> f64 {
    match function {
        "Z2" => 1e-5,
        "R5" | "R10" => 1e-3,
        _ => 1e-4,
    }
}

/// One aggregated benchmark CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub function: String,
    pub d: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_evals: f64,
    pub mean_error: f64,
    pub success_rate: f64,
}

/// Outcome of a single seeded run.
struct SingleRun {
    evals: usize,
    error: f64,
    success: bool,
}

/// Runs the hybrid until the goal level is reached or the budget is gone,
/// restarting with a fresh colony whenever a run ends early short of the
/// goal. Returns (best value, evaluations used, ended-by-rule).
fn nmcs_until_goal(
    f: &BenchmarkFunction,
    params: &HybridParams,
    goal: f64,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(f64, usize, bool), HarnessError> {
    let mut remaining = budget;
    let mut best = f64::INFINITY;
    let mut fired = false;
    while remaining > 0 {
        let report = nmcs_minimize(
            &f.spec,
            params,
            &[],
            EvaluationBudget::new(remaining),
            rng,
        )?;
        remaining -= report.evals_used;
        if report.best_value < best {
            best = report.best_value;
        }
        if best <= goal {
            fired = true;
            break;
        }
        if !report.stop_rule_fired {
            break;
        }
    }
    Ok((best, budget - remaining, fired))
}

/// Executes one seeded (function, algorithm) run.
fn single_run(
    f: &BenchmarkFunction,
    algorithm: Algorithm,
    seed: u64,
    budget: usize,
    overrides: &ParamOverrides,
) -> Result<SingleRun, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = &f.spec;
    let (best, evals, stop_fired) = match algorithm {
        Algorithm::Nmcs => {
            let mut params = HybridParams::defaults_for(protocol_nests(&spec.name));
            params.epsilon = EPSILON;
            overrides.nmcs.apply(&mut params);
            let goal = f.optimum_value + protocol_goal_offset(&spec.name);
            params.goal = Some(goal);
            nmcs_until_goal(f, &params, goal, budget, &mut rng)?
        }
        Algorithm::Nms => {
            let start = spec.sample_uniform(&mut rng);
            let report = nms_minimize(
                spec,
                NmsStart::anchor(start),
                EvaluationBudget::new(budget),
                StopRule::Spread { epsilon: EPSILON },
                &NmsConfig::default(),
            )?;
            (report.best_value, report.evals_used, report.stop_rule_fired)
        }
        Algorithm::Cs => {
            let mut params = nmcs::cuckoo::CsParams::default();
            overrides.cs.apply(&mut params);
            let report = nmcs::cuckoo::cs_minimize(
                spec,
                &params,
                EvaluationBudget::new(budget),
                StopRule::Spread { epsilon: EPSILON },
                &mut rng,
            )?;
            (report.best_value, report.evals_used, report.stop_rule_fired)
        }
        Algorithm::Sa => {
            let mut params = nmcs::baselines::SaParams::default();
            overrides.sa.apply(&mut params);
            let start = spec.sample_uniform(&mut rng);
            let report = nmcs::baselines::sa_minimize(
                spec,
                &params,
                &[start],
                EvaluationBudget::new(budget),
                &mut rng,
            )?;
            (report.best_value, report.evals_used, report.stop_rule_fired)
        }
        Algorithm::Ga => {
            let mut params = nmcs::baselines::GaParams::default();
            overrides.ga.apply(&mut params);
            let report = nmcs::baselines::ga_minimize(
                spec,
                &params,
                &[],
                EvaluationBudget::new(budget),
                &mut rng,
            )?;
            (report.best_value, report.evals_used, report.stop_rule_fired)
        }
    };
    if evals > budget {
        return Err(HarnessError::Verification(format!(
            "{} run used {evals} evaluations against a budget of {budget}",
            spec.name
        )));
    }
    let error = error_vs_optimum(f, best);
    Ok(SingleRun {
        evals,
        error,
        success: stop_fired && error < SUCCESS_ERROR,
    })
}

/// Runs the configured algorithms over the whole suite and aggregates one
/// row per (function, algorithm), in suite order.
pub fn run_benchmark_suite(config: &ExperimentConfig) -> Result<Vec<BenchRow>, HarnessError> {
    config.validate()?;
    let functions = suite();

    // Every (function, algorithm, run) triple is an independent seeded job.
    let mut jobs = Vec::new();
    for (fi, _) in functions.iter().enumerate() {
        for &algorithm in &config.algorithms {
            for run_index in 0..config.runs {
                jobs.push((fi, algorithm, run_index));
            }
        }
    }

    let results: Result<Vec<_>, HarnessError> = jobs
        .into_par_iter()
        .map(|(fi, algorithm, run_index)| {
            let f = &functions[fi];
            let budget = config.budget.unwrap_or_else(|| protocol_budget(&f.spec.name));
            let seed = config.seed_base + run_index as u64;
            let run = single_run(f, algorithm, seed, budget, &config.params)?;
            Ok((fi, algorithm, run))
        })
        .collect();
    let results = results?;

    // Aggregate in (suite order, algorithm) order so the CSV is deterministic
    // regardless of the parallel schedule.
    let mut rows = Vec::new();
    for (fi, f) in functions.iter().enumerate() {
        for &algorithm in &config.algorithms {
            let runs: Vec<&SingleRun> = results
                .iter()
                .filter(|(i, a, _)| *i == fi && *a == algorithm)
                .map(|(_, _, r)| r)
                .collect();
            let n = runs.len() as f64;
            rows.push(BenchRow {
                function: f.spec.name.clone(),
                d: f.spec.d,
                algorithm,
                runs: runs.len(),
                mean_evals: runs.iter().map(|r| r.evals as f64).sum::<f64>() / n,
                mean_error: runs.iter().map(|r| r.error).sum::<f64>() / n,
                success_rate: runs.iter().filter(|r| r.success).count() as f64 / n,
            });
        }
    }
    Ok(rows)
}

/// Writes the benchmark rows as CSV with the schema
/// `function,d,algorithm,runs,mean_evals,mean_error,success_rate`.
pub fn write_benchmark_csv(rows: &[BenchRow], path: &Path) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["function", "d", "algorithm", "runs", "mean_evals", "mean_error", "success_rate"])?;
    for r in rows {
        w.write_record([
            r.function.as_str(),
            &r.d.to_string(),
            r.algorithm.tag(),
            &r.runs.to_string(),
            &format!("{:.3}", r.mean_evals),
            &format!("{:.6e}", r.mean_error),
            &format!("{:.3}", r.success_rate),
        ])?;
    }
    w.flush()?;
    Ok(())
}
