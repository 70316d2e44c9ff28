//! `nmcs` — experiment runner for the simplex-colony optimizer.
//!
//! Subcommands:
//! * `bench`  — classic benchmark suite, CSV per (function, algorithm);
//! * `solar`  — split-spectrum / multi-junction stack design runs;
//! * `report` — side-by-side comparison of previously written CSVs,
//!   exiting nonzero if an NMS-CS result misses an embedded target.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nmcs_cli::config::{parse_cell_range, parse_topology};
use nmcs_cli::{
    compare_report, run_benchmark_suite, run_solar_experiment, write_benchmark_csv,
    write_solar_csv, Algorithm, ExperimentConfig, HarnessError,
};

#[derive(Parser)]
#[command(
    name = "nmcs",
    version,
    about = "Simplex-colony optimizer experiment harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the classic benchmark-function suite.
    Bench {
        /// Benchmark suite to run (only "classic" exists).
        #[arg(long, default_value = "classic")]
        suite: String,
        /// Comma-separated algorithms (nms, cs, nmcs, sa, ga).
        #[arg(long, value_delimiter = ',')]
        algo: Vec<Algorithm>,
        /// Seeded repetitions per function.
        #[arg(long)]
        runs: Option<usize>,
        /// First seed; run i uses seed + i.
        #[arg(long)]
        seed: Option<u64>,
        /// Evaluation ceiling per run (default: per-function protocol).
        #[arg(long)]
        budget: Option<usize>,
        /// Output directory for benchmark.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON config file; flags given here override its values.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run the solar-stack design experiments.
    Solar {
        /// Comma-separated topologies (ss, mj).
        #[arg(long, value_delimiter = ',')]
        topology: Vec<String>,
        /// Inclusive cell-count range, e.g. "3..10" or "5".
        #[arg(long)]
        cells: Option<String>,
        /// Comma-separated algorithms (nms, cs, nmcs, sa, ga).
        #[arg(long, value_delimiter = ',')]
        algo: Vec<Algorithm>,
        /// Evaluation budget per run (default 1500).
        #[arg(long)]
        budget: Option<usize>,
        /// Spectrum CSV (default: $SPECTRUM_PATH, then the bundled table).
        #[arg(long)]
        spectrum: Option<PathBuf>,
        /// Seeds per case.
        #[arg(long)]
        runs: Option<usize>,
        /// First seed; run i uses seed + i.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for solar.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON config file; flags given here override its values.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Compare previously written CSVs and check embedded targets.
    Report {
        /// Directory containing benchmark.csv / solar.csv (or a single CSV).
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn run() -> Result<ExitCode, HarnessError> {
    match Cli::parse().command {
        Command::Bench {
            suite,
            algo,
            runs,
            seed,
            budget,
            out,
            config,
        } => {
            if suite != "classic" {
                return Err(HarnessError::Config(format!(
                    "unknown suite {suite:?} (only \"classic\" is available)"
                )));
            }
            let mut cfg = ExperimentConfig::benchmark_defaults();
            if let Some(path) = &config {
                cfg.merge_file(path)?;
            }
            if !algo.is_empty() {
                cfg.algorithms = algo;
            }
            if let Some(v) = runs {
                cfg.runs = v;
            }
            if let Some(v) = seed {
                cfg.seed_base = v;
            }
            if budget.is_some() {
                cfg.budget = budget;
            }
            if let Some(v) = out {
                cfg.output_path = v;
            }
            let rows = run_benchmark_suite(&cfg)?;
            std::fs::create_dir_all(&cfg.output_path)?;
            let path = cfg.output_path.join("benchmark.csv");
            write_benchmark_csv(&rows, &path)?;
            println!("wrote {} rows to {}", rows.len(), path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Solar {
            topology,
            cells,
            algo,
            budget,
            spectrum,
            runs,
            seed,
            out,
            config,
        } => {
            let mut cfg = ExperimentConfig::solar_defaults();
            if let Some(path) = &config {
                cfg.merge_file(path)?;
            }
            if !topology.is_empty() {
                cfg.topologies = topology
                    .iter()
                    .map(|t| parse_topology(t))
                    .collect::<Result<_, _>>()?;
            }
            if let Some(text) = &cells {
                cfg.cells = parse_cell_range(text)?;
            }
            if !algo.is_empty() {
                cfg.algorithms = algo;
            }
            if budget.is_some() {
                cfg.budget = budget;
            }
            if spectrum.is_some() {
                cfg.spectrum_path = spectrum;
            }
            if let Some(v) = runs {
                cfg.runs = v;
            }
            if let Some(v) = seed {
                cfg.seed_base = v;
            }
            if let Some(v) = out {
                cfg.output_path = v;
            }
            let rows = run_solar_experiment(&cfg)?;
            std::fs::create_dir_all(&cfg.output_path)?;
            let path = cfg.output_path.join("solar.csv");
            write_solar_csv(&rows, &path)?;
            println!("wrote {} rows to {}", rows.len(), path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { input } => {
            let mut paths: Vec<PathBuf> = if input.is_dir() {
                std::fs::read_dir(&input)?
                    .filter_map(|entry| entry.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|e| e == "csv"))
                    .collect()
            } else {
                vec![input.clone()]
            };
            paths.sort();
            if paths.is_empty() {
                return Err(HarnessError::Config(format!(
                    "no CSV files under {}",
                    input.display()
                )));
            }
            let outcome = compare_report(&paths)?;
            print!("{}", outcome.text);
            Ok(if outcome.thresholds_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
