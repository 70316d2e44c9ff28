//! Experiment harness around the `nmcs` optimization crate: a classic
//! benchmark-suite runner, solar-stack design runs for split-spectrum and
//! multi-junction topologies, and a comparison report with embedded
//! reference targets. The `nmcs` binary exposes the three as subcommands;
//! the modules are a library so the acceptance tests drive the exact same
//! code paths.

pub mod bench;
pub mod config;
pub mod report;
pub mod solar;
pub mod thresholds;

pub use bench::{run_benchmark_suite, write_benchmark_csv, BenchRow};
pub use config::{Algorithm, ConfigFile, Experiment, ExperimentConfig, HarnessError, ParamOverrides};
pub use report::{compare_report, ReportOutcome};
pub use solar::{resolve_spectrum, run_solar_experiment, write_solar_csv, SolarRow};
