//! Experiment configuration: the merged view of built-in defaults, an
//! optional JSON config file, and command-line flags (flags win).

use std::fmt;
use std::path::{Path, PathBuf};

use nmcs::solar::Topology;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors surfaced by the harness (as opposed to the optimizers themselves).
#[derive(Debug, Error)]
pub enum HarnessError {
    /// Invalid or inconsistent configuration (unknown algorithm, bad range,
    /// malformed config file, ...).
    #[error("configuration error: {0}")]
    Config(String),
    /// A CSV input does not have one of the schemas this tool writes.
    #[error("CSV schema error: {0}")]
    Schema(String),
    /// The spectrum fixture could not be found or read.
    #[error("spectrum unavailable: {0}")]
    MissingSpectrum(String),
    /// A result failed its pre-write re-verification.
    #[error("result verification failed: {0}")]
    Verification(String),
    /// Optimizer-level failure.
    #[error(transparent)]
    Optimizer(#[from] nmcs::Error),
    /// Solar-model failure.
    #[error(transparent)]
    Solar(#[from] nmcs::solar::SolarError),
    /// Filesystem failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// CSV read/write failure.
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// The optimizers the harness can drive.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Nelder-Mead simplex (multi-start).
    Nms,
    /// Plain cuckoo search with Lévy steps.
    Cs,
    /// The simplex-colony hybrid.
    Nmcs,
    /// Simulated annealing.
    Sa,
    /// Real-coded genetic algorithm.
    Ga,
}

impl Algorithm {
    /// Lowercase tag used in CSV rows and CLI flags.
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Nms => "nms",
            Algorithm::Cs => "cs",
            Algorithm::Nmcs => "nmcs",
            Algorithm::Sa => "sa",
            Algorithm::Ga => "ga",
        }
    }

    /// Parses a single lowercase tag.
    pub fn from_tag(tag: &str) -> Result<Self, HarnessError> {
        match tag {
            "nms" => Ok(Algorithm::Nms),
            "cs" => Ok(Algorithm::Cs),
            "nmcs" => Ok(Algorithm::Nmcs),
            "sa" => Ok(Algorithm::Sa),
            "ga" => Ok(Algorithm::Ga),
            other => Err(HarnessError::Config(format!(
                "unknown algorithm {other:?} (expected one of nms, cs, nmcs, sa, ga)"
            ))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Which experiment family a config drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    /// Classic benchmark-function suite.
    Benchmark,
    /// Solar-stack design runs.
    Solar,
}

/// Optional overrides for [`nmcs::hybrid::HybridParams`]; unset fields keep
/// the experiment defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HybridOverrides {
    pub n_nests: Option<usize>,
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub p_a: Option<f64>,
    pub init_scale_max: Option<f64>,
    pub epsilon: Option<f64>,
}

impl HybridOverrides {
    /// Applies every set field onto `base`.
    pub fn apply(&self, base: &mut nmcs::hybrid::HybridParams) {
        if let Some(v) = self.n_nests {
            base.n_nests = v;
            base.k = 2 * v;
            base.ranking_pool = (v / 3).max(2);
        }
        if let Some(v) = self.p {
            base.p = v;
        }
        if let Some(v) = self.k {
            base.k = v;
        }
        if let Some(v) = self.p_a {
            base.p_a = v;
        }
        if let Some(v) = self.init_scale_max {
            base.init_scale_max = v;
        }
        if let Some(v) = self.epsilon {
            base.epsilon = v;
        }
    }
}

/// Optional overrides for [`nmcs::cuckoo::CsParams`].
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CsOverrides {
    pub n_nests: Option<usize>,
    pub p_a: Option<f64>,
    pub step_scale: Option<f64>,
    pub levy_exponent: Option<f64>,
}

impl CsOverrides {
    /// Applies every set field onto `base`.
    pub fn apply(&self, base: &mut nmcs::cuckoo::CsParams) {
        if let Some(v) = self.n_nests {
            base.n_nests = v;
        }
        if let Some(v) = self.p_a {
            base.p_a = v;
        }
        if let Some(v) = self.step_scale {
            base.step_scale = v;
        }
        if let Some(v) = self.levy_exponent {
            base.levy_exponent = v;
        }
    }
}

/// Optional overrides for [`nmcs::baselines::SaParams`].
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SaOverrides {
    pub t0: Option<f64>,
    pub cooling: Option<f64>,
    pub reanneal_interval: Option<usize>,
}

impl SaOverrides {
    /// Applies every set field onto `base`.
    pub fn apply(&self, base: &mut nmcs::baselines::SaParams) {
        if let Some(v) = self.t0 {
            base.t0 = v;
        }
        if let Some(v) = self.cooling {
            base.cooling = v;
        }
        if let Some(v) = self.reanneal_interval {
            base.reanneal_interval = v;
        }
    }
}

/// Optional overrides for [`nmcs::baselines::GaParams`].
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaOverrides {
    pub pop_size: Option<usize>,
    pub elite_count: Option<usize>,
    pub crossover_fraction: Option<f64>,
    pub mutation_rate: Option<f64>,
}

impl GaOverrides {
    /// Applies every set field onto `base`.
    pub fn apply(&self, base: &mut nmcs::baselines::GaParams) {
        if let Some(v) = self.pop_size {
            base.pop_size = v;
        }
        if let Some(v) = self.elite_count {
            base.elite_count = v;
        }
        if let Some(v) = self.crossover_fraction {
            base.crossover_fraction = v;
        }
        if let Some(v) = self.mutation_rate {
            base.mutation_rate = v;
        }
    }
}

/// Per-algorithm parameter overrides. Defaults leave everything untouched.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamOverrides {
    pub nmcs: HybridOverrides,
    pub cs: CsOverrides,
    pub sa: SaOverrides,
    pub ga: GaOverrides,
}

/// Fully resolved experiment description. Built by [`ExperimentConfig::resolve`]
/// from defaults, an optional JSON file, and CLI flags.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Experiment family.
    pub experiment: Experiment,
    /// Algorithms to run, in the order requested (deduplicated).
    pub algorithms: Vec<Algorithm>,
    /// Repetitions (benchmark) or seeds (solar) per case; at least 1.
    pub runs: usize,
    /// First seed; run `i` uses `seed_base + i`.
    pub seed_base: u64,
    /// Evaluation ceiling per run. `None` uses the experiment's protocol
    /// default (per-function for benchmarks, 1500 for solar).
    pub budget: Option<usize>,
    /// Per-algorithm parameter overrides.
    pub params: ParamOverrides,
    /// Directory CSV reports are written into.
    pub output_path: PathBuf,
    /// Solar only: stack topologies to run.
    pub topologies: Vec<Topology>,
    /// Solar only: inclusive cell-count range.
    pub cells: (usize, usize),
    /// Solar only: spectrum CSV path; `None` falls back to the
    /// `SPECTRUM_PATH` environment variable and then the bundled table.
    pub spectrum_path: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Benchmark defaults: NMS-CS only, 100 runs from seed 1, protocol
    /// budgets, CSVs under `results/`.
    pub fn benchmark_defaults() -> Self {
        Self {
            experiment: Experiment::Benchmark,
            algorithms: vec![Algorithm::Nmcs],
            runs: 100,
            seed_base: 1,
            budget: None,
            params: ParamOverrides::default(),
            output_path: PathBuf::from("results"),
            topologies: vec![],
            cells: (0, 0),
            spectrum_path: None,
        }
    }

    /// Solar defaults: the four compared algorithms, 5 seeds from seed 1,
    /// 1500 evaluations, both topologies, 3 to 10 cells.
    pub fn solar_defaults() -> Self {
        Self {
            experiment: Experiment::Solar,
            algorithms: vec![Algorithm::Nmcs, Algorithm::Nms, Algorithm::Sa, Algorithm::Ga],
            runs: 5,
            seed_base: 1,
            budget: None,
            params: ParamOverrides::default(),
            output_path: PathBuf::from("results"),
            topologies: vec![Topology::SplitSpectrum, Topology::MultiJunction],
            cells: (3, 10),
            spectrum_path: None,
        }
    }

    /// Solar evaluation budget (the protocol default unless overridden).
    pub fn solar_budget(&self) -> usize {
        self.budget.unwrap_or(1500)
    }

    /// Checks the cross-field invariants.
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.runs == 0 {
            return Err(HarnessError::Config("runs must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::Config("at least one algorithm required".into()));
        }
        if self.experiment == Experiment::Solar {
            if self.topologies.is_empty() {
                return Err(HarnessError::Config("at least one topology required".into()));
            }
            let (lo, hi) = self.cells;
            if lo < 1 || hi < lo {
                return Err(HarnessError::Config(format!(
                    "cell range {lo}..{hi} is empty or starts below 1"
                )));
            }
            // Simplex-based algorithms need at least one full simplex of
            // evaluations on the largest problem in the sweep.
            let simplex_based = self
                .algorithms
                .iter()
                .any(|a| matches!(a, Algorithm::Nms | Algorithm::Nmcs));
            if simplex_based && self.solar_budget() < hi + 1 {
                return Err(HarnessError::Config(format!(
                    "budget {} cannot even build one simplex in {hi} dimensions",
                    self.solar_budget()
                )));
            }
        }
        if let Some(b) = self.budget {
            if b == 0 {
                return Err(HarnessError::Config("budget must be at least 1".into()));
            }
        }
        Ok(())
    }

    /// Merges a JSON config file under this config (file values replace the
    /// defaults; the caller then lays CLI flags on top).
    pub fn merge_file(&mut self, path: &Path) -> Result<(), HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            HarnessError::Config(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let file: ConfigFile = serde_json::from_str(&text).map_err(|e| {
            HarnessError::Config(format!("malformed config file {}: {e}", path.display()))
        })?;
        file.apply(self)
    }
}

/// JSON mirror of [`ExperimentConfig`] with every field optional, so a file
/// can pin any subset of values.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub experiment: Option<Experiment>,
    pub algorithms: Option<Vec<Algorithm>>,
    pub runs: Option<usize>,
    pub seed_base: Option<u64>,
    pub budget: Option<usize>,
    pub params: Option<ParamOverrides>,
    pub output_path: Option<PathBuf>,
    pub topologies: Option<Vec<String>>,
    pub cells: Option<String>,
    pub spectrum_path: Option<PathBuf>,
}

impl ConfigFile {
    /// Writes every set field onto `config`.
    pub fn apply(&self, config: &mut ExperimentConfig) -> Result<(), HarnessError> {
        if let Some(v) = self.experiment {
            config.experiment = v;
        }
        if let Some(v) = &self.algorithms {
            config.algorithms = v.clone();
        }
        if let Some(v) = self.runs {
            config.runs = v;
        }
        if let Some(v) = self.seed_base {
            config.seed_base = v;
        }
        if let Some(v) = self.budget {
            config.budget = Some(v);
        }
        if let Some(v) = &self.params {
            config.params = v.clone();
        }
        if let Some(v) = &self.output_path {
            config.output_path = v.clone();
        }
        if let Some(v) = &self.topologies {
            config.topologies = v
                .iter()
                .map(|t| parse_topology(t))
                .collect::<Result<_, _>>()?;
        }
        if let Some(v) = &self.cells {
            config.cells = parse_cell_range(v)?;
        }
        if let Some(v) = &self.spectrum_path {
            config.spectrum_path = Some(v.clone());
        }
        Ok(())
    }
}

/// Parses a topology tag ("ss" or "mj").
pub fn parse_topology(tag: &str) -> Result<Topology, HarnessError> {
    match tag {
        "ss" => Ok(Topology::SplitSpectrum),
        "mj" => Ok(Topology::MultiJunction),
        other => Err(HarnessError::Config(format!(
            "unknown topology {other:?} (expected ss or mj)"
        ))),
    }
}

/// Parses an inclusive cell range: `"3..10"` or a single count `"5"`.
pub fn parse_cell_range(text: &str) -> Result<(usize, usize), HarnessError> {
    let bad = |t: &str| HarnessError::Config(format!("invalid cell range {t:?} (expected N or A..B)"));
    if let Some((a, b)) = text.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad(text))?;
        let hi: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad(text))?;
        if lo < 1 || hi < lo {
            return Err(bad(text));
        }
        Ok((lo, hi))
    } else {
        let n: usize = text.trim().parse().map_err(|_| bad(text))?;
        if n < 1 {
            return Err(bad(text));
        }
        Ok((n, n))
    }
}
