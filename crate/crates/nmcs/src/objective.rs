//! Bounded objective functions and the evaluation bookkeeping shared by all
//! optimizers in this crate.
//!
//! Every algorithm here minimizes a black-box function over a rectangular
//! domain under a hard evaluation budget. [`ObjectiveSpec`] describes the
//! problem, [`CountedObjective`] wraps it with budget enforcement and
//! best-so-far tracking, and [`RunReport`] is the uniform result record the
//! experiment harness consumes.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

/// Errors surfaced by the optimizer layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The evaluation budget was already spent when another evaluation was
    /// requested. Optimizers treat this as a normal termination signal.
    #[error("evaluation budget exhausted after {used} evaluations")]
    BudgetExhausted {
        /// Evaluations performed before the failed request.
        used: usize,
    },
    /// A point's length does not match the objective dimension.
    #[error("point has dimension {got}, objective expects {expected}")]
    DimensionMismatch {
        /// Dimension declared by the objective.
        expected: usize,
        /// Length of the offending point.
        got: usize,
    },
    /// A parameter set failed validation (details in the message).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// Rank-based migration asked for more donor vertices than exist.
    #[error("migration pressure {pressure} exceeds available ranks {available}")]
    RankUnavailable {
        /// Requested number of donor vertices.
        pressure: usize,
        /// Non-best vertices available in a simplex (equals the dimension).
        available: usize,
    },
}

/// A minimization problem over a rectangular domain.
///
/// The evaluator is shared behind an [`Arc`] so specs can be cloned cheaply
/// and sent across threads by parallel experiment runners.
#[derive(Clone)]
pub struct ObjectiveSpec {
    /// Human-readable identifier used in reports ("RC", "ss_n4", ...).
    pub name: String,
    /// Problem dimension (number of decision variables), at least 1.
    pub d: usize,
    /// Per-coordinate lower bounds, length `d`.
    pub lower: Vec<f64>,
    /// Per-coordinate upper bounds, length `d`, strictly above `lower`.
    pub upper: Vec<f64>,
    /// The black-box function to minimize.
    evaluator: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("d", &self.d)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .finish_non_exhaustive()
    }
}

impl ObjectiveSpec {
    /// Builds a spec, validating the domain.
    ///
    /// Returns [`Error::InvalidParams`] when `d == 0`, when the bound vectors
    /// do not both have length `d`, or when any `lower[i] >= upper[i]`.
    pub fn new(
        name: impl Into<String>,
        d: usize,
        lower: Vec<f64>,
        upper: Vec<f64>,
        evaluator: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1".into()));
        }
        if lower.len() != d || upper.len() != d {
            return Err(Error::InvalidParams(format!(
                "bounds must have length {d} (got {} and {})",
                lower.len(),
                upper.len()
            )));
        }
        for i in 0..d {
            if !(lower[i] < upper[i]) {
                return Err(Error::InvalidParams(format!(
                    "lower[{i}] = {} must be strictly below upper[{i}] = {}",
                    lower[i], upper[i]
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            d,
            lower,
            upper,
            evaluator: Arc::new(evaluator),
        })
    }

    /// Evaluates the raw objective without budget accounting.
    ///
    /// Optimizers must go through [`CountedObjective::evaluate`] instead;
    /// this entry point exists for verification (e.g. re-checking a reported
    /// best value) and tests.
    pub fn evaluate_unchecked(&self, x: &[f64]) -> Result<f64, Error> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: x.len(),
            });
        }
        Ok((self.evaluator)(x))
    }

    /// Draws a uniform point inside the domain.
    pub fn sample_uniform<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.d)
            .map(|i| rng.random_range(self.lower[i]..=self.upper[i]))
            .collect()
    }
}

/// Clamps `x` into the spec's rectangular domain, coordinate by coordinate.
///
/// All optimizers in this crate handle out-of-bounds candidates by clamping
/// before evaluation, so the evaluator only ever sees feasible points.
pub fn clamp_to_bounds(x: &[f64], spec: &ObjectiveSpec) -> Result<Vec<f64>, Error> {
    if x.len() != spec.d {
        return Err(Error::DimensionMismatch {
            expected: spec.d,
            got: x.len(),
        });
    }
    Ok(x.iter()
        .enumerate()
        .map(|(i, &v)| v.clamp(spec.lower[i], spec.upper[i]))
        .collect())
}

/// A hard cap on objective evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvaluationBudget {
    /// Maximum number of evaluations permitted.
    pub max_evals: usize,
}

impl EvaluationBudget {
    /// Convenience constructor.
    pub fn new(max_evals: usize) -> Self {
        Self { max_evals }
    }
}

/// Termination rule shared by the iterative optimizers.
///
/// Every optimizer always stops when the budget runs out; `Spread`
/// additionally stops when the dispersion of the tracked fitness values
/// falls below `epsilon` (see each optimizer for what exactly is tracked).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopRule {
    /// Run until the evaluation budget is exhausted.
    BudgetOnly,
    /// Stop early once the fitness spread drops below `epsilon`.
    Spread {
        /// Threshold on the root of the summed squared deviations.
        epsilon: f64,
    },
}

/// Root of the summed squared deviations from the mean,
/// `sqrt(sum_i (v_i - mean)^2)`.
///
/// This is the dispersion statistic used by the spread stop rule. Note the
/// mean uses divisor `N` and the sum is not divided by anything, so for two
/// values `{0, 1e-3}` the statistic is ~7.07e-4, not the sample standard
/// deviation.
pub fn spread_statistic(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        .sqrt()
}

/// Budget-enforcing wrapper around an [`ObjectiveSpec`] that tracks the
/// best point seen and an improvement trace.
///
/// Exactly the evaluations that return `Ok` are counted; a rejected request
/// (budget spent, wrong dimension) changes nothing.
pub struct CountedObjective<'a> {
    spec: &'a ObjectiveSpec,
    budget: EvaluationBudget,
    used: usize,
    best_point: Option<Vec<f64>>,
    best_value: f64,
    /// `(evals_used, best_value)` records, appended whenever the best
    /// strictly improves.
    trace: Vec<(usize, f64)>,
    started: Instant,
}

impl<'a> CountedObjective<'a> {
    /// Starts a counted run against `spec` with the given budget.
    pub fn new(spec: &'a ObjectiveSpec, budget: EvaluationBudget) -> Self {
        Self {
            spec,
            budget,
            used: 0,
            best_point: None,
            best_value: f64::INFINITY,
            trace: Vec::new(),
            started: Instant::now(),
        }
    }

    /// The wrapped problem description.
    pub fn spec(&self) -> &ObjectiveSpec {
        self.spec
    }

    /// Evaluations performed so far.
    pub fn evals_used(&self) -> usize {
        self.used
    }

    /// Evaluations still available.
    pub fn remaining(&self) -> usize {
        self.budget.max_evals - self.used
    }

    /// Best value seen so far (infinity before the first evaluation).
    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    /// Evaluates `x`, spending one unit of budget.
    ///
    /// Returns [`Error::BudgetExhausted`] without evaluating when the budget
    /// is spent, and [`Error::DimensionMismatch`] for wrong-length points.
    /// A strict improvement updates the best-so-far and appends to the
    /// trace; ties leave the incumbent in place.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64, Error> {
        if x.len() != self.spec.d {
            return Err(Error::DimensionMismatch {
                expected: self.spec.d,
                got: x.len(),
            });
        }
        if self.used >= self.budget.max_evals {
            return Err(Error::BudgetExhausted { used: self.used });
        }
        let value = (self.spec.evaluator)(x);
        self.used += 1;
        if value < self.best_value {
            self.best_value = value;
            self.best_point = Some(x.to_vec());
            self.trace.push((self.used, value));
        }
        Ok(value)
    }

    /// Clamps `x` into the domain (see [`clamp_to_bounds`]).
    pub fn clamp(&self, x: &[f64]) -> Result<Vec<f64>, Error> {
        clamp_to_bounds(x, self.spec)
    }

    /// Closes the run and produces its report.
    ///
    /// `stop_rule_fired` records whether the optimizer's early-stop rule
    /// (rather than the budget) ended the run; `seed` is the RNG seed the
    /// caller used, echoed into the report for reproducibility.
    pub fn finish(self, stop_rule_fired: bool, seed: u64) -> RunReport {
        RunReport {
            best_point: self.best_point.unwrap_or_default(),
            best_value: self.best_value,
            evals_used: self.used,
            stop_rule_fired,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
            seed,
            trace: self.trace,
        }
    }
}

/// Uniform result record produced by every optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    /// Best point found (empty if the run never evaluated anything).
    pub best_point: Vec<f64>,
    /// Objective value at `best_point`; re-evaluating `best_point` must
    /// reproduce it exactly.
    pub best_value: f64,
    /// Evaluations actually consumed (never above the budget).
    pub evals_used: usize,
    /// Whether the early-stop rule, not the budget, ended the run.
    pub stop_rule_fired: bool,
    /// Wall-clock duration of the run in seconds.
    pub wall_time_seconds: f64,
    /// RNG seed used for the run, echoed for reproducibility.
    pub seed: u64,
    /// `(evals_used, best_value)` at every strict improvement.
    pub trace: Vec<(usize, f64)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_spec() -> ObjectiveSpec {
        ObjectiveSpec::new("sphere", 2, vec![-5.0, -5.0], vec![5.0, 5.0], |x| {
            x.iter().map(|v| v * v).sum()
        })
        .unwrap()
    }

    #[test]
    fn rejects_invalid_domains() {
        let err = ObjectiveSpec::new("bad", 0, vec![], vec![], |_| 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParams(_)));
        let err =
            ObjectiveSpec::new("bad", 2, vec![0.0, 0.0], vec![1.0], |_| 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParams(_)));
        let err = ObjectiveSpec::new("bad", 1, vec![1.0], vec![1.0], |_| 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidParams(_)));
    }

    #[test]
    fn clamp_projects_onto_domain() {
        // Branin domain: [-5, 10] x [0, 15].
        let spec = ObjectiveSpec::new("RC", 2, vec![-5.0, 0.0], vec![10.0, 15.0], |_| 0.0)
            .unwrap();
        let clamped = clamp_to_bounds(&[11.0, -6.0], &spec).unwrap();
        assert_eq!(clamped, vec![10.0, 0.0]);
        // Interior points pass through untouched.
        let same = clamp_to_bounds(&[1.5, 2.5], &spec).unwrap();
        assert_eq!(same, vec![1.5, 2.5]);
        assert!(matches!(
            clamp_to_bounds(&[0.0], &spec),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn budget_is_a_hard_cap() {
        let spec = sphere_spec();
        let mut counted = CountedObjective::new(&spec, EvaluationBudget::new(5));
        for i in 0..5 {
            assert!(counted.evaluate(&[i as f64, 0.0]).is_ok());
        }
        assert_eq!(counted.evals_used(), 5);
        assert_eq!(counted.remaining(), 0);
        let err = counted.evaluate(&[0.0, 0.0]).unwrap_err();
        assert_eq!(err, Error::BudgetExhausted { used: 5 });
        // The failed request spent nothing.
        assert_eq!(counted.evals_used(), 5);
    }

    #[test]
    fn tracks_strict_improvements_only() {
        let spec = sphere_spec();
        let mut counted = CountedObjective::new(&spec, EvaluationBudget::new(10));
        counted.evaluate(&[2.0, 0.0]).unwrap(); // 4.0, first -> traced
        counted.evaluate(&[2.0, 0.0]).unwrap(); // tie -> not traced
        counted.evaluate(&[3.0, 0.0]).unwrap(); // worse -> not traced
        counted.evaluate(&[1.0, 0.0]).unwrap(); // 1.0 -> traced
        let report = counted.finish(false, 7);
        assert_eq!(report.best_value, 1.0);
        assert_eq!(report.best_point, vec![1.0, 0.0]);
        assert_eq!(report.evals_used, 4);
        assert_eq!(report.seed, 7);
        assert_eq!(report.trace, vec![(1, 4.0), (4, 1.0)]);
        // Reported best re-evaluates to exactly the reported value.
        let again = spec.evaluate_unchecked(&report.best_point).unwrap();
        assert_eq!(again, report.best_value);
    }

    #[test]
    fn spread_statistic_matches_hand_values() {
        // Two values {0, 1e-3}: mean 5e-4, deviations +-5e-4,
        // sqrt(2 * 2.5e-7) = 7.0710678e-4.
        let s = spread_statistic(&[0.0, 1e-3]);
        assert!((s - 7.071067811865475e-4).abs() < 1e-18);
        // Two nearly identical values.
        let s = spread_statistic(&[1e-8, 1.05e-8]);
        assert!((s - 3.535533905932738e-10).abs() < 1e-22);
        // Constant slice has zero spread.
        assert_eq!(spread_statistic(&[4.2, 4.2, 4.2]), 0.0);
        assert_eq!(spread_statistic(&[]), 0.0);
    }
}
