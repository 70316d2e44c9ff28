//! Simulated annealing and a small real-coded genetic algorithm.
//!
//! These are deliberately plain implementations configured the way the
//! solar-stack comparison experiments expect them (multi-start SA with a
//! periodically reset geometric cooling schedule; a 15-individual GA with
//! elitism, blend crossover, and uniform mutation). They exist to give the
//! simplex-colony hybrid something honest to beat, not to be competitive
//! optimizers in their own right.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::objective::{
    CountedObjective, Error, EvaluationBudget, ObjectiveSpec, RunReport,
};

/// Tuning knobs for [`sa_minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaParams {
    /// Initial temperature (> 0).
    pub t0: f64,
    /// Geometric cooling multiplier per iteration, in (0, 1).
    pub cooling: f64,
    /// Iterations between full temperature resets (>= 1).
    pub reanneal_interval: usize,
}

impl Default for SaParams {
    fn default() -> Self {
        Self {
            t0: 100.0,
            cooling: 0.95,
            reanneal_interval: 100,
        }
    }
}

impl SaParams {
    /// Validates all parameter ranges.
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.t0 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "t0 must be > 0 (got {})",
                self.t0
            )));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::InvalidParams(format!(
                "cooling must lie in (0, 1) (got {})",
                self.cooling
            )));
        }
        if self.reanneal_interval == 0 {
            return Err(Error::InvalidParams(
                "reanneal_interval must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// The Metropolis acceptance rule: improvements always pass, a worsening
/// move of `delta_f` passes with probability `exp(-delta_f / temperature)`.
/// At zero temperature only strict improvements are accepted.
pub fn metropolis_accepts<R: Rng + ?Sized>(
    delta_f: f64,
    temperature: f64,
    rng: &mut R,
) -> bool {
    delta_f < 0.0
        || (temperature > 0.0 && rng.random::<f64>() < (-delta_f / temperature).exp())
}

/// Uniform direction on the unit sphere via normalized Gaussians.
fn unit_direction<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Multi-start simulated annealing.
///
/// The budget is split evenly across `starts` (earlier starts absorb the
/// remainder). Within a start, iteration `t` (0-based) runs at temperature
/// `t0 * cooling^(t mod reanneal_interval)` — a geometric schedule with a
/// full reset to `t0` every `reanneal_interval` iterations. Each iteration
/// proposes `x + sqrt(T) * u` with `u` uniform on the unit sphere, clamps
/// it to bounds, and applies the Metropolis rule. Runs until the budget is
/// gone; the report carries the best point ever evaluated across all
/// starts. The report's `seed` field is 0 — the caller owns the RNG.
pub fn sa_minimize<R: Rng + ?Sized>(
    spec: &ObjectiveSpec,
    params: &SaParams,
    starts: &[Vec<f64>],
    budget: EvaluationBudget,
    rng: &mut R,
) -> Result<RunReport, Error> {
    params.validate()?;
    if starts.is_empty() {
        return Err(Error::InvalidParams(
            "simulated annealing needs at least one start point".into(),
        ));
    }
    let d = spec.d;
    let mut f = CountedObjective::new(spec, budget);
    let base = budget.max_evals / starts.len();
    let remainder = budget.max_evals % starts.len();

    'all: for (s_idx, start) in starts.iter().enumerate() {
        let quota = base + usize::from(s_idx < remainder);
        if quota == 0 {
            continue;
        }
        let spent_before = f.evals_used();
        let mut x = f.clamp(start)?;
        let mut fx = match f.evaluate(&x) {
            Ok(v) => v,
            Err(Error::BudgetExhausted { .. }) => break 'all,
            Err(e) => return Err(e),
        };
        let mut t: u64 = 0;
        while f.evals_used() - spent_before < quota {
            let temp = params.t0
                * params
                    .cooling
                    .powf((t % params.reanneal_interval as u64) as f64);
            let step = temp.sqrt();
            let dir = unit_direction(d, rng);
            let candidate: Vec<f64> =
                x.iter().zip(&dir).map(|(xi, di)| xi + step * di).collect();
            let candidate = f.clamp(&candidate)?;
            let fc = match f.evaluate(&candidate) {
                Ok(v) => v,
                Err(Error::BudgetExhausted { .. }) => break 'all,
                Err(e) => return Err(e),
            };
            if metropolis_accepts(fc - fx, temp, rng) {
                x = candidate;
                fx = fc;
            }
            t += 1;
        }
    }
    Ok(f.finish(false, 0))
}

/// Tuning knobs for [`ga_minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    /// Population size (>= 2).
    pub pop_size: usize,
    /// Individuals copied unchanged into the next generation.
    pub elite_count: usize,
    /// Fraction of each generation's children produced by crossover (the
    /// rest are mutated copies), in [0, 1].
    pub crossover_fraction: f64,
    /// Per-gene probability of a uniform in-bounds resample, in [0, 1].
    pub mutation_rate: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            pop_size: 15,
            elite_count: 2,
            crossover_fraction: 0.8,
            mutation_rate: 0.01,
        }
    }
}

impl GaParams {
    /// Validates all parameter ranges.
    pub fn validate(&self) -> Result<(), Error> {
        if self.pop_size < 2 {
            return Err(Error::InvalidParams(format!(
                "pop_size must be >= 2 (got {})",
                self.pop_size
            )));
        }
        if self.elite_count >= self.pop_size {
            return Err(Error::InvalidParams(format!(
                "elite_count ({}) must be below pop_size ({})",
                self.elite_count, self.pop_size
            )));
        }
        if !(0.0..=1.0).contains(&self.crossover_fraction) {
            return Err(Error::InvalidParams(format!(
                "crossover_fraction must lie in [0, 1] (got {})",
                self.crossover_fraction
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::InvalidParams(format!(
                "mutation_rate must lie in [0, 1] (got {})",
                self.mutation_rate
            )));
        }
        Ok(())
    }
}

/// Size-2 tournament: draw two individuals (with replacement), keep the
/// fitter one.
fn tournament<'a, R: Rng + ?Sized>(
    pop: &'a [(Vec<f64>, f64)],
    rng: &mut R,
) -> &'a [f64] {
    let a = rng.random_range(0..pop.len());
    let b = rng.random_range(0..pop.len());
    if pop[a].1 <= pop[b].1 {
        &pop[a].0
    } else {
        &pop[b].0
    }
}

/// Generational genetic algorithm with elitism.
///
/// The initial population takes `seeds` first (clamped), topped up with
/// uniform draws, and costs `pop_size` evaluations. Every later generation
/// copies the `elite_count` best unchanged and fills the remaining
/// `pop_size - elite_count` slots with children — a
/// `round(crossover_fraction * children)` share from intermediate blend
/// crossover (`child_g = λ_g·a_g + (1-λ_g)·b_g`, `λ_g ~ U(0,1)` per gene,
/// parents by size-2 tournament) and the rest as mutated tournament copies
/// (each gene resampled uniformly in bounds with probability
/// `mutation_rate`). Children are clamped and cost one evaluation each;
/// elites are not re-evaluated. Runs until the budget is gone. The report's
/// `seed` field is 0 — the caller owns the RNG.
pub fn ga_minimize<R: Rng + ?Sized>(
    spec: &ObjectiveSpec,
    params: &GaParams,
    seeds: &[Vec<f64>],
    budget: EvaluationBudget,
    rng: &mut R,
) -> Result<RunReport, Error> {
    params.validate()?;
    let d = spec.d;
    let mut f = CountedObjective::new(spec, budget);

    let mut pop: Vec<(Vec<f64>, f64)> = Vec::with_capacity(params.pop_size);
    for i in 0..params.pop_size {
        let point = match seeds.get(i) {
            Some(s) => f.clamp(s)?,
            None => spec.sample_uniform(rng),
        };
        match f.evaluate(&point) {
            Ok(v) => pop.push((point, v)),
            Err(Error::BudgetExhausted { .. }) => return Ok(f.finish(false, 0)),
            Err(e) => return Err(e),
        }
    }

    let children_per_gen = params.pop_size - params.elite_count;
    let n_crossover = ((params.crossover_fraction * children_per_gen as f64).round() as usize)
        .min(children_per_gen);
    let n_mutation = children_per_gen - n_crossover;

    'gens: loop {
        pop.sort_by(|a, b| a.1.total_cmp(&b.1));
        let elites: Vec<(Vec<f64>, f64)> = pop[..params.elite_count].to_vec();

        let mut children: Vec<Vec<f64>> = Vec::with_capacity(children_per_gen);
        for _ in 0..n_crossover {
            let a = tournament(&pop, rng).to_vec();
            let b = tournament(&pop, rng).to_vec();
            let child: Vec<f64> = (0..d)
                .map(|g| {
                    let lambda: f64 = rng.random();
                    lambda * a[g] + (1.0 - lambda) * b[g]
                })
                .collect();
            children.push(f.clamp(&child)?);
        }
        for _ in 0..n_mutation {
            let mut child = tournament(&pop, rng).to_vec();
            for g in 0..d {
                if rng.random::<f64>() < params.mutation_rate {
                    child[g] = rng.random_range(spec.lower[g]..=spec.upper[g]);
                }
            }
            children.push(child);
        }

        let mut next = elites;
        for child in children {
            match f.evaluate(&child) {
                Ok(v) => next.push((child, v)),
                Err(Error::BudgetExhausted { .. }) => break 'gens,
                Err(e) => return Err(e),
            }
        }
        pop = next;
    }
    Ok(f.finish(false, 0))
}
