//! The simplex-colony hybrid: cuckoo search whose nests are Nelder-Mead
//! simplexes and whose proposal move is the simplex flip.
//!
//! Each iteration flips one randomly chosen simplex, then lets it challenge
//! a second random simplex: when the flipped nest is fitter, it donates its
//! runner-up vertices to the weaker nest (never its best vertex, so the
//! donor keeps its lead). Periodically the worst nests are abandoned and
//! rebuilt around fresh uniform anchors. The colony stops when the best
//! nests' fitnesses have collapsed onto each other or the budget ends.

use rand::Rng;

use crate::nelder_mead::{flip, make_initial_simplex, NmsConfig, Simplex};
use crate::objective::{
    spread_statistic, CountedObjective, Error, EvaluationBudget, ObjectiveSpec, RunReport,
};

/// A colony member: one simplex, ranked by its best vertex value.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexNest {
    /// The nest's simplex, kept sorted between steps.
    pub simplex: Simplex,
    /// Bits of the nest's best value while that best is an unimproved
    /// migrated copy; cleared implicitly once any own evaluation beats it.
    borrowed: Option<u64>,
    /// Whether the nest has taken at least one flip of its own.
    moved: bool,
}

impl SimplexNest {
    /// Wraps a freshly built simplex; everything it holds is its own work.
    pub fn new(simplex: Simplex) -> Self {
        Self {
            simplex,
            borrowed: None,
            moved: false,
        }
    }

    /// Nest quality: the best vertex value of the simplex.
    pub fn fitness(&self) -> f64 {
        self.simplex.best_value()
    }

    /// Records that the nest advanced by one flip of its own.
    pub fn record_flip(&mut self, simplex: Simplex) {
        self.simplex = simplex;
        self.moved = true;
    }

    /// Whether the nest's best solution is its own work rather than an
    /// unimproved migrated copy. Only testifying nests enter the stop
    /// pool: a borrowed best duplicates the donor's evidence.
    pub fn testifies(&self) -> bool {
        self.borrowed != Some(self.fitness().to_bits())
    }

    /// Whether the nest's own search has ended: it has flipped at least
    /// once and its vertex values now agree within `epsilon`. A collapsed
    /// simplex proposes only points inside its own vanishing hull, so it
    /// can neither move on nor produce new information — exactly the state
    /// where a standalone simplex search terminates. A simplex that merely
    /// *starts* with equal values (a plateau, or a degenerate objective)
    /// has not searched anything yet and is not exhausted.
    pub fn exhausted(&self, epsilon: f64) -> bool {
        self.moved && self.simplex.worst_value() - self.simplex.best_value() < epsilon
    }
}

/// The full set of simplex nests being evolved.
#[derive(Debug, Clone)]
pub struct Colony {
    /// All nests, in stable slot order (not sorted by fitness).
    pub nests: Vec<SimplexNest>,
}

/// Tuning knobs for [`nmcs_minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct HybridParams {
    /// Number of simplex nests (>= 1).
    pub n_nests: usize,
    /// Vertices migrated per donation, `1 <= p <= d`.
    pub p: usize,
    /// Abandonment period in generations of `n_nests` iterations (>= 1);
    /// default `2 * n_nests`.
    pub k: usize,
    /// Fraction of nests abandoned per round, in (0, 1).
    pub p_a: f64,
    /// Upper bound of the uniform interval the per-simplex initial edge
    /// scale is drawn from.
    pub init_scale_max: f64,
    /// Spread-stop tolerance; 0 disables the early stop.
    pub epsilon: f64,
    /// Number of best nests entering the stop statistic; default
    /// `max(n_nests / 3, 2)`, silently capped at the colony size.
    pub ranking_pool: usize,
    /// Objective level treated as converged: the run stops as soon as the
    /// best evaluation reaches it. `None` (the default) disables the check;
    /// budget-conscious harnesses with a known target level set it.
    pub goal: Option<f64>,
    /// Flip configuration shared by every nest.
    pub nms: NmsConfig,
}

impl HybridParams {
    /// Canonical parameter set for a colony of `n_nests` simplexes:
    /// `p = 1`, `k = 2 * n_nests`, `p_a = 0.25`, init scale drawn from
    /// (0, 0.25), `epsilon = 1e-7`, ranking pool a third of the colony.
    pub fn defaults_for(n_nests: usize) -> Self {
        Self {
            n_nests,
            p: 1,
            k: 2 * n_nests.max(1),
            p_a: 0.25,
            init_scale_max: 0.25,
            epsilon: 1e-7,
            ranking_pool: (n_nests / 3).max(2),
            goal: None,
            nms: NmsConfig::default(),
        }
    }

    /// Validates the parameter set against problem dimension `d`.
    pub fn validate(&self, d: usize) -> Result<(), Error> {
        if self.n_nests == 0 {
            return Err(Error::InvalidParams("n_nests must be >= 1".into()));
        }
        if self.p == 0 || self.p > d {
            return Err(Error::InvalidParams(format!(
                "migration pressure p must lie in 1..=d (got p={}, d={d})",
                self.p
            )));
        }
        if self.k == 0 {
            return Err(Error::InvalidParams("abandonment period k must be >= 1".into()));
        }
        if !(self.p_a > 0.0 && self.p_a < 1.0) {
            return Err(Error::InvalidParams(format!(
                "p_a must lie in (0, 1) (got {})",
                self.p_a
            )));
        }
        if !(self.init_scale_max > 0.0) {
            return Err(Error::InvalidParams(format!(
                "init_scale_max must be > 0 (got {})",
                self.init_scale_max
            )));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon must be >= 0 (got {})",
                self.epsilon
            )));
        }
        if self.ranking_pool == 0 {
            return Err(Error::InvalidParams("ranking_pool must be >= 1".into()));
        }
        if self.goal.is_some_and(f64::is_nan) {
            return Err(Error::InvalidParams("goal must not be NaN".into()));
        }
        self.nms.coefficients.validate()
    }
}

/// Draws the per-simplex initial edge scale from `(0, max)`; the open lower
/// end matters because a zero scale would degenerate the simplex.
fn draw_scale<R: Rng + ?Sized>(rng: &mut R, max: f64) -> f64 {
    loop {
        let s = rng.random_range(0.0..max);
        if s > 0.0 {
            return s;
        }
    }
}

/// Builds the initial colony.
///
/// Nest `i` is seeded on `anchors[i]` where provided; once the anchors run
/// out (an empty list is fine), anchors are drawn uniformly in bounds.
/// Each nest then gets its own edge scale drawn uniformly from
/// `(0, init_scale_max)` and is built via [`make_initial_simplex`], so the
/// whole colony costs exactly `n_nests * (d + 1)` evaluations. Per nest the
/// RNG is consumed in a fixed order — anchor draw (when random) first, then
/// the scale draw — keeping runs reproducible.
pub fn init_colony<R: Rng + ?Sized>(
    f: &mut CountedObjective,
    params: &HybridParams,
    anchors: &[Vec<f64>],
    rng: &mut R,
) -> Result<Colony, Error> {
    let mut nests = Vec::with_capacity(params.n_nests);
    for idx in 0..params.n_nests {
        let anchor = match anchors.get(idx) {
            Some(a) => f.clamp(a)?,
            None => f.spec().sample_uniform(rng),
        };
        let scale = draw_scale(rng, params.init_scale_max);
        let simplex = make_initial_simplex(&anchor, scale, f)?;
        nests.push(SimplexNest::new(simplex));
    }
    Ok(Colony { nests })
}

/// Exact (bit-level) point equality, used to detect re-donated vertices.
fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Donates the donor's runner-up vertices to the target.
///
/// The target's worst vertices are overwritten by the donor's ranks
/// `2..=p+1` — the donor's best vertex is deliberately withheld so the two
/// nests cannot collapse onto the same leader. Values travel with the
/// vertices (no re-evaluation), and the result is re-sorted.
///
/// A donor vertex that is already present in the target bit for bit is
/// skipped: re-testing a solution a nest already holds wastes the move, and
/// repeated donations of one vertex would degenerate the target's simplex
/// (two identical vertices flatten it and freeze the flip geometry). Only
/// the accepted donations overwrite target slots, so a fully duplicate
/// donation leaves the target unchanged. The caller guarantees `donor` is
/// fitter than `target` and the two are distinct.
///
/// When the donation improves the target's best, the returned nest records
/// that its best is borrowed (see [`SimplexNest::testifies`]); otherwise the
/// target's own provenance state carries over unchanged.
pub fn migrate(donor: &SimplexNest, target: &SimplexNest, p: usize) -> Result<SimplexNest, Error> {
    let d = donor.simplex.dimension();
    if p + 1 > d + 1 {
        return Err(Error::RankUnavailable {
            pressure: p,
            available: d,
        });
    }
    debug_assert!(donor.fitness() <= target.fitness());
    let n = target.simplex.len();
    let mut vertices: Vec<Vec<f64>> = target.simplex.vertices().to_vec();
    let mut values: Vec<f64> = target.simplex.values().to_vec();
    let mut accepted: Vec<(Vec<f64>, f64)> = Vec::with_capacity(p);
    for r in 0..p {
        let v = donor.simplex.vertex(1 + r);
        let duplicate = vertices.iter().any(|w| same_point(w, v))
            || accepted.iter().any(|(w, _)| same_point(w, v));
        if !duplicate {
            accepted.push((v.to_vec(), donor.simplex.value(1 + r)));
        }
    }
    let a = accepted.len();
    for (r, (v, val)) in accepted.into_iter().enumerate() {
        vertices[n - a + r] = v;
        values[n - a + r] = val;
    }
    let simplex = Simplex::from_evaluated(vertices, values)?;
    let borrowed = if simplex.best_value() < target.fitness() {
        Some(simplex.best_value().to_bits())
    } else {
        target.borrowed
    };
    Ok(SimplexNest {
        simplex,
        borrowed,
        moved: target.moved,
    })
}

/// Spread-based stop test over the `pool` best independent solutions.
///
/// Computes `S = sqrt(sum_i (f_i - mean)^2)` across the fitnesses of the
/// pool's best nests and fires when `S < epsilon`. Migration copies
/// vertices between nests verbatim, so a nest whose best vertex is an
/// unimproved donation is not independent convergence evidence: its
/// fitness is one of the donor's own vertex values, and counting both
/// sides would fire the rule the moment a donation from an internally
/// converged nest lands. Nests that do not [testify](SimplexNest::testifies)
/// are therefore excluded, as are [exhausted](SimplexNest::exhausted) ones:
/// a simplex that collapsed onto some level set has finished its own search
/// and is frozen there, so leaving it in the pool would let one early local
/// convergence sit as a permanent witness waiting for any second nest to
/// brush the same value. Live nests pass near each other's values whenever
/// they genuinely share a basin, so real colony convergence still fires.
/// The rule is additionally gated on at least `pool` eligible nests (capped
/// at the colony size): judging convergence on a lone witness would stop
/// the colony whenever the others happen to be riding donations. Among the
/// witnesses, exact fitness ties collapse to one entry (distinct
/// evaluations essentially never collide bit for bit, so a tie identifies
/// a shared solution), and ties *are* agreement — a constant objective
/// collapses every witness into one entry and stops immediately with
/// `S = 0`.
pub fn stop_check(colony: &Colony, pool: usize, epsilon: f64) -> bool {
    let mut order: Vec<&SimplexNest> = colony
        .nests
        .iter()
        .filter(|nest| nest.testifies() && !nest.exhausted(epsilon))
        .collect();
    if order.len() < pool.min(colony.nests.len()) {
        return false;
    }
    order.sort_by(|a, b| a.fitness().total_cmp(&b.fitness()));
    let mut fits: Vec<f64> = Vec::with_capacity(pool);
    for nest in order {
        if fits.len() == pool {
            break;
        }
        if fits
            .last()
            .is_some_and(|prev| prev.to_bits() == nest.fitness().to_bits())
        {
            continue;
        }
        fits.push(nest.fitness());
    }
    spread_statistic(&fits) < epsilon
}

/// Hybrid minimization: cuckoo search over a colony of simplexes with the
/// Nelder-Mead flip as the proposal move.
///
/// Loop structure, with the iteration counter `t` starting at 1. One
/// *generation* is `n` iterations — the point at which the colony has taken
/// as many flips as it has nests, the natural clock of a population whose
/// members move one at a time. Abandonment runs on the generation clock:
///
/// * at the first iteration of generation `g` with `g > 1` and
///   `g ≡ 1 (mod k)` — i.e. whenever `k` full generations have elapsed —
///   the round abandons the `ceil(p_a * n)` worst nests (capped so the
///   best always survives), rebuilding each around a fresh uniform anchor
///   exactly like [`init_colony`]. Counting iterations instead would
///   recycle a quarter of the colony every `2n` flips: each nest would
///   average only ~8 flips between purges, far too few to finish a descent
///   in anything but the smallest dimensions, and the rebuild evaluations
///   alone would rival the flips. On the generation clock each surviving
///   nest gets ~`k` flips per round — a full local search — while the
///   colony still turns over unpromising regions many times per budget;
/// * then, every iteration:
/// * one uniformly chosen *live* nest `i` advances by one flip. A nest
///   whose own search has [ended](SimplexNest::exhausted) cannot advance —
///   flipping a collapsed simplex spends evaluations proposing points
///   inside its own vanishing hull — so exhausted nests stop drawing flips
///   and serve only as archives and donors (a donation that spreads their
///   values out revives them). If every nest is exhausted the colony has
///   terminated as a whole, which counts as the stop rule firing;
/// * a second nest `j != i` is drawn, and if nest `i` is now strictly
///   fitter it donates `p` runner-up vertices to `j` via [`migrate`];
/// * [`stop_check`] runs after initialization and after every iteration,
///   and when `params.goal` is set the run additionally stops as soon as
///   the best evaluation so far reaches that level — both count as the
///   stop rule having fired.
///
/// Budget exhaustion anywhere is normal termination; the report carries the
/// best vertex ever evaluated, including ones from nests that were later
/// abandoned. The report's `seed` field is 0 — the caller owns the RNG.
pub fn nmcs_minimize<R: Rng + ?Sized>(
    spec: &ObjectiveSpec,
    params: &HybridParams,
    anchors: &[Vec<f64>],
    budget: EvaluationBudget,
    rng: &mut R,
) -> Result<RunReport, Error> {
    params.validate(spec.d)?;
    let n = params.n_nests;
    let mut f = CountedObjective::new(spec, budget);
    let goal_met = |f: &CountedObjective| params.goal.is_some_and(|g| f.best_value() <= g);
    let mut colony = match init_colony(&mut f, params, anchors, rng) {
        Ok(c) => c,
        Err(Error::BudgetExhausted { .. }) => {
            let reached = goal_met(&f);
            return Ok(f.finish(reached, 0));
        }
        Err(e) => return Err(e),
    };
    if goal_met(&f) || stop_check(&colony, params.ranking_pool, params.epsilon) {
        return Ok(f.finish(true, 0));
    }

    let abandon_count = ((params.p_a * n as f64).ceil() as usize).min(n - 1);
    let mut stop_fired = false;
    let mut t: u64 = 0;
    'run: loop {
        t += 1;

        // Abandonment round: first due after k full generations (k·n
        // iterations), then every k generations.
        let period = params.k as u64 * n as u64;
        if t > 1 && (t - 1) % period == 0 && abandon_count > 0 {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| {
                colony.nests[a].fitness().total_cmp(&colony.nests[b].fitness())
            });
            for &idx in order.iter().rev().take(abandon_count) {
                let anchor = f.spec().sample_uniform(rng);
                let scale = draw_scale(rng, params.init_scale_max);
                match make_initial_simplex(&anchor, scale, &mut f) {
                    Ok(simplex) => colony.nests[idx] = SimplexNest::new(simplex),
                    Err(Error::BudgetExhausted { .. }) => break 'run,
                    Err(e) => return Err(e),
                }
            }
        }

        // Local move: one flip on a random live nest. An exhausted nest
        // cannot advance — a standalone simplex search would already have
        // returned — so it stops drawing flips and survives only as an
        // archive and donor. Should every nest finish its own search, the
        // colony has terminated as a whole: there is no move left to make.
        let live: Vec<usize> = (0..n)
            .filter(|&q| !colony.nests[q].exhausted(params.epsilon))
            .collect();
        if live.is_empty() {
            stop_fired = true;
            break;
        }
        let i = live[rng.random_range(0..live.len())];
        match flip(&colony.nests[i].simplex, &mut f, &params.nms) {
            Ok((s, _)) => colony.nests[i].record_flip(s),
            Err(Error::BudgetExhausted { .. }) => break,
            Err(e) => return Err(e),
        }

        // Challenge: donate runner-up vertices to a weaker random nest.
        if n > 1 {
            let j = loop {
                let j = rng.random_range(0..n);
                if j != i {
                    break j;
                }
            };
            if colony.nests[i].fitness() < colony.nests[j].fitness() {
                colony.nests[j] = migrate(&colony.nests[i], &colony.nests[j], params.p)?;
            }
        }

        if goal_met(&f) || stop_check(&colony, params.ranking_pool, params.epsilon) {
            stop_fired = true;
            break;
        }
    }
    // A run that reached the goal on its very last evaluation (inside a move
    // that then drained the budget) still counts as a precision stop.
    let stop_fired = stop_fired || goal_met(&f);
    Ok(f.finish(stop_fired, 0))
}
