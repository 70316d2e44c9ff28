//! Derivative-free optimization built around a colony of Nelder-Mead
//! simplexes that cooperate cuckoo-search style, plus the pieces needed to
//! exercise it: a plain cuckoo search, simulated-annealing and genetic
//! baselines, the classic low-dimensional benchmark functions, and a
//! detailed-balance model of split-spectrum / multi-junction solar stacks
//! whose design problem the hybrid was built for.
//!
//! The crate is organised bottom-up:
//!
//! * [`objective`] — bounded objective functions, evaluation budgets, and
//!   run reports shared by every optimizer.
//! * [`nelder_mead`] — the simplex type and the single-pass "flip"
//!   (reflect / expand / contract / shrink) used both standalone and as the
//!   local move of the hybrid.
//! * [`cuckoo`] — point-based cuckoo search with Mantegna Lévy steps.
//! * [`hybrid`] — the simplex colony: flips as local moves, rank-based
//!   migration between simplexes, and periodic abandonment.
//! * [`baselines`] — simulated annealing and a small real-coded GA.
//! * [`benchmarks`] — ten classic test functions with certified optima.
//! * [`solar`] — AM1.5G spectrum handling, radiative recombination
//!   currents, and stack efficiency models exposed as objectives.

pub mod baselines;
pub mod benchmarks;
pub mod cuckoo;
pub mod hybrid;
pub mod nelder_mead;
pub mod objective;
pub mod solar;

pub use objective::{
    clamp_to_bounds, CountedObjective, Error, EvaluationBudget, ObjectiveSpec, RunReport, StopRule,
};
