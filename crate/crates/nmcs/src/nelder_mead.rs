//! Nelder-Mead simplexes and the single-iteration "flip" move.
//!
//! A flip is one full Nelder-Mead iteration — reflection, then possibly
//! expansion, an outside/inside contraction, or a shrink — packaged as a
//! pure step so it can serve both the standalone [`nms_minimize`] loop and
//! the simplex-colony hybrid, where each colony member advances one flip at
//! a time.

use crate::objective::{spread_statistic, CountedObjective, Error, EvaluationBudget, ObjectiveSpec, RunReport, StopRule};

/// Absolute fallback offset for zero anchor coordinates in
/// [`make_initial_simplex`] (Pfeffer's convention, as used by classic
/// simplex initializers).
pub const ZERO_COORD_FALLBACK: f64 = 0.00025;

/// Default relative edge scale when a minimizer is started from a bare
/// anchor point rather than a prebuilt simplex.
pub const DEFAULT_ANCHOR_SCALE: f64 = 0.05;

/// The four move coefficients of the Nelder-Mead iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipCoefficients {
    /// Reflection coefficient (> 0).
    pub reflect: f64,
    /// Expansion coefficient (> 1 and > `reflect`).
    pub expand: f64,
    /// Contraction coefficient in (0, 1).
    pub contract: f64,
    /// Shrink coefficient in (0, 1).
    pub shrink: f64,
}

impl Default for FlipCoefficients {
    fn default() -> Self {
        Self {
            reflect: 1.0,
            expand: 2.0,
            contract: 0.5,
            shrink: 0.5,
        }
    }
}

impl FlipCoefficients {
    /// Checks the standard coefficient constraints:
    /// `reflect > 0`, `expand > 1`, `expand > reflect`, `0 < contract < 1`,
    /// `0 < shrink < 1`.
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.reflect > 0.0) {
            return Err(Error::InvalidParams(format!(
                "reflect must be > 0 (got {})",
                self.reflect
            )));
        }
        if !(self.expand > 1.0) {
            return Err(Error::InvalidParams(format!(
                "expand must be > 1 (got {})",
                self.expand
            )));
        }
        if !(self.expand > self.reflect) {
            return Err(Error::InvalidParams(format!(
                "expand ({}) must exceed reflect ({})",
                self.expand, self.reflect
            )));
        }
        if !(self.contract > 0.0 && self.contract < 1.0) {
            return Err(Error::InvalidParams(format!(
                "contract must lie in (0, 1) (got {})",
                self.contract
            )));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::InvalidParams(format!(
                "shrink must lie in (0, 1) (got {})",
                self.shrink
            )));
        }
        Ok(())
    }
}

/// Configuration for flips and the NMS loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NmsConfig {
    /// Move coefficients (reflect/expand/contract/shrink).
    pub coefficients: FlipCoefficients,
    /// When `true` (the default), the reflection centroid is taken over the
    /// `d` best vertices — the textbook convention. `false` averages all
    /// `d+1` vertices instead; that variant is provided for comparison but
    /// degrades convergence badly: replacing the worst vertex `x_w` with
    /// `y = Σ λᵢxᵢ` scales the simplex volume by `|λ_w|`, and with the
    /// all-vertex centroid a reflection has `|λ_w| = (d−1)/(d+1) < 1` while
    /// an outside contraction at coefficient 1/d has `λ_w = 0` exactly, so
    /// in low dimension the simplex flattens onto a hyperplane and the
    /// search stalls there.
    pub centroid_excludes_worst: bool,
}

impl Default for NmsConfig {
    fn default() -> Self {
        Self {
            coefficients: FlipCoefficients::default(),
            centroid_excludes_worst: true,
        }
    }
}

/// A simplex of `d+1` evaluated vertices in `d` dimensions, kept sorted by
/// objective value (ascending, ties broken stably by position).
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub(crate) vertices: Vec<Vec<f64>>,
    pub(crate) values: Vec<f64>,
}

impl Simplex {
    /// Builds a simplex by evaluating `points` (which must number `d+1`)
    /// through the counted objective, then sorting.
    pub fn from_points(points: Vec<Vec<f64>>, f: &mut CountedObjective) -> Result<Self, Error> {
        let d = f.spec().d;
        if points.len() != d + 1 {
            return Err(Error::InvalidParams(format!(
                "simplex needs {} vertices for dimension {d} (got {})",
                d + 1,
                points.len()
            )));
        }
        let mut values = Vec::with_capacity(points.len());
        for p in &points {
            values.push(f.evaluate(p)?);
        }
        Self::from_evaluated(points, values)
    }

    /// Assembles a simplex from vertices with already-known values.
    ///
    /// The caller is responsible for the values actually corresponding to
    /// the vertices under its objective; this is used by migration (values
    /// travel with vertices, no re-evaluation) and by tests.
    pub fn from_evaluated(vertices: Vec<Vec<f64>>, values: Vec<f64>) -> Result<Self, Error> {
        if vertices.is_empty() || vertices.len() != values.len() {
            return Err(Error::InvalidParams(
                "vertex and value lists must be non-empty and equal-length".into(),
            ));
        }
        let d = vertices.len() - 1;
        for v in &vertices {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.len(),
                });
            }
        }
        let mut s = Self { vertices, values };
        s.sort();
        Ok(s)
    }

    /// Problem dimension `d` (one less than the vertex count).
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Number of vertices, `d + 1`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// True only for an impossible empty simplex; present for API hygiene.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex at sorted rank `i` (0 = best).
    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.vertices[i]
    }

    /// Objective value at sorted rank `i`.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// All vertices in sorted order.
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// All values in sorted (ascending) order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Best (lowest) objective value.
    pub fn best_value(&self) -> f64 {
        self.values[0]
    }

    /// Worst (highest) objective value.
    pub fn worst_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Vertex achieving the best value.
    pub fn best_vertex(&self) -> &[f64] {
        &self.vertices[0]
    }

    /// Mean of all `d+1` vertices.
    pub fn centroid(&self) -> Vec<f64> {
        let d = self.dimension();
        let mut c = vec![0.0; d];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        let n = self.vertices.len() as f64;
        c.iter_mut().for_each(|ci| *ci /= n);
        c
    }

    fn centroid_excluding_worst(&self) -> Vec<f64> {
        let d = self.dimension();
        let mut c = vec![0.0; d];
        for v in &self.vertices[..self.vertices.len() - 1] {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        c.iter_mut().for_each(|ci| *ci /= d as f64);
        c
    }

    /// Restores ascending value order (stable, so equal values keep their
    /// current relative order — deterministic tie-breaking).
    pub(crate) fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        self.vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        self.values = order.iter().map(|&i| self.values[i]).collect();
    }
}

/// `a + t * (b - a)`, the affine combination all simplex moves reduce to.
fn affine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect()
}

/// Executes exactly one Nelder-Mead iteration on `s` and returns the
/// updated simplex together with the evaluations spent (1, 2, or `2 + d`).
///
/// The move sequence, with `f_1 <= ... <= f_{d+1}` the sorted values and
/// `x_c` the centroid:
///
/// 1. Reflect: `x_r = x_c + reflect * (x_c - x_worst)`.
/// 2. `f_r < f_1`: try expansion `x_e = x_c + expand * (x_r - x_c)`; keep
///    `x_e` iff `f_e < f_r`, else keep `x_r`.
/// 3. `f_1 <= f_r < f_d`: accept the reflection.
/// 4. `f_d <= f_r < f_{d+1}`: outside contraction
///    `x_oc = x_c + contract * (x_r - x_c)`; accept iff `f_oc <= f_r`, else
///    shrink.
/// 5. `f_r >= f_{d+1}`: inside contraction
///    `x_ic = x_c - contract * (x_r - x_c)`; accept iff `f_ic <= f_{d+1}`,
///    else shrink.
///
/// A shrink pulls every non-best vertex toward the best:
/// `x_i <- x_1 + shrink * (x_i - x_1)`. Every candidate is clamped to the
/// objective bounds before evaluation. The input simplex is never mutated —
/// if the budget runs out mid-flip the error propagates and the caller's
/// simplex is simply unchanged (the spent evaluations stay spent).
pub fn flip(
    s: &Simplex,
    f: &mut CountedObjective,
    config: &NmsConfig,
) -> Result<(Simplex, usize), Error> {
    config.coefficients.validate()?;
    let c = &config.coefficients;
    let n = s.len();
    let x_c = if config.centroid_excludes_worst {
        s.centroid_excluding_worst()
    } else {
        s.centroid()
    };
    let f_best = s.value(0);
    let f_second_worst = s.value(n - 2);
    let f_worst = s.value(n - 1);

    let mut evals = 0usize;
    // Reflection runs unconditionally.
    let x_r = f.clamp(&affine(&x_c, s.vertex(n - 1), -c.reflect))?;
    let f_r = f.evaluate(&x_r)?;
    evals += 1;

    // `None` means no single-vertex replacement was accepted: shrink.
    let accepted: Option<(Vec<f64>, f64)> = if f_r < f_best {
        let x_e = f.clamp(&affine(&x_c, &x_r, c.expand))?;
        let f_e = f.evaluate(&x_e)?;
        evals += 1;
        if f_e < f_r {
            Some((x_e, f_e))
        } else {
            Some((x_r, f_r))
        }
    } else if f_r < f_second_worst {
        Some((x_r, f_r))
    } else if f_r < f_worst {
        let x_oc = f.clamp(&affine(&x_c, &x_r, c.contract))?;
        let f_oc = f.evaluate(&x_oc)?;
        evals += 1;
        (f_oc <= f_r).then_some((x_oc, f_oc))
    } else {
        let x_ic = f.clamp(&affine(&x_c, &x_r, -c.contract))?;
        let f_ic = f.evaluate(&x_ic)?;
        evals += 1;
        (f_ic <= f_worst).then_some((x_ic, f_ic))
    };

    let mut out = s.clone();
    match accepted {
        Some((vertex, value)) => {
            out.vertices[n - 1] = vertex;
            out.values[n - 1] = value;
        }
        None => {
            for i in 1..n {
                let moved = f.clamp(&affine(s.vertex(0), s.vertex(i), c.shrink))?;
                let value = f.evaluate(&moved)?;
                evals += 1;
                out.vertices[i] = moved;
                out.values[i] = value;
            }
        }
    }
    out.sort();
    Ok((out, evals))
}

/// Builds and evaluates the axis-aligned initial simplex around `anchor`.
///
/// Vertex 0 is the anchor; vertex `i` offsets coordinate `i-1` to
/// `a_i + scale * a_i`, falling back to `scale * 0.00025` when `a_i == 0`
/// (a relative step away from zero is no step at all). Vertices are clamped
/// to the objective bounds; if clamping would collapse the offset vertex
/// back onto the anchor (anchor at a bound), the step is retried inward so
/// the simplex stays non-degenerate.
pub fn make_initial_simplex(
    anchor: &[f64],
    scale: f64,
    f: &mut CountedObjective,
) -> Result<Simplex, Error> {
    if !(scale > 0.0) {
        return Err(Error::InvalidParams(format!(
            "initial simplex scale must be > 0 (got {scale})"
        )));
    }
    let d = f.spec().d;
    let base = f.clamp(anchor)?;
    let mut points = Vec::with_capacity(d + 1);
    points.push(base.clone());
    for i in 0..d {
        let offset = if base[i] == 0.0 {
            scale * ZERO_COORD_FALLBACK
        } else {
            base[i] + scale * base[i]
        };
        let mut v = base.clone();
        v[i] = offset;
        let mut clamped = f.clamp(&v)?;
        if clamped[i] == base[i] {
            // The forward step hit a bound; step the other way instead.
            v[i] = base[i] - scale * base[i];
            clamped = f.clamp(&v)?;
        }
        points.push(clamped);
    }
    Simplex::from_points(points, f)
}

/// Starting condition for [`nms_minimize`]: either a bare anchor point (an
/// initial simplex is built around it) or a prebuilt simplex.
#[derive(Debug, Clone)]
pub enum NmsStart {
    /// Build the initial simplex around `point` with relative edge `scale`.
    Anchor {
        /// Anchor vertex.
        point: Vec<f64>,
        /// Relative edge scale for [`make_initial_simplex`].
        scale: f64,
    },
    /// Start from an existing evaluated simplex (its construction cost is
    /// assumed to be already accounted for).
    Simplex(Simplex),
}

impl NmsStart {
    /// Anchor start with the conventional 5% edge scale.
    pub fn anchor(point: Vec<f64>) -> Self {
        Self::Anchor {
            point,
            scale: DEFAULT_ANCHOR_SCALE,
        }
    }
}

/// Core NMS loop against an externally owned counted objective, so several
/// starts can share one budget. Returns whether the stop rule (rather than
/// budget exhaustion) ended the run.
///
/// The spread rule is evaluated on the simplex's `d+1` vertex values after
/// initialization and after every flip; budget exhaustion anywhere is
/// normal termination.
pub fn nms_minimize_counted(
    f: &mut CountedObjective,
    start: NmsStart,
    stop: StopRule,
    config: &NmsConfig,
) -> Result<bool, Error> {
    config.coefficients.validate()?;
    let mut s = match start {
        NmsStart::Anchor { point, scale } => match make_initial_simplex(&point, scale, f) {
            Ok(s) => s,
            Err(Error::BudgetExhausted { .. }) => return Ok(false),
            Err(e) => return Err(e),
        },
        NmsStart::Simplex(s) => s,
    };
    loop {
        if let StopRule::Spread { epsilon } = stop {
            if spread_statistic(s.values()) < epsilon {
                return Ok(true);
            }
        }
        match flip(&s, f, config) {
            Ok((next, _)) => s = next,
            Err(Error::BudgetExhausted { .. }) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
}

/// Standalone Nelder-Mead minimization run.
///
/// NMS is deterministic, so the report's `seed` field is 0.
pub fn nms_minimize(
    spec: &ObjectiveSpec,
    start: NmsStart,
    budget: EvaluationBudget,
    stop: StopRule,
    config: &NmsConfig,
) -> Result<RunReport, Error> {
    let mut f = CountedObjective::new(spec, budget);
    let fired = nms_minimize_counted(&mut f, start, stop, config)?;
    Ok(f.finish(fired, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::EvaluationBudget;

    fn sphere(d: usize) -> ObjectiveSpec {
        ObjectiveSpec::new("sphere", d, vec![-100.0; d], vec![100.0; d], |x| {
            x.iter().map(|v| v * v).sum()
        })
        .unwrap()
    }

    fn assert_vec_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!(
                (g - w).abs() <= tol,
                "expected {want:?}, got {got:?} (coordinate off by {})",
                (g - w).abs()
            );
        }
    }

    #[test]
    fn coefficient_validation_enforces_every_constraint() {
        assert!(FlipCoefficients::default().validate().is_ok());
        let bad = [
            FlipCoefficients {
                reflect: 0.0,
                ..Default::default()
            },
            FlipCoefficients {
                expand: 1.0,
                ..Default::default()
            },
            FlipCoefficients {
                reflect: 3.0, // valid alone, but expand must exceed it
                expand: 2.5,
                ..Default::default()
            },
            FlipCoefficients {
                contract: 1.0,
                ..Default::default()
            },
            FlipCoefficients {
                contract: 0.0,
                ..Default::default()
            },
            FlipCoefficients {
                shrink: 1.0,
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "accepted invalid {c:?}");
        }
    }

    #[test]
    fn centroid_is_mean_of_all_vertices() {
        let s = Simplex::from_evaluated(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![0.0, 1.0, 1.0],
        )
        .unwrap();
        assert_vec_close(&s.centroid(), &[1.0 / 3.0, 1.0 / 3.0], 1e-15);

        let line = Simplex::from_evaluated(vec![vec![2.0], vec![4.0]], vec![0.0, 1.0]).unwrap();
        assert_vec_close(&line.centroid(), &[3.0], 1e-15);

        let degenerate = Simplex::from_evaluated(
            vec![vec![0.5, -1.5], vec![0.5, -1.5], vec![0.5, -1.5]],
            vec![2.0, 2.0, 2.0],
        )
        .unwrap();
        assert_vec_close(&degenerate.centroid(), &[0.5, -1.5], 1e-15);
    }

    /// The all-vertex-centroid variant, used by the hand-arithmetic tests
    /// that pin its geometry.
    fn all_vertex_config() -> NmsConfig {
        NmsConfig {
            centroid_excludes_worst: false,
            ..NmsConfig::default()
        }
    }

    #[test]
    fn flip_accepts_reflection_on_unit_right_triangle() {
        // f = x^2 + y^2 over {(0,0), (1,0), (0,1)}: the two value-1 vertices
        // tie, the stable sort keeps (0,1) last, so it is the worst.
        let spec = sphere(2);
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(100));
        let s = Simplex::from_points(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            &mut f,
        )
        .unwrap();
        let (next, spent) = flip(&s, &mut f, &all_vertex_config()).unwrap();
        assert_eq!(spent, 1);
        // x_c = (1/3, 1/3); x_r = (2/3, -1/3); f_r = 5/9 lands between the
        // best (0) and second-worst (1), so the reflection replaces (0,1).
        assert_vec_close(next.vertex(1), &[2.0 / 3.0, -1.0 / 3.0], 1e-12);
        assert!((next.value(1) - 5.0 / 9.0).abs() < 1e-12);
        assert_vec_close(next.vertex(0), &[0.0, 0.0], 0.0);
        assert_vec_close(next.vertex(2), &[1.0, 0.0], 0.0);
    }

    #[test]
    fn flip_contracts_inside_under_the_default_centroid() {
        // Same triangle under the default (worst-excluding) centroid:
        // x_c = (0.5, 0); x_r = (1, -1) with f_r = 2 >= worst 1, so the
        // flip tries the inside contraction x_ic = x_c - 0.5*(x_r - x_c)
        // = (0.25, 0.5), and f_ic = 0.3125 <= 1 is accepted.
        let spec = sphere(2);
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(100));
        let s = Simplex::from_points(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            &mut f,
        )
        .unwrap();
        let (next, spent) = flip(&s, &mut f, &NmsConfig::default()).unwrap();
        assert_eq!(spent, 2);
        assert_vec_close(next.vertex(1), &[0.25, 0.5], 1e-12);
        assert!((next.value(1) - 0.3125).abs() < 1e-12);
    }

    #[test]
    fn flip_accepts_reflection_on_skewed_triangle() {
        let spec = sphere(2);
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(100));
        let s = Simplex::from_points(
            vec![vec![0.1, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]],
            &mut f,
        )
        .unwrap();
        let (next, spent) = flip(&s, &mut f, &all_vertex_config()).unwrap();
        assert_eq!(spent, 1);
        // x_c = (0.7, 1/3); x_r = x_c + (x_c - (1,1)) = (0.4, -1/3);
        // f_r = 0.16 + 1/9 ~ 0.271 sits between f_1 = 0.01 and f_2 = 1.
        assert_vec_close(next.vertex(1), &[0.4, -1.0 / 3.0], 1e-12);
        assert!((next.value(1) - (0.16 + 1.0 / 9.0)).abs() < 1e-12);
    }

    #[test]
    fn flip_on_constant_function_takes_inside_contraction() {
        let spec =
            ObjectiveSpec::new("const", 2, vec![-10.0; 2], vec![10.0; 2], |_| 5.0).unwrap();
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(100));
        let s = Simplex::from_points(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            &mut f,
        )
        .unwrap();
        let (next, spent) = flip(&s, &mut f, &NmsConfig::default()).unwrap();
        // f_r = 5 >= worst = 5 -> inside contraction; f_ic = 5 <= 5 accepted.
        assert_eq!(spent, 2);
        assert!(next.values().iter().all(|&v| v == 5.0));
        assert_eq!(next.len(), 3);
    }

    #[test]
    fn flip_never_mutates_input_when_budget_dies_mid_move() {
        let spec = sphere(2);
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(3));
        let s = Simplex::from_points(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            &mut f,
        )
        .unwrap();
        let before = s.clone();
        let err = flip(&s, &mut f, &NmsConfig::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }));
        assert_eq!(s, before);
    }

    #[test]
    fn initial_simplex_matches_hand_construction() {
        let spec = sphere(2);
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(10));
        let s = make_initial_simplex(&[1.0, 2.0], 0.1, &mut f).unwrap();
        // f(1,2)=5, f(1.1,2)=5.21, f(1,2.2)=5.84: sorted order is as built.
        assert_vec_close(s.vertex(0), &[1.0, 2.0], 0.0);
        assert_vec_close(s.vertex(1), &[1.1, 2.0], 1e-15);
        assert_vec_close(s.vertex(2), &[1.0, 2.2], 1e-15);
        assert_eq!(f.evals_used(), 3);
    }

    #[test]
    fn initial_simplex_zero_coordinate_fallback() {
        let spec = sphere(1);
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(10));
        let s = make_initial_simplex(&[0.0], 0.1, &mut f).unwrap();
        // 0.1 * 0.00025 = 2.5e-5 replaces the degenerate relative step.
        assert_vec_close(s.vertex(1), &[0.000025], 1e-20);
    }

    #[test]
    fn initial_simplex_negative_anchor() {
        let spec = sphere(1);
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(10));
        let s = make_initial_simplex(&[-2.0], 0.25, &mut f).unwrap();
        // -2 + 0.25 * (-2) = -2.5; farther from the origin, so rank 1.
        assert_vec_close(s.vertex(1), &[-2.5], 1e-15);
    }

    #[test]
    fn initial_simplex_steps_inward_at_a_bound() {
        let spec = ObjectiveSpec::new("s", 1, vec![0.0], vec![10.0], |x| x[0]).unwrap();
        let mut f = CountedObjective::new(&spec, EvaluationBudget::new(10));
        // 10 * 1.2 clamps back to 10, which would duplicate the anchor;
        // the builder must step to 10 - 0.2*10 = 8 instead.
        let s = make_initial_simplex(&[10.0], 0.2, &mut f).unwrap();
        assert_vec_close(s.vertex(0), &[8.0], 1e-15);
        assert_vec_close(s.vertex(1), &[10.0], 1e-15);
    }

    #[test]
    fn minimizer_with_budget_for_init_only_reports_best_vertex() {
        let spec = sphere(2);
        let report = nms_minimize(
            &spec,
            NmsStart::Anchor {
                point: vec![1.0, 2.0],
                scale: 0.1,
            },
            EvaluationBudget::new(3),
            StopRule::BudgetOnly,
            &NmsConfig::default(),
        )
        .unwrap();
        assert_eq!(report.evals_used, 3);
        assert_eq!(report.best_value, 5.0);
        assert_eq!(report.best_point, vec![1.0, 2.0]);
        assert!(!report.stop_rule_fired);
    }

    #[test]
    fn minimizer_converges_on_sphere() {
        let spec = sphere(2);
        let report = nms_minimize(
            &spec,
            NmsStart::anchor(vec![1.0, 1.0]),
            EvaluationBudget::new(300),
            StopRule::BudgetOnly,
            &NmsConfig::default(),
        )
        .unwrap();
        assert!(
            report.best_value < 1e-10,
            "sphere best after 300 evals: {}",
            report.best_value
        );
    }

    #[test]
    fn minimizer_converges_on_rosenbrock() {
        let spec = ObjectiveSpec::new("rosenbrock", 2, vec![-5.0; 2], vec![10.0; 2], |x| {
            100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2)
        })
        .unwrap();
        let report = nms_minimize(
            &spec,
            NmsStart::anchor(vec![-1.2, 1.0]),
            EvaluationBudget::new(500),
            StopRule::BudgetOnly,
            &NmsConfig::default(),
        )
        .unwrap();
        assert!(
            report.best_value < 1e-3,
            "rosenbrock best after 500 evals: {}",
            report.best_value
        );
    }

    #[test]
    fn spread_stop_fires_on_constant_objective() {
        let spec = ObjectiveSpec::new("const", 2, vec![-1.0; 2], vec![1.0; 2], |_| 3.0).unwrap();
        let report = nms_minimize(
            &spec,
            NmsStart::anchor(vec![0.5, 0.5]),
            EvaluationBudget::new(100),
            StopRule::Spread { epsilon: 1e-7 },
            &NmsConfig::default(),
        )
        .unwrap();
        assert!(report.stop_rule_fired);
        assert_eq!(report.evals_used, 3);
        assert_eq!(report.best_value, 3.0);
    }
}
