//! Stack-level efficiency model: per-cell operating points, split-spectrum
//! and multi-junction stack efficiencies, informed starting gap vectors, and
//! the wrapper that exposes a stack as a minimization objective.
//!
//! A gap vector `g_1 ≤ … ≤ g_N` partitions the spectrum into bands
//! `[g_i, g_{i+1})`, the last band extending to the top of the table. Cell
//! `i` has absorption edge `g_i`, photocurrent equal to the charge-weighted
//! photon flux of its band, and the radiative dark current of its own edge
//! (emission is not band-limited — the cell radiates below the next gap as
//! well). Split-spectrum stacks operate every cell at its private maximum
//! power point; multi-junction stacks drive one common current through all
//! cells and let each junction's voltage respond.

use std::sync::Arc;

use crate::objective::ObjectiveSpec;

use super::radiative::{
    eval_series, series_coefficients, RadiativeModel, SERIES_TERMS,
};
use super::spectrum::{flux_integral, SpectrumTable};
use super::SolarError;

/// Electrical arrangement of the cells in a stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Independent cells, each fed one spectral band by an external optic.
    SplitSpectrum,
    /// Series-connected junctions sharing one current.
    MultiJunction,
}

impl Topology {
    /// Short lowercase tag used in objective names and reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Topology::SplitSpectrum => "ss",
            Topology::MultiJunction => "mj",
        }
    }
}

/// Full description of an N-cell stack design problem.
#[derive(Debug, Clone)]
pub struct StackSpec {
    /// Number of cells (= number of band gaps to choose), at least 1.
    pub n_cells: usize,
    /// Electrical arrangement.
    pub topology: Topology,
    /// Open interval of admissible gap energies in eV.
    pub gap_bounds: (f64, f64),
    /// Radiative-recombination model shared by every cell.
    pub model: RadiativeModel,
    /// Incident spectrum (shared, immutable).
    pub spectrum: Arc<SpectrumTable>,
}

impl StackSpec {
    /// Builds a stack with the default gap window (0, 4) eV and the default
    /// room-temperature radiative model.
    pub fn new(
        n_cells: usize,
        topology: Topology,
        spectrum: Arc<SpectrumTable>,
    ) -> Result<Self, SolarError> {
        let spec = Self {
            n_cells,
            topology,
            gap_bounds: (0.0, 4.0),
            model: RadiativeModel::default(),
            spectrum,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<(), SolarError> {
        if self.n_cells == 0 {
            return Err(SolarError::Domain("a stack needs at least one cell".into()));
        }
        let (lo, hi) = self.gap_bounds;
        if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
            return Err(SolarError::Domain(format!(
                "gap bounds must satisfy 0 <= lo < hi < inf, got ({lo}, {hi})"
            )));
        }
        self.model.validate()
    }

    /// Sorts a gap vector ascending after checking every entry lies strictly
    /// inside the gap window.
    fn sorted_gaps(&self, gaps: &[f64]) -> Result<Vec<f64>, SolarError> {
        if gaps.is_empty() {
            return Err(SolarError::Domain("gap vector must be non-empty".into()));
        }
        let (lo, hi) = self.gap_bounds;
        for &g in gaps {
            if !(g > lo && g < hi) {
                return Err(SolarError::Domain(format!(
                    "gap {g} outside the open window ({lo}, {hi})"
                )));
            }
        }
        let mut sorted = gaps.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(sorted)
    }
}

/// Spectral bands induced by a sorted gap vector; the last band runs to the
/// end of the tabulated spectrum.
fn bands(sorted_gaps: &[f64]) -> Vec<(f64, f64)> {
    let n = sorted_gaps.len();
    (0..n)
        .map(|i| {
            let hi = if i + 1 < n { sorted_gaps[i + 1] } else { f64::INFINITY };
            (sorted_gaps[i], hi)
        })
        .collect()
}

/// Golden-section ratio (√5 − 1)/2.
fn golden_ratio() -> f64 {
    (5.0_f64.sqrt() - 1.0) / 2.0
}

/// Operating state of one cell inside a stack, as reported by
/// [`cell_operating_points`].
#[derive(Debug, Clone, Copy)]
pub struct CellOperatingPoint {
    /// Spectral band `[E_lo, E_hi)` absorbed by the cell, eV. The top cell's
    /// upper edge is `f64::INFINITY`.
    pub gap_interval: (f64, f64),
    /// Junction voltage, V.
    pub voltage: f64,
    /// Photogenerated current density, A·m⁻².
    pub j_gen: f64,
    /// Radiative dark current density at `voltage`, A·m⁻².
    pub j_rad: f64,
    /// Net extractable current density `j_gen − j_rad`, A·m⁻².
    pub j_net: f64,
    /// Fraction of the incident power this cell delivers.
    pub efficiency_share: f64,
}

/// Maximum electrical power of a single cell with absorption edge `e_lo`
/// absorbing the band `[e_lo, e_hi)`. Returns `(voltage, power)` with power
/// in W·m⁻²; an empty band (or one with no photocurrent) yields `(0, 0)`.
///
/// The cell power `V·(J_g − J_r(V))` is maximized over
/// `V ∈ [0, (e_lo − 2kT)/γ]` by golden-section search; `J_r` is strictly
/// increasing in `V`, so the product is unimodal there. 80 iterations shrink
/// the bracket far below 1e-6 V.
pub fn optimal_cell_power(
    stack: &StackSpec,
    e_lo: f64,
    e_hi: f64,
) -> Result<(f64, f64), SolarError> {
    let j_gen = flux_integral(&stack.spectrum, e_lo, e_hi)?;
    if j_gen <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let kt = stack.model.kt();
    let gamma = stack.model.ideality;
    let v_cap = ((e_lo - 2.0 * kt) / gamma).max(0.0);
    if v_cap == 0.0 {
        return Ok((0.0, 0.0));
    }

    let coeffs = series_coefficients(&stack.model, e_lo);
    let power = |v: f64| {
        let u = ((gamma * v - e_lo) / kt).exp();
        v * (j_gen - eval_series(&coeffs, u))
    };

    let gr = golden_ratio();
    let (mut lo, mut hi) = (0.0_f64, v_cap);
    for _ in 0..80 {
        let c = hi - gr * (hi - lo);
        let d = lo + gr * (hi - lo);
        if power(c) < power(d) {
            lo = c;
        } else {
            hi = d;
        }
    }
    let v_mp = 0.5 * (lo + hi);
    let p_mp = power(v_mp);
    if p_mp <= 0.0 {
        return Ok((0.0, 0.0));
    }
    Ok((v_mp, p_mp))
}

/// Split-spectrum stack efficiency: each cell at its own maximum power point,
/// total power over incident power. Gaps are sorted defensively.
pub fn ss_efficiency(stack: &StackSpec, gaps: &[f64]) -> Result<f64, SolarError> {
    let sorted = stack.sorted_gaps(gaps)?;
    let mut total = 0.0;
    for (lo, hi) in bands(&sorted) {
        let (_, p) = optimal_cell_power(stack, lo, hi)?;
        total += p;
    }
    Ok(total / stack.spectrum.p_in)
}

/// Inverts the dark-current series: the junction voltage at which
/// `J_r(V) = target`, bisected in effective-voltage space over
/// `[0, e_lo − 2kT]` to 1e-9 relative tolerance. Targets at or below the
/// zero-bias dark current give 0; targets beyond the cap saturate at it.
fn voltage_for_dark_current(
    coeffs: &[f64; SERIES_TERMS],
    e_lo: f64,
    kt: f64,
    gamma: f64,
    target: f64,
) -> f64 {
    if target <= 0.0 {
        return 0.0;
    }
    let cap = (e_lo - 2.0 * kt).max(0.0);
    if cap == 0.0 {
        return 0.0;
    }
    let current_at = |v_eff: f64| eval_series(coeffs, ((v_eff - e_lo) / kt).exp());
    if target <= current_at(0.0) {
        return 0.0;
    }
    if target >= current_at(cap) {
        return cap / gamma;
    }
    let (mut lo, mut hi) = (0.0_f64, cap);
    for _ in 0..200 {
        if hi - lo <= 1e-9 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if current_at(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) / gamma
}

/// Everything the multi-junction solve produces: the common current, the
/// per-cell voltages and photocurrents at that current, and the efficiency.
struct MjOperatingState {
    j_star: f64,
    voltages: Vec<f64>,
    j_gen: Vec<f64>,
    efficiency: f64,
}

/// Solves the series-constrained stack: maximizes `J·Σᵢ Vᵢ(J)` over the
/// common current `J ∈ [0, minᵢ J_gᵢ]` by golden-section search (90
/// iterations), where `Vᵢ(J)` inverts `J_rᵢ(V) = J_gᵢ − J`.
fn mj_solve(stack: &StackSpec, sorted_gaps: &[f64]) -> Result<MjOperatingState, SolarError> {
    let kt = stack.model.kt();
    let gamma = stack.model.ideality;

    let band_list = bands(sorted_gaps);
    let mut j_gen = Vec::with_capacity(band_list.len());
    for &(lo, hi) in &band_list {
        j_gen.push(flux_integral(&stack.spectrum, lo, hi)?);
    }
    let coeffs: Vec<[f64; SERIES_TERMS]> = sorted_gaps
        .iter()
        .map(|&g| series_coefficients(&stack.model, g))
        .collect();

    let voltages_at = |j: f64| -> Vec<f64> {
        sorted_gaps
            .iter()
            .enumerate()
            .map(|(i, &g)| voltage_for_dark_current(&coeffs[i], g, kt, gamma, j_gen[i] - j))
            .collect()
    };
    let stack_power = |j: f64| -> f64 { j * voltages_at(j).iter().sum::<f64>() };

    let j_max = j_gen.iter().copied().fold(f64::INFINITY, f64::min);
    if j_max <= 0.0 {
        // A band with no photocurrent forces the series current to zero.
        return Ok(MjOperatingState {
            j_star: 0.0,
            voltages: voltages_at(0.0),
            j_gen,
            efficiency: 0.0,
        });
    }

    // Golden-section maximization over the current, reusing the surviving
    // probe each iteration.
    let gr = golden_ratio();
    let (mut lo, mut hi) = (0.0_f64, j_max);
    let mut c = hi - gr * (hi - lo);
    let mut d = lo + gr * (hi - lo);
    let mut fc = stack_power(c);
    let mut fd = stack_power(d);
    for _ in 0..90 {
        if fc < fd {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = stack_power(d);
        } else {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = stack_power(c);
        }
    }
    let j_star = 0.5 * (lo + hi);
    let voltages = voltages_at(j_star);
    let efficiency = j_star * voltages.iter().sum::<f64>() / stack.spectrum.p_in;
    Ok(MjOperatingState { j_star, voltages, j_gen, efficiency })
}

/// Multi-junction stack efficiency under the series current constraint.
/// Gaps are sorted defensively; any band without photocurrent yields 0.
pub fn mj_efficiency(stack: &StackSpec, gaps: &[f64]) -> Result<f64, SolarError> {
    let sorted = stack.sorted_gaps(gaps)?;
    Ok(mj_solve(stack, &sorted)?.efficiency)
}

/// Per-cell operating states for a gap vector under the stack's topology:
/// split-spectrum cells at their private maximum power points,
/// multi-junction cells at the common optimal current.
pub fn cell_operating_points(
    stack: &StackSpec,
    gaps: &[f64],
) -> Result<Vec<CellOperatingPoint>, SolarError> {
    let sorted = stack.sorted_gaps(gaps)?;
    let kt = stack.model.kt();
    let gamma = stack.model.ideality;
    let p_in = stack.spectrum.p_in;
    let band_list = bands(&sorted);

    match stack.topology {
        Topology::SplitSpectrum => {
            let mut points = Vec::with_capacity(band_list.len());
            for &(lo, hi) in &band_list {
                let (voltage, power) = optimal_cell_power(stack, lo, hi)?;
                let j_gen = flux_integral(&stack.spectrum, lo, hi)?;
                let coeffs = series_coefficients(&stack.model, lo);
                let j_rad = eval_series(&coeffs, ((gamma * voltage - lo) / kt).exp());
                points.push(CellOperatingPoint {
                    gap_interval: (lo, hi),
                    voltage,
                    j_gen,
                    j_rad,
                    j_net: j_gen - j_rad,
                    efficiency_share: power / p_in,
                });
            }
            Ok(points)
        }
        Topology::MultiJunction => {
            let state = mj_solve(stack, &sorted)?;
            Ok(band_list
                .iter()
                .enumerate()
                .map(|(i, &(lo, hi))| {
                    let voltage = state.voltages[i];
                    let coeffs = series_coefficients(&stack.model, lo);
                    let j_rad = eval_series(&coeffs, ((gamma * voltage - lo) / kt).exp());
                    CellOperatingPoint {
                        gap_interval: (lo, hi),
                        voltage,
                        j_gen: state.j_gen[i],
                        j_rad,
                        j_net: state.j_gen[i] - j_rad,
                        efficiency_share: state.j_star * voltage / p_in,
                    }
                })
                .collect())
        }
    }
}

/// Two informed N-gap starting vectors for the stack design problem:
///
/// * start A places the gaps at the N-quantiles of the cumulative
///   photon-flux distribution, so every band collects the same
///   photocurrent;
/// * start B spaces the gaps evenly across the interior of [0.5, 3.5] eV,
///   which roughly equalizes the voltage headroom per cell.
pub fn informed_starts(stack: &StackSpec, n_cells: usize) -> (Vec<f64>, Vec<f64>) {
    debug_assert!(n_cells >= 1);
    let grid = &stack.spectrum.energy_grid;
    let flux = &stack.spectrum.photon_flux;

    // Cumulative trapezoid of the photon flux along the energy grid.
    let mut cum = Vec::with_capacity(grid.len());
    cum.push(0.0);
    for i in 1..grid.len() {
        let segment = 0.5 * (flux[i] + flux[i - 1]) * (grid[i] - grid[i - 1]);
        cum.push(cum[i - 1] + segment);
    }
    let total = *cum.last().unwrap();

    let quantile_gap = |p: f64| -> f64 {
        let t = p * total;
        let k = cum.partition_point(|&c| c < t);
        if k == 0 {
            return grid[0];
        }
        if k >= cum.len() {
            return grid[grid.len() - 1];
        }
        let frac = (t - cum[k - 1]) / (cum[k] - cum[k - 1]);
        grid[k - 1] + frac * (grid[k] - grid[k - 1])
    };

    let start_a = (0..n_cells)
        .map(|i| quantile_gap(i as f64 / n_cells as f64))
        .collect();
    let start_b = (1..=n_cells)
        .map(|i| 0.5 + 3.0 * i as f64 / (n_cells + 1) as f64)
        .collect();
    (start_a, start_b)
}

/// Wraps the stack as a minimization objective `f(gaps) = 1 − η(gaps)` with
/// per-coordinate bounds inset 1e-3 eV from the open gap window (avoiding the
/// zero-gap singularity). Gap vectors are clamped and sorted defensively, so
/// the objective is total on its box and permutation-invariant.
pub fn objective_for(stack: &StackSpec) -> ObjectiveSpec {
    const INSET: f64 = 1e-3;
    let n = stack.n_cells;
    let lower = stack.gap_bounds.0 + INSET;
    let upper = stack.gap_bounds.1 - INSET;
    let name = format!("{}_n{}", stack.topology.tag(), n);
    let inner = stack.clone();
    let evaluator = move |x: &[f64]| -> f64 {
        let gaps: Vec<f64> = x.iter().map(|&g| g.clamp(lower, upper)).collect();
        let eta = match inner.topology {
            Topology::SplitSpectrum => ss_efficiency(&inner, &gaps),
            Topology::MultiJunction => mj_efficiency(&inner, &gaps),
        }
        .expect("clamped gaps lie inside the stack's gap window");
        1.0 - eta
    };
    ObjectiveSpec::new(name, n, vec![lower; n], vec![upper; n], evaluator)
        .expect("stack bounds form a valid box")
}
