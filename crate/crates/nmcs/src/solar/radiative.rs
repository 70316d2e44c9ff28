//! Radiative dark current of an ideal junction.
//!
//! In the detailed-balance limit the only recombination channel is radiative
//! emission into the hemisphere above the cell, described by a generalized
//! Planck law. With photon energies `E` in eV the emitted current density of
//! a cell with absorption edge `e_lo` at junction voltage `V` is
//!
//! ```text
//! J_r(V) = prefactor · ∫_{e_lo}^{E_MAX}  E² / (exp((E − γ·V)/kT) − 1)  dE
//! ```
//!
//! where `γ` is a constant ideality factor and the upper cutoff `E_MAX`
//! stands in for ∞ (the integrand is exponentially negligible there). Two
//! evaluation routes are provided: [`radiative_current`] integrates the
//! Bose–Einstein integrand by adaptive Simpson quadrature and serves as the
//! reference, while [`radiative_current_series`] sums the closed-form
//! expansion of the integral — exact term-by-term integration of the
//! geometric series for `1/(e^x − 1)` — and is orders of magnitude faster.
//! The two agree to better than 1e-9 relative wherever the series is valid
//! (`γ·V ≤ e_lo − 2kT`, giving the expansion ratio `e^{-2}`).

use super::{SolarError, BOLTZMANN, ELEMENTARY_CHARGE, PLANCK, SPEED_OF_LIGHT};

/// Upper integration cutoff in eV; beyond this the thermal emission
/// integrand is < 1e-50 of its edge value for any gap in the model's range.
pub const E_MAX: f64 = 10.0;

/// Number of terms in the closed-form series expansion. Each successive term
/// is suppressed by at least `e^{-2}` inside the validity region, so 20 terms
/// bound the truncation error near 1e-17 relative.
pub(crate) const SERIES_TERMS: usize = 20;

/// Emission prefactor `2π·q⁴/(h³·c²)` in A·m⁻²·eV⁻³: hemispherical one-face
/// emission with unity étendue, with the charge factors arranged so that
/// energies in eV yield a current density in A·m⁻².
pub const RADIATIVE_PREFACTOR: f64 = 2.0
    * std::f64::consts::PI
    * (ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE)
    / ((PLANCK * PLANCK * PLANCK) * (SPEED_OF_LIGHT * SPEED_OF_LIGHT));

/// Radiative-recombination model of a single junction.
#[derive(Debug, Clone, Copy)]
pub struct RadiativeModel {
    /// Cell temperature in kelvin.
    pub temperature: f64,
    /// Emission prefactor, A·m⁻²·eV⁻³ (see [`RADIATIVE_PREFACTOR`]).
    pub prefactor: f64,
    /// Constant ideality factor γ multiplying the voltage, in (0, 1].
    pub ideality: f64,
}

impl Default for RadiativeModel {
    fn default() -> Self {
        Self { temperature: 300.0, prefactor: RADIATIVE_PREFACTOR, ideality: 1.0 }
    }
}

impl RadiativeModel {
    /// Thermal energy `kT` in eV.
    pub fn kt(&self) -> f64 {
        BOLTZMANN * self.temperature / ELEMENTARY_CHARGE
    }

    /// Checks the physical parameter ranges.
    pub fn validate(&self) -> Result<(), SolarError> {
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(SolarError::Domain(format!(
                "temperature must be positive and finite, got {}",
                self.temperature
            )));
        }
        if !(self.prefactor > 0.0 && self.prefactor.is_finite()) {
            return Err(SolarError::Domain(format!(
                "prefactor must be positive and finite, got {}",
                self.prefactor
            )));
        }
        if !(self.ideality > 0.0 && self.ideality <= 1.0) {
            return Err(SolarError::Domain(format!(
                "ideality must lie in (0, 1], got {}",
                self.ideality
            )));
        }
        Ok(())
    }
}

/// Coefficients of the series form `J_r = Σ_m d_m·u^m` with
/// `u = exp((γV − e_lo)/kT)`. Integrating `E²·e^{-m(E−γV)/kT}` from `e_lo`
/// to [`E_MAX`] term by term gives, with `a_m = kT/m`,
/// `d_m = prefactor · a_m · [(e_lo² + 2·e_lo·a_m + 2a_m²)
///        − e^{-m(E_MAX−e_lo)/kT}·(E_MAX² + 2·E_MAX·a_m + 2a_m²)]`.
/// All coefficients are positive, so the series is strictly increasing in u.
pub(crate) fn series_coefficients(model: &RadiativeModel, e_lo: f64) -> [f64; SERIES_TERMS] {
    let kt = model.kt();
    let mut d = [0.0; SERIES_TERMS];
    for (i, slot) in d.iter_mut().enumerate() {
        let m = (i + 1) as f64;
        let am = kt / m;
        let head = am * (e_lo * e_lo + 2.0 * e_lo * am + 2.0 * am * am);
        let tail = am
            * (-m * (E_MAX - e_lo) / kt).exp()
            * (E_MAX * E_MAX + 2.0 * E_MAX * am + 2.0 * am * am);
        *slot = model.prefactor * (head - tail);
    }
    d
}

/// Horner evaluation of `Σ_m d_m·u^m`.
pub(crate) fn eval_series(d: &[f64; SERIES_TERMS], u: f64) -> f64 {
    let mut f = 0.0;
    for m in (1..=SERIES_TERMS).rev() {
        f = f * u + d[m - 1];
    }
    f * u
}

/// Fast closed-form radiative current, valid for `0 ≤ γ·V ≤ e_lo − 2kT`.
///
/// Outside that window the geometric expansion converges too slowly for the
/// fixed term count; use [`radiative_current`] there.
pub fn radiative_current_series(model: &RadiativeModel, e_lo: f64, voltage: f64) -> f64 {
    let kt = model.kt();
    let v_eff = model.ideality * voltage;
    debug_assert!(voltage >= 0.0 && v_eff <= e_lo - 2.0 * kt + 1e-12);
    let d = series_coefficients(model, e_lo);
    eval_series(&d, ((v_eff - e_lo) / kt).exp())
}

/// Bose–Einstein integrand of the emission integral.
fn planck_integrand(energy: f64, v_eff: f64, kt: f64) -> f64 {
    energy * energy / (((energy - v_eff) / kt).exp() - 1.0)
}

/// One Simpson estimate over `[a, b]` given the three standard samples.
fn simpson_estimate(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Recursive adaptive Simpson with the usual Richardson acceptance test.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_estimate(a, m, fa, flm, fm);
    let right = simpson_estimate(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Radiative current by adaptive Simpson quadrature to ≈1e-9 relative
/// tolerance. This is the reference route; the hot paths use
/// [`radiative_current_series`].
///
/// Requires `0 ≤ γ·voltage < e_lo` (the integrand diverges as the effective
/// voltage approaches the absorption edge).
pub fn radiative_current(
    model: &RadiativeModel,
    e_lo: f64,
    voltage: f64,
) -> Result<f64, SolarError> {
    model.validate()?;
    if !(e_lo > 0.0) {
        return Err(SolarError::Domain(format!(
            "absorption edge must be positive, got {e_lo}"
        )));
    }
    if !(voltage >= 0.0) {
        return Err(SolarError::Domain(format!(
            "voltage must be non-negative, got {voltage}"
        )));
    }
    let v_eff = model.ideality * voltage;
    if v_eff >= e_lo {
        return Err(SolarError::Domain(format!(
            "effective voltage {v_eff} must stay below the absorption edge {e_lo}"
        )));
    }
    if e_lo >= E_MAX {
        return Ok(0.0);
    }

    let kt = model.kt();
    let f = |e: f64| planck_integrand(e, v_eff, kt);

    // Scale the absolute tolerance from a coarse composite-Simpson estimate;
    // the integrand decays like e^{-(E−γV)/kT} so nearly all mass sits within
    // a few dozen kT of the edge, which 256 panels resolve well enough to fix
    // the magnitude.
    let panels = 256;
    let h = (E_MAX - e_lo) / panels as f64;
    let mut coarse = 0.0;
    for i in 0..panels {
        let a = e_lo + i as f64 * h;
        let b = a + h;
        coarse += simpson_estimate(a, b, f(a), f(0.5 * (a + b)), f(b));
    }
    let tol = 1e-9 * coarse.abs().max(f64::MIN_POSITIVE);

    let (a, b) = (e_lo, E_MAX);
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let whole = simpson_estimate(a, b, fa, fm, fb);
    let integral = adaptive_simpson(&f, a, b, fa, fm, fb, whole, tol, 48);
    Ok(model.prefactor * integral)
}
