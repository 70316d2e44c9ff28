//! Detailed-balance efficiency model for stacks of single-junction solar
//! cells, used as the engineering objective for the optimizers in this crate.
//!
//! The model follows the classic radiative-limit treatment: each cell absorbs
//! every photon above its band gap inside the spectral band assigned to it,
//! photocurrent is the charge-weighted photon flux in that band, and the only
//! loss mechanism is radiative recombination described by generalized Planck
//! emission at the cell temperature. Two stack topologies are supported:
//!
//! * **Split spectrum** ([`Topology::SplitSpectrum`]): an external optic
//!   routes each spectral band to its own electrically independent cell, so
//!   every cell operates at its own maximum-power voltage.
//! * **Multi junction** ([`Topology::MultiJunction`]): the cells are wired in
//!   series, so a common current flows through the stack and each cell's
//!   voltage adjusts to carry it.
//!
//! The module is split into three layers:
//!
//! * [`spectrum`] — ingestion of a tabulated solar spectrum (wavelength /
//!   spectral irradiance CSV) into an ascending photon-energy grid, plus
//!   band-limited photon-flux integrals.
//! * [`radiative`] — the radiative dark current of a single junction, both as
//!   an adaptive-quadrature reference and as a fast closed-form series.
//! * [`stack`] — per-cell operating points, stack efficiencies for both
//!   topologies, informed starting gap vectors, and the bridge that wraps a
//!   stack as an [`ObjectiveSpec`](crate::ObjectiveSpec) for the optimizers.
//!
//! All energies are in electron-volts, currents in A·m⁻², and powers in
//! W·m⁻²; efficiencies are dimensionless fractions of the integrated
//! incident power.

pub mod radiative;
pub mod spectrum;
pub mod stack;

pub use radiative::{
    radiative_current, radiative_current_series, RadiativeModel, E_MAX, RADIATIVE_PREFACTOR,
};
pub use spectrum::{flux_integral, load_spectrum, SpectrumTable};
pub use stack::{
    cell_operating_points, informed_starts, mj_efficiency, objective_for, optimal_cell_power,
    ss_efficiency, CellOperatingPoint, StackSpec, Topology,
};

/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum, m·s⁻¹.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Boltzmann constant, J·K⁻¹.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Photon energy·wavelength product `h·c/q` in eV·nm: a photon of wavelength
/// `λ` nm carries `EV_NM / λ` eV.
pub const EV_NM: f64 = 1e9 * PLANCK * SPEED_OF_LIGHT / ELEMENTARY_CHARGE;

/// Errors produced while ingesting spectra or evaluating the solar model.
#[derive(Debug, thiserror::Error)]
pub enum SolarError {
    /// Reading the spectrum file failed.
    #[error("spectrum i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// The spectrum file is malformed (bad row, too few rows).
    #[error("spectrum parse error: {0}")]
    Parse(String),
    /// An input lies outside the model's physical domain.
    #[error("domain error: {0}")]
    Domain(String),
}
