//! Solar-spectrum ingestion and band-limited photon-flux integrals.
//!
//! Input files follow the common reference-spectrum layout: CSV rows of
//! `wavelength_nm,spectral_irradiance_W_m2_nm`, optionally preceded by `#`
//! comment lines and a textual column-header row. Ingestion converts each row
//! to photon energy `E = EV_NM / λ` and to spectral photon flux per unit
//! energy via the Jacobian `|dλ/dE|`, producing an ascending energy grid.

use std::io::BufRead;
use std::path::Path;

use super::{SolarError, ELEMENTARY_CHARGE, EV_NM};

/// A tabulated solar spectrum resampled onto an ascending photon-energy grid.
///
/// Construction is the only fallible step; afterwards the table is immutable
/// and cheap to share between threads (the optimizer objectives hold it in an
/// `Arc`).
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    /// Photon energies in eV, strictly increasing.
    pub energy_grid: Vec<f64>,
    /// Spectral photon flux at each grid energy, photons·s⁻¹·m⁻²·eV⁻¹.
    pub photon_flux: Vec<f64>,
    /// Incident power integrated over the original wavelength grid, W·m⁻².
    pub p_in: f64,
}

/// Trapezoidal integral of `y` against `x` (any monotone `x`).
fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 1..x.len() {
        total += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    total
}

impl SpectrumTable {
    /// Parses a spectrum from CSV text (see the module docs for the layout).
    ///
    /// Non-numeric rows are tolerated only before the first data row (column
    /// headers); afterwards they are malformed. At least two data rows are
    /// required for the trapezoidal integrals to make sense.
    pub fn from_reader(reader: impl BufRead) -> Result<Self, SolarError> {
        let mut wavelengths: Vec<f64> = Vec::new();
        let mut irradiances: Vec<f64> = Vec::new();

        for (line_no, line) in reader.lines().enumerate() {
            let line = line?;
            let row = line.trim();
            if row.is_empty() || row.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = row.split(',').map(str::trim).collect();
            let parsed = if fields.len() == 2 {
                match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
                    (Ok(w), Ok(i)) => Some((w, i)),
                    _ => None,
                }
            } else {
                None
            };
            match parsed {
                Some((wavelength, irradiance)) => {
                    if !(wavelength > 0.0) {
                        return Err(SolarError::Domain(format!(
                            "line {}: wavelength must be positive, got {wavelength}",
                            line_no + 1
                        )));
                    }
                    if !(irradiance >= 0.0) {
                        return Err(SolarError::Domain(format!(
                            "line {}: irradiance must be non-negative, got {irradiance}",
                            line_no + 1
                        )));
                    }
                    if let Some(&prev) = wavelengths.last() {
                        if wavelength <= prev {
                            return Err(SolarError::Domain(format!(
                                "line {}: wavelengths must be strictly increasing \
                                 ({prev} then {wavelength})",
                                line_no + 1
                            )));
                        }
                    }
                    wavelengths.push(wavelength);
                    irradiances.push(irradiance);
                }
                None if wavelengths.is_empty() => continue, // header row
                None => {
                    return Err(SolarError::Parse(format!(
                        "line {}: malformed row {row:?}",
                        line_no + 1
                    )));
                }
            }
        }

        if wavelengths.len() < 2 {
            return Err(SolarError::Parse(format!(
                "need at least two data rows, found {}",
                wavelengths.len()
            )));
        }

        // Incident power on the native wavelength grid.
        let p_in = trapezoid(&wavelengths, &irradiances);

        // Convert to the energy picture. Ascending wavelength means
        // descending energy, so the grid is built in reverse. The photon flux
        // per unit energy is I(λ)·λ/E · 1/(q·E) = I(λ)·EV_NM/(q·E³).
        let n = wavelengths.len();
        let mut energy_grid = Vec::with_capacity(n);
        let mut photon_flux = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let energy = EV_NM / wavelengths[i];
            energy_grid.push(energy);
            photon_flux.push(irradiances[i] * EV_NM / (energy * energy * energy * ELEMENTARY_CHARGE));
        }

        Ok(Self { energy_grid, photon_flux, p_in })
    }

    /// The spectrum bundled with the crate: a standard AM1.5G global-tilt
    /// table (280–4000 nm), normalized to ≈1000 W·m⁻² incident power.
    pub fn bundled() -> Self {
        static CSV: &str = include_str!("../../data/am15g.csv");
        Self::from_reader(CSV.as_bytes()).expect("bundled spectrum is valid")
    }

    /// Linear interpolation of the photon flux at energy `x`, which must lie
    /// within the grid range.
    fn flux_at(&self, x: f64) -> f64 {
        let grid = &self.energy_grid;
        // First index with grid value >= x; x is clamped to the grid by the
        // callers, so 0 < k <= len is only violated at the exact lower edge.
        let k = grid.partition_point(|&g| g < x);
        if k == 0 {
            return self.photon_flux[0];
        }
        if grid[k.min(grid.len() - 1)] == x {
            return self.photon_flux[k.min(grid.len() - 1)];
        }
        let (x0, x1) = (grid[k - 1], grid[k]);
        let (y0, y1) = (self.photon_flux[k - 1], self.photon_flux[k]);
        y0 + (x - x0) / (x1 - x0) * (y1 - y0)
    }
}

/// Loads a spectrum from a CSV file on disk.
pub fn load_spectrum(path: impl AsRef<Path>) -> Result<SpectrumTable, SolarError> {
    let file = std::fs::File::open(path)?;
    SpectrumTable::from_reader(std::io::BufReader::new(file))
}

/// Charge-weighted photon flux `q·∫ φ(E) dE` over `[e_lo, e_hi]`, in A·m⁻².
///
/// This is the photogenerated current density of an ideal cell that absorbs
/// every photon in the band. The integral is a trapezoid on the native grid
/// with linear interpolation at the band edges; `e_hi` may be `f64::INFINITY`
/// and both edges are clamped to the tabulated range, so a band entirely
/// outside the table integrates to zero.
pub fn flux_integral(table: &SpectrumTable, e_lo: f64, e_hi: f64) -> Result<f64, SolarError> {
    if !(e_lo > 0.0) {
        return Err(SolarError::Domain(format!(
            "band lower edge must be positive, got {e_lo}"
        )));
    }
    let grid = &table.energy_grid;
    let lo = e_lo.max(grid[0]);
    let hi = e_hi.min(grid[grid.len() - 1]);
    if lo >= hi {
        return Ok(0.0);
    }

    // Integration nodes: the band edges plus every grid point strictly inside.
    let first_inside = grid.partition_point(|&g| g <= lo);
    let first_outside = grid.partition_point(|&g| g < hi);
    let mut xs = Vec::with_capacity(first_outside - first_inside + 2);
    let mut ys = Vec::with_capacity(xs.capacity());
    xs.push(lo);
    ys.push(table.flux_at(lo));
    for i in first_inside..first_outside {
        xs.push(grid[i]);
        ys.push(table.photon_flux[i]);
    }
    xs.push(hi);
    ys.push(table.flux_at(hi));

    Ok(ELEMENTARY_CHARGE * trapezoid(&xs, &ys))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_table() -> SpectrumTable {
        // Two rows, 1 W·m⁻²·nm⁻¹ across 500 nm.
        SpectrumTable::from_reader("500,1.0\n1000,1.0\n".as_bytes()).unwrap()
    }

    #[test]
    fn toy_power_is_hand_trapezoid() {
        let t = toy_table();
        assert!((t.p_in - 500.0).abs() < 1e-12);
    }

    #[test]
    fn wavelength_to_energy_conversion() {
        let t = toy_table();
        // 1000 nm maps to the lower edge of the ascending energy grid.
        assert!((t.energy_grid[0] - 1.239_841_984_332_002_8).abs() < 1e-12);
        assert!((t.energy_grid[1] - EV_NM / 500.0).abs() < 1e-12);
        assert!(t.photon_flux.iter().all(|&f| f > 0.0));
    }

    #[test]
    fn degenerate_inputs_are_parse_errors() {
        for text in ["", "# only a comment\n", "500,1.0\n"] {
            assert!(matches!(
                SpectrumTable::from_reader(text.as_bytes()),
                Err(SolarError::Parse(_))
            ));
        }
    }

    #[test]
    fn header_rows_are_tolerated_before_data_only() {
        let t = SpectrumTable::from_reader(
            "# comment\nwavelength_nm,global_tilt_W_m2_nm\n500,1.0\n1000,1.0\n".as_bytes(),
        )
        .unwrap();
        assert_eq!(t.energy_grid.len(), 2);

        let err = SpectrumTable::from_reader("500,1.0\n1000,1.0\noops,bad\n".as_bytes());
        assert!(matches!(err, Err(SolarError::Parse(_))));
    }

    #[test]
    fn physical_domain_is_enforced() {
        for text in [
            "0,1.0\n1000,1.0\n",      // non-positive wavelength
            "500,-1.0\n1000,1.0\n",   // negative irradiance
            "500,1.0\n500,1.0\n",     // not strictly increasing
            "1000,1.0\n500,1.0\n",    // descending
        ] {
            assert!(matches!(
                SpectrumTable::from_reader(text.as_bytes()),
                Err(SolarError::Domain(_))
            ));
        }
    }

    #[test]
    fn zero_width_band_integrates_to_zero() {
        let t = toy_table();
        assert_eq!(flux_integral(&t, 1.5, 1.5).unwrap(), 0.0);
        // Band entirely above the table also vanishes.
        assert_eq!(flux_integral(&t, 5.0, f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn nonpositive_lower_edge_is_rejected() {
        let t = toy_table();
        assert!(matches!(
            flux_integral(&t, 0.0, 1.0),
            Err(SolarError::Domain(_))
        ));
        assert!(matches!(
            flux_integral(&t, -1.0, 1.0),
            Err(SolarError::Domain(_))
        ));
    }

    #[test]
    fn partition_additivity_is_exact() {
        let t = SpectrumTable::bundled();
        let (lo, hi) = (t.energy_grid[0], *t.energy_grid.last().unwrap());
        let total = flux_integral(&t, lo, f64::INFINITY).unwrap();
        // Split at arbitrary interior points, including off-grid ones.
        let cuts = [lo, 0.9, 1.234_567, 2.5, 3.1, hi];
        let mut sum = 0.0;
        for w in cuts.windows(2) {
            sum += flux_integral(&t, w[0], w[1]).unwrap();
        }
        assert!((sum - total).abs() < 1e-9 * total);
    }

    #[test]
    fn bundled_table_shape_and_power() {
        let t = SpectrumTable::bundled();
        assert_eq!(t.energy_grid.len(), 262);
        assert!((t.p_in - 1000.3657).abs() < 1e-6);
        assert!(t.energy_grid.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn incident_power_consistent_across_pictures() {
        // p_in is computed on the wavelength grid; integrating E·φ(E)·q over
        // the energy grid must agree to well within 0.1%.
        let t = SpectrumTable::bundled();
        let power_e: Vec<f64> = t
            .energy_grid
            .iter()
            .zip(&t.photon_flux)
            .map(|(&e, &f)| e * f * ELEMENTARY_CHARGE)
            .collect();
        let p_e = trapezoid(&t.energy_grid, &power_e);
        assert!((p_e - t.p_in).abs() < 1e-3 * t.p_in);
    }

    #[test]
    fn edge_interpolation_matches_grid_points() {
        let t = SpectrumTable::bundled();
        // Integrating exactly between two adjacent grid points equals the
        // plain trapezoid on that segment.
        let (a, b) = (t.energy_grid[100], t.energy_grid[101]);
        let expected =
            0.5 * (t.photon_flux[100] + t.photon_flux[101]) * (b - a) * ELEMENTARY_CHARGE;
        let got = flux_integral(&t, a, b).unwrap();
        assert!((got - expected).abs() <= 1e-12 * expected);
    }
}
