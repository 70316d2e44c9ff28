//! Report generation: reads the CSVs the other subcommands write, renders a
//! side-by-side comparison with the best algorithm marked per row, and
//! checks every NMS-CS result against the embedded reference targets.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::config::HarnessError;
use crate::thresholds::{bench_target, eta_target};

/// A parsed benchmark CSV row.
#[derive(Debug, Clone)]
struct BenchRecord {
    function: String,
    d: usize,
    algorithm: String,
    runs: usize,
    mean_evals: f64,
    mean_error: f64,
    success_rate: f64,
}

/// A parsed solar CSV row.
#[derive(Debug, Clone)]
struct SolarRecord {
    topology: String,
    n_cells: usize,
    algorithm: String,
    #[allow(dead_code)]
    seed: u64,
    best_eta_percent: f64,
}

/// Result of [`compare_report`]: the rendered text and whether every
/// NMS-CS number satisfied the embedded targets.
#[derive(Debug)]
pub struct ReportOutcome {
    pub text: String,
    pub thresholds_ok: bool,
    pub violations: Vec<String>,
}

const BENCH_HEADER: [&str; 7] =
    ["function", "d", "algorithm", "runs", "mean_evals", "mean_error", "success_rate"];
const SOLAR_HEADER: [&str; 7] =
    ["topology", "n_cells", "algorithm", "seed", "best_eta_percent", "evals_used", "best_gaps"];

fn parse_field<T: std::str::FromStr>(field: &str, name: &str, path: &Path) -> Result<T, HarnessError> {
    field.parse().map_err(|_| {
        HarnessError::Schema(format!(
            "{}: cannot parse {name} from {field:?}",
            path.display()
        ))
    })
}

/// Reads one CSV, dispatching on its header row.
fn read_csv(
    path: &Path,
    bench: &mut Vec<BenchRecord>,
    solar: &mut Vec<SolarRecord>,
) -> Result<(), HarnessError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .has_headers(false)
        .from_path(path)?;
    let mut records = reader.records();
    let header = match records.next() {
        Some(h) => h?,
        None => return Err(HarnessError::Schema(format!("{}: empty file", path.display()))),
    };
    let header: Vec<&str> = header.iter().collect();
    if header == BENCH_HEADER {
        for record in records {
            let r = record?;
            if r.len() != BENCH_HEADER.len() {
                return Err(HarnessError::Schema(format!(
                    "{}: benchmark row has {} fields, expected {}",
                    path.display(),
                    r.len(),
                    BENCH_HEADER.len()
                )));
            }
            bench.push(BenchRecord {
                function: r[0].to_string(),
                d: parse_field(&r[1], "d", path)?,
                algorithm: r[2].to_string(),
                runs: parse_field(&r[3], "runs", path)?,
                mean_evals: parse_field(&r[4], "mean_evals", path)?,
                mean_error: parse_field(&r[5], "mean_error", path)?,
                success_rate: parse_field(&r[6], "success_rate", path)?,
            });
        }
        Ok(())
    } else if header == SOLAR_HEADER {
        for record in records {
            let r = record?;
            if r.len() < SOLAR_HEADER.len() - 1 {
                return Err(HarnessError::Schema(format!(
                    "{}: solar row has {} fields, expected at least {}",
                    path.display(),
                    r.len(),
                    SOLAR_HEADER.len() - 1
                )));
            }
            solar.push(SolarRecord {
                topology: r[0].to_string(),
                n_cells: parse_field(&r[1], "n_cells", path)?,
                algorithm: r[2].to_string(),
                seed: parse_field(&r[3], "seed", path)?,
                best_eta_percent: parse_field(&r[4], "best_eta_percent", path)?,
            });
        }
        Ok(())
    } else {
        Err(HarnessError::Schema(format!(
            "{}: unrecognized header {header:?}",
            path.display()
        )))
    }
}

/// Canonical rendering order for algorithm columns.
fn algorithm_order(tag: &str) -> usize {
    ["nms", "cs", "sa", "ga", "nmcs"].iter().position(|t| *t == tag).unwrap_or(5)
}

fn render_benchmark(
    records: &[BenchRecord],
    out: &mut String,
    violations: &mut Vec<String>,
) {
    let _ = writeln!(out, "Benchmark suite (means over seeded runs; * = best error in row)");
    // Group rows by function, preserving first-seen (suite) order.
    let mut functions: Vec<String> = Vec::new();
    for r in records {
        if !functions.contains(&r.function) {
            functions.push(r.function.clone());
        }
    }
    for function in &functions {
        let mut group: Vec<&BenchRecord> =
            records.iter().filter(|r| &r.function == function).collect();
        group.sort_by_key(|r| algorithm_order(&r.algorithm));
        let best = group
            .iter()
            .min_by(|a, b| {
                (a.mean_error, a.mean_evals)
                    .partial_cmp(&(b.mean_error, b.mean_evals))
                    .expect("finite means")
            })
            .map(|r| r.algorithm.clone())
            .unwrap_or_default();
        let d = group.first().map(|r| r.d).unwrap_or(0);
        let runs = group.first().map(|r| r.runs).unwrap_or(0);
        let _ = write!(out, "  {function:<4} d={d:<2} runs={runs:<3}");
        for r in &group {
            let marker = if r.algorithm == best { "*" } else { " " };
            let _ = write!(
                out,
                " | {}{}: evals {:8.1}  err {:9.3e}  ok {:4.0}%",
                r.algorithm, marker, r.mean_evals, r.mean_error, 100.0 * r.success_rate
            );
        }
        let _ = writeln!(out);

        for r in &group {
            if r.algorithm != "nmcs" {
                continue;
            }
            match bench_target(function) {
                Some(t) => {
                    if r.mean_error > t.error_gate {
                        violations.push(format!(
                            "{function}: nmcs mean error {:.3e} exceeds gate {:.0e}",
                            r.mean_error, t.error_gate
                        ));
                    }
                    let (lo, hi) = (t.table_evals / 2.0, t.table_evals * 2.0);
                    if t.enforce_window && !(lo..=hi).contains(&r.mean_evals) {
                        violations.push(format!(
                            "{function}: nmcs mean evaluations {:.1} outside [{lo:.1}, {hi:.1}]",
                            r.mean_evals
                        ));
                    }
                    if !t.enforce_window {
                        let _ = writeln!(
                            out,
                            "       note: {function} evaluation window not enforced \
                             (reference {:.0}; measured {:.1})",
                            t.table_evals, r.mean_evals
                        );
                    }
                }
                None => violations.push(format!("{function}: not a suite function")),
            }
        }
    }
}

fn render_solar(records: &[SolarRecord], out: &mut String, violations: &mut Vec<String>) {
    // best-of-seeds per (topology, n, algorithm)
    let mut best: BTreeMap<(String, usize, String), f64> = BTreeMap::new();
    for r in records {
        let key = (r.topology.clone(), r.n_cells, r.algorithm.clone());
        let entry = best.entry(key).or_insert(f64::NEG_INFINITY);
        if r.best_eta_percent > *entry {
            *entry = r.best_eta_percent;
        }
    }

    for topology in ["ss", "mj"] {
        let mut sizes: Vec<usize> = best
            .keys()
            .filter(|(t, _, _)| t == topology)
            .map(|(_, n, _)| *n)
            .collect();
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.is_empty() {
            continue;
        }
        let label = match topology {
            "ss" => "Split spectrum",
            _ => "Multi-junction",
        };
        let _ = writeln!(out, "{label} (best-of-seeds η%; * = best in row)");
        for &n in &sizes {
            let mut group: Vec<(&String, f64)> = best
                .iter()
                .filter(|((t, size, _), _)| t == topology && *size == n)
                .map(|((_, _, algo), eta)| (algo, *eta))
                .collect();
            group.sort_by_key(|(algo, _)| algorithm_order(algo));
            let top = group
                .iter()
                .map(|(_, eta)| *eta)
                .fold(f64::NEG_INFINITY, f64::max);
            let _ = write!(out, "  N={n:<2}");
            for (algo, eta) in &group {
                let marker = if (eta - top).abs() < 5e-4 { "*" } else { " " };
                let _ = write!(out, " | {algo}{marker}: {eta:7.3}");
            }
            let _ = writeln!(out);

            if let Some(&eta) = best.get(&(topology.to_string(), n, "nmcs".to_string())) {
                if let Some(t) = eta_target(topology, n) {
                    if (eta - t.eta_percent).abs() > t.tolerance {
                        violations.push(format!(
                            "{topology} N={n}: nmcs best η {eta:.3}% outside \
                             {:.3}% ± {:.1}",
                            t.eta_percent, t.tolerance
                        ));
                    }
                }
            }
        }
    }

    // Structural rule: a series stack cannot beat split spectrum.
    let mj_sizes: Vec<usize> = best
        .keys()
        .filter(|(t, _, a)| t == "mj" && a == "nmcs")
        .map(|(_, n, _)| *n)
        .collect();
    for n in mj_sizes {
        let mj = best.get(&("mj".to_string(), n, "nmcs".to_string()));
        let ss = best.get(&("ss".to_string(), n, "nmcs".to_string()));
        if let (Some(&mj), Some(&ss)) = (mj, ss) {
            if mj > ss + 1e-6 {
                violations.push(format!(
                    "N={n}: multi-junction η {mj:.3}% exceeds split-spectrum η {ss:.3}%"
                ));
            }
        }
    }
}

/// Builds the comparison report over any mix of benchmark and solar CSVs.
pub fn compare_report(paths: &[impl AsRef<Path>]) -> Result<ReportOutcome, HarnessError> {
    let mut bench = Vec::new();
    let mut solar = Vec::new();
    for path in paths {
        read_csv(path.as_ref(), &mut bench, &mut solar)?;
    }
    if bench.is_empty() && solar.is_empty() {
        return Err(HarnessError::Schema("no data rows in any input".into()));
    }

    let mut text = String::new();
    let mut violations = Vec::new();
    if !bench.is_empty() {
        render_benchmark(&bench, &mut text, &mut violations);
    }
    if !solar.is_empty() {
        render_solar(&solar, &mut text, &mut violations);
    }
    if violations.is_empty() {
        let _ = writeln!(text, "All embedded NMS-CS targets satisfied.");
    } else {
        let _ = writeln!(text, "Target violations:");
        for v in &violations {
            let _ = writeln!(text, "  FAIL {v}");
        }
    }
    Ok(ReportOutcome {
        text,
        thresholds_ok: violations.is_empty(),
        violations,
    })
}
