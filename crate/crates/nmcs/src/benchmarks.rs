//! The classic low-dimensional benchmark suite: Branin RCOS, B2,
//! Goldstein-Price, Shubert, Zakharov, Rosenbrock (d = 2, 5, 10),
//! Hartmann (3,4), and Shekel (4,5).
//!
//! Definitions, domains, and optima follow the standard global-optimization
//! literature (Dixon-Szegő / Chelouah-Siarry conventions). Optima without a
//! closed form were certified by an independent multistart + polish run and
//! are embedded as constants; [`suite`] re-verifies every stored optimum
//! point at load time, so a typo in any formula or constant fails fast.

use std::f64::consts::PI;

use crate::objective::ObjectiveSpec;

/// A benchmark problem: the objective plus its certified optimum.
#[derive(Debug, Clone)]
pub struct BenchmarkFunction {
    /// Objective with the literature search domain as bounds.
    pub spec: ObjectiveSpec,
    /// Global minimum value.
    pub optimum_value: f64,
    /// Known global minimizers (several functions have more than one).
    pub optimum_points: Vec<Vec<f64>>,
}

/// Signed error of a candidate value against the function's optimum
/// (non-negative for any feasible value, up to round-off).
pub fn error_vs_optimum(function: &BenchmarkFunction, value: f64) -> f64 {
    value - function.optimum_value
}

/// Tolerance of the load-time optimum re-verification.
const OPTIMUM_CHECK_TOL: f64 = 1e-9;

/// Branin RCOS global minimum, `5 / (4·pi)`.
const BRANIN_MIN: f64 = 0.397_887_357_729_738_4;
/// Shubert global minimum (18 equivalent minimizers; one is stored).
const SHUBERT_MIN: f64 = -186.730_908_831_023_92;
const SHUBERT_ARGMIN: [f64; 2] = [4.858_056_879_094_919, -7.083_506_409_758_323];
/// Hartmann (3,4) global minimum.
const HARTMANN3_MIN: f64 = -3.862_779_787_332_663;
const HARTMANN3_ARGMIN: [f64; 3] = [
    0.114_588_863_729_831_82,
    0.555_648_892_810_527,
    0.852_546_984_285_008_9,
];
/// Shekel (4,5) global minimum.
const SHEKEL5_MIN: f64 = -10.153_199_679_058_229;
const SHEKEL5_ARGMIN: [f64; 4] = [
    4.000_037_153_473_650_5,
    4.000_133_277_122_35,
    4.000_037_152_499_921,
    4.000_133_275_563_408,
];

fn branin(x: &[f64]) -> f64 {
    let b = 5.1 / (4.0 * PI * PI);
    let c = 5.0 / PI;
    let t = 1.0 / (8.0 * PI);
    let inner = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
    inner * inner + 10.0 * (1.0 - t) * x[0].cos() + 10.0
}

fn b2(x: &[f64]) -> f64 {
    x[0] * x[0] + 2.0 * x[1] * x[1] - 0.3 * (3.0 * PI * x[0]).cos()
        - 0.4 * (4.0 * PI * x[1]).cos()
        + 0.7
}

fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let term1 = 1.0
        + (a + b + 1.0).powi(2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let term2 = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    term1 * term2
}

fn shubert(x: &[f64]) -> f64 {
    let factor = |v: f64| -> f64 {
        (1..=5)
            .map(|j| j as f64 * (((j + 1) as f64) * v + j as f64).cos())
            .sum()
    };
    factor(x[0]) * factor(x[1])
}

fn zakharov(x: &[f64]) -> f64 {
    let sum_sq: f64 = x.iter().map(|v| v * v).sum();
    let weighted: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    sum_sq + weighted.powi(2) + weighted.powi(4)
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

fn hartmann3(x: &[f64]) -> f64 {
    const A: [[f64; 3]; 4] = [
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
    ];
    const C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
    const P: [[f64; 3]; 4] = [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.0381, 0.5743, 0.8828],
    ];
    -(0..4)
        .map(|i| {
            let e: f64 = (0..3).map(|j| A[i][j] * (x[j] - P[i][j]).powi(2)).sum();
            C[i] * (-e).exp()
        })
        .sum::<f64>()
}

fn shekel5(x: &[f64]) -> f64 {
    const A: [[f64; 4]; 5] = [
        [4.0, 4.0, 4.0, 4.0],
        [1.0, 1.0, 1.0, 1.0],
        [8.0, 8.0, 8.0, 8.0],
        [6.0, 6.0, 6.0, 6.0],
        [3.0, 7.0, 3.0, 7.0],
    ];
    const C: [f64; 5] = [0.1, 0.2, 0.2, 0.4, 0.4];
    -(0..5)
        .map(|i| {
            let dist: f64 = (0..4).map(|j| (x[j] - A[i][j]).powi(2)).sum();
            1.0 / (dist + C[i])
        })
        .sum::<f64>()
}

struct Entry {
    name: &'static str,
    d: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    f: fn(&[f64]) -> f64,
    optimum_value: f64,
    optimum_points: Vec<Vec<f64>>,
}

fn catalog() -> Vec<Entry> {
    vec![
        Entry {
            name: "RC",
            d: 2,
            lower: vec![-5.0, 0.0],
            upper: vec![10.0, 15.0],
            f: branin,
            optimum_value: BRANIN_MIN,
            optimum_points: vec![
                vec![PI, 2.275],
                vec![-PI, 12.275],
                vec![3.0 * PI, 2.475],
            ],
        },
        Entry {
            name: "B2",
            d: 2,
            lower: vec![-5.0; 2],
            upper: vec![10.0; 2],
            f: b2,
            optimum_value: 0.0,
            optimum_points: vec![vec![0.0, 0.0]],
        },
        Entry {
            name: "GP",
            d: 2,
            lower: vec![-2.0; 2],
            upper: vec![2.0; 2],
            f: goldstein_price,
            optimum_value: 3.0,
            optimum_points: vec![vec![0.0, -1.0]],
        },
        Entry {
            name: "SH",
            d: 2,
            lower: vec![-10.0; 2],
            upper: vec![10.0; 2],
            f: shubert,
            optimum_value: SHUBERT_MIN,
            optimum_points: vec![SHUBERT_ARGMIN.to_vec()],
        },
        Entry {
            name: "Z2",
            d: 2,
            lower: vec![-5.0; 2],
            upper: vec![10.0; 2],
            f: zakharov,
            optimum_value: 0.0,
            optimum_points: vec![vec![0.0, 0.0]],
        },
        Entry {
            name: "R2",
            d: 2,
            lower: vec![-5.0; 2],
            upper: vec![10.0; 2],
            f: rosenbrock,
            optimum_value: 0.0,
            optimum_points: vec![vec![1.0; 2]],
        },
        Entry {
            name: "H34",
            d: 3,
            lower: vec![0.0; 3],
            upper: vec![1.0; 3],
            f: hartmann3,
            optimum_value: HARTMANN3_MIN,
            optimum_points: vec![HARTMANN3_ARGMIN.to_vec()],
        },
        Entry {
            name: "S45",
            d: 4,
            lower: vec![0.0; 4],
            upper: vec![10.0; 4],
            f: shekel5,
            optimum_value: SHEKEL5_MIN,
            optimum_points: vec![SHEKEL5_ARGMIN.to_vec()],
        },
        Entry {
            name: "R5",
            d: 5,
            lower: vec![-5.0; 5],
            upper: vec![10.0; 5],
            f: rosenbrock,
            optimum_value: 0.0,
            optimum_points: vec![vec![1.0; 5]],
        },
        Entry {
            name: "R10",
            d: 10,
            lower: vec![-5.0; 10],
            upper: vec![10.0; 10],
            f: rosenbrock,
            optimum_value: 0.0,
            optimum_points: vec![vec![1.0; 10]],
        },
    ]
}

/// Builds the full ten-function suite, re-verifying every stored optimum
/// point against its formula (panics on any drift beyond 1e-9 — that would
/// mean a corrupted constant, not a user error).
pub fn suite() -> Vec<BenchmarkFunction> {
    catalog()
        .into_iter()
        .map(|e| {
            let spec = ObjectiveSpec::new(e.name, e.d, e.lower, e.upper, e.f)
                .expect("benchmark domains are statically valid");
            for p in &e.optimum_points {
                let at = spec
                    .evaluate_unchecked(p)
                    .expect("optimum points match the declared dimension");
                assert!(
                    (at - e.optimum_value).abs() <= OPTIMUM_CHECK_TOL,
                    "{}: optimum point {:?} evaluates to {at}, expected {}",
                    e.name,
                    p,
                    e.optimum_value
                );
            }
            BenchmarkFunction {
                spec,
                optimum_value: e.optimum_value,
                optimum_points: e.optimum_points,
            }
        })
        .collect()
}

/// Looks one suite entry up by its table name (`"RC"`, `"R10"`, ...).
pub fn by_name(name: &str) -> Option<BenchmarkFunction> {
    suite().into_iter().find(|f| f.spec.name == name)
}
