//! Pins the solar model to reference values computed with an independent
//! high-precision implementation (30-digit quadrature for the emission
//! integrals, a 1e-4 V brute-force grid for the single-cell operating point,
//! and dense dynamic-programming grids for the stack optima), all evaluated
//! against the exact spectrum file bundled with the crate.

use std::sync::Arc;

use nmcs::solar::{
    flux_integral, informed_starts, mj_efficiency, optimal_cell_power, radiative_current,
    radiative_current_series, ss_efficiency, RadiativeModel, SpectrumTable, StackSpec, Topology,
    EV_NM, RADIATIVE_PREFACTOR,
};

const P_IN: f64 = 1000.3657;
const E_MIN: f64 = 0.309_960_496_083_000_7;
const E_MAX_TABLE: f64 = 4.428_007_086_900_01;

const FLUX_1P12_INF: f64 = 438.000_700_430_679_7;
const FLUX_1P12_1P42: f64 = 117.999_588_519_375_83;
const FLUX_2P0_INF: f64 = 142.715_612_793_236_1;
const FLUX_TOTAL: f64 = 697.851_043_663_243_1;

const JR_1P12_0: f64 = 8.230_235_483_940_448e-13;
const JR_1P12_0P7: f64 = 0.473_036_565_251_137_4;
const JR_1P5_0P9: f64 = 0.000_793_778_246_000_836_9;
const JR_0P7_0: f64 = 3.757_252_406_351_664_3e-6;

const SINGLE_CELL_POWER: f64 = 333.933_468_112_524_8;
const SINGLE_CELL_VMP: f64 = 0.7874;
const SINGLE_CELL_ETA: f64 = 0.333_811_393_286_000_1;

const SS_PIN_GAPS: [f64; 3] = [0.92, 1.411, 2.044];
const SS_PIN_ETA: f64 = 0.519_340_160_069_795;
const MJ_PIN_GAPS: [f64; 3] = [0.923, 1.347, 1.877];
const MJ_PIN_ETA: f64 = 0.514_545_624_043_435;

const GRID40_SS3_GAPS: [f64; 3] =
    [0.961_538_461_538_461_6, 1.423_076_923_076_923_1, 2.038_461_538_461_538_3];
const GRID40_SS3_ETA: f64 = 0.514_502_282_455_791_8;

const START_A_N2: [f64; 2] = [0.309_960_496_083_000_7, 1.334_828_392_714_252_8];
const START_A_N3: [f64; 3] =
    [0.309_960_496_083_000_7, 1.038_965_639_133_344_8, 1.666_524_277_611_964_9];

/// Grid-search optima (efficiency, gap vector) for the split-spectrum stack,
/// N = 1..=10, found on a 900-point gap grid with golden-section refinement
/// of every band voltage.
const SS_OPTIMA: [(f64, &[f64]); 10] = [
    (0.334_791_167_349_127_45, &[1.371_746_384_872_080_1]),
    (0.459_872_171_797_588_7, &[0.930_367_074_527_252_5, 1.642_269_187_986_651_8]),
    (
        0.519_336_621_605_212,
        &[0.919_688_542_825_361_6, 1.410_901_001_112_347, 2.044_493_882_091_212_6],
    ),
    (
        0.556_426_717_466_790_3,
        &[
            0.695_439_377_085_650_7,
            1.126_140_155_728_587_3,
            1.635_150_166_852_057_8,
            2.229_588_431_590_656_2,
        ],
    ),
    (
        0.581_104_781_312_636,
        &[
            0.695_439_377_085_650_7,
            1.108_342_602_892_102_4,
            1.432_258_064_516_129,
            1.845_161_290_322_580_7,
            2.411_123_470_522_803_3,
        ],
    ),
    (
        0.597_434_948_447_280_7,
        &[
            0.691_879_866_518_353_8,
            0.973_081_201_334_816_5,
            1.343_270_300_333_704,
            1.642_269_187_986_651_8,
            2.023_136_818_687_431,
            2.532_146_829_810_901,
        ],
    ),
    (
        0.611_070_237_593_138_7,
        &[
            0.688_320_355_951_056_8,
            0.926_807_563_959_955_6,
            1.136_818_687_430_478_2,
            1.414_460_511_679_644,
            1.731_256_952_169_077,
            2.097_886_540_600_667_7,
            2.578_420_467_185_762,
        ],
    ),
    (
        0.620_938_015_238_113_4,
        &[
            0.688_320_355_951_056_8,
            0.926_807_563_959_955_6,
            1.133_259_176_863_181_2,
            1.385_984_427_141_268_2,
            1.638_709_677_419_354_8,
            1.919_911_012_235_817_6,
            2.254_505_005_561_735_5,
            2.688_765_294_771_968_7,
        ],
    ),
    (
        0.628_764_171_204_684_1,
        &[
            0.496_106_785_317_018_9,
            0.695_439_377_085_650_7,
            0.926_807_563_959_955_6,
            1.133_259_176_863_181_2,
            1.385_984_427_141_268_2,
            1.638_709_677_419_354_8,
            1.919_911_012_235_817_6,
            2.254_505_005_561_735_5,
            2.688_765_294_771_968_7,
        ],
    ),
    (
        0.635_419_019_566_811_7,
        &[
            0.496_106_785_317_018_9,
            0.695_439_377_085_650_7,
            0.926_807_563_959_955_6,
            1.133_259_176_863_181_2,
            1.385_984_427_141_268_2,
            1.635_150_166_852_057_8,
            1.870_077_864_293_659_5,
            2.140_600_667_408_231_4,
            2.468_075_639_599_555,
            2.913_014_460_511_679_4,
        ],
    ),
];

/// Grid-search optima for the series-connected stack, N = 1..=8.
const MJ_OPTIMA: [(f64, &[f64]); 8] = [
    (0.334_697_670_640_827_06, &[1.378_865_406_006_674_3]),
    (0.456_663_261_496_297_66, &[0.923_248_053_392_658_6, 1.578_197_997_775_305_8]),
    (
        0.514_562_225_713_109_3,
        &[0.923_248_053_392_658_6, 1.346_829_810_901_001, 1.877_196_885_428_254],
    ),
    (
        0.551_050_049_345_325_9,
        &[
            0.706_117_908_787_541_8,
            1.101_223_581_757_508_5,
            1.482_091_212_458_287,
            1.983_982_202_447_163_6,
        ],
    ),
    (
        0.573_069_487_149_812_8,
        &[
            0.691_879_866_518_353_8,
            1.001_557_285_873_192_5,
            1.282_758_620_689_655,
            1.645_828_698_553_948_8,
            2.112_124_582_869_855_6,
        ],
    ),
    (
        0.592_000_963_893_853_9,
        &[
            0.691_879_866_518_353_8,
            0.962_402_669_632_925_5,
            1.193_770_856_507_230_2,
            1.467_853_170_189_099,
            1.773_971_078_976_640_7,
            2.218_909_899_888_765_3,
        ],
    ),
    (
        0.605_334_806_941_951_4,
        &[
            0.691_879_866_518_353_8,
            0.937_486_095_661_846_5,
            1.140_378_197_997_775_4,
            1.361_067_853_170_189_2,
            1.592_436_040_044_494_1,
            1.887_875_417_130_144_8,
            2.311_457_174_638_487,
        ],
    ),
    (
        0.611_468_262_154_245_8,
        &[
            0.695_439_377_085_650_7,
            0.919_688_542_825_361_6,
            1.086_985_539_488_320_6,
            1.254_282_536_151_279_3,
            1.474_972_191_323_693,
            1.695_661_846_496_106_9,
            1.976_863_181_312_569_7,
            2.386_206_896_551_724,
        ],
    ),
];

fn table() -> Arc<SpectrumTable> {
    Arc::new(SpectrumTable::bundled())
}

fn stack(n: usize, topology: Topology) -> StackSpec {
    StackSpec::new(n, topology, table()).unwrap()
}

fn assert_rel(got: f64, want: f64, tol: f64, what: &str) {
    let err = (got - want).abs() / want.abs().max(f64::MIN_POSITIVE);
    assert!(err <= tol, "{what}: got {got:e}, want {want:e} (rel err {err:e})");
}

#[test]
fn physics_constants_match_reference() {
    assert_rel(EV_NM, 1239.841_984_332_002_8, 1e-14, "eV·nm product");
    assert_rel(RADIATIVE_PREFACTOR, 158_347_769.099_715_32, 1e-14, "prefactor");
    assert_rel(
        RadiativeModel::default().kt(),
        0.025_851_999_786_435_535,
        1e-14,
        "kT at 300 K",
    );
}

#[test]
fn bundled_spectrum_matches_reference() {
    let t = table();
    assert_rel(t.p_in, P_IN, 1e-9, "incident power");
    assert_rel(t.energy_grid[0], E_MIN, 1e-12, "bottom of energy grid");
    assert_rel(*t.energy_grid.last().unwrap(), E_MAX_TABLE, 1e-12, "top of energy grid");
}

#[test]
fn flux_integrals_match_reference() {
    let t = table();
    assert_rel(
        flux_integral(&t, 1.12, f64::INFINITY).unwrap(),
        FLUX_1P12_INF,
        1e-9,
        "silicon-like photocurrent",
    );
    assert_rel(
        flux_integral(&t, 1.12, 1.42).unwrap(),
        FLUX_1P12_1P42,
        1e-9,
        "interior band",
    );
    assert_rel(flux_integral(&t, 2.0, f64::INFINITY).unwrap(), FLUX_2P0_INF, 1e-9, "high band");
    assert_rel(
        flux_integral(&t, E_MIN, f64::INFINITY).unwrap(),
        FLUX_TOTAL,
        1e-9,
        "full-table photocurrent",
    );
}

#[test]
fn radiative_series_matches_high_precision_quadrature() {
    let m = RadiativeModel::default();
    for (e_lo, v, want) in [
        (1.12, 0.0, JR_1P12_0),
        (1.12, 0.7, JR_1P12_0P7),
        (1.5, 0.9, JR_1P5_0P9),
        (0.7, 0.0, JR_0P7_0),
    ] {
        assert_rel(
            radiative_current_series(&m, e_lo, v),
            want,
            1e-11,
            &format!("series J_r({e_lo}, {v})"),
        );
        assert_rel(
            radiative_current(&m, e_lo, v).unwrap(),
            want,
            1e-8,
            &format!("quadrature J_r({e_lo}, {v})"),
        );
    }
}

#[test]
fn single_cell_operating_point_matches_brute_force() {
    let s = stack(1, Topology::SplitSpectrum);
    let (vmp, power) = optimal_cell_power(&s, 1.12, f64::INFINITY).unwrap();
    // The reference scanned voltages on a 1e-4 V grid, so its maximum sits
    // within half a grid step of the true one.
    assert!(
        (vmp - SINGLE_CELL_VMP).abs() <= 1.5e-4,
        "vmp {vmp} vs reference {SINGLE_CELL_VMP}"
    );
    assert!(
        (power - SINGLE_CELL_POWER).abs() <= 2e-3,
        "power {power} vs reference {SINGLE_CELL_POWER}"
    );
    assert_rel(power / s.spectrum.p_in, SINGLE_CELL_ETA, 1e-5, "single-cell efficiency");
}

#[test]
fn fixed_gap_stack_efficiencies_match_reference() {
    let ss = stack(3, Topology::SplitSpectrum);
    let eta_ss = ss_efficiency(&ss, &SS_PIN_GAPS).unwrap();
    assert!(
        (eta_ss - SS_PIN_ETA).abs() < 1e-8,
        "split-spectrum pin: {eta_ss} vs {SS_PIN_ETA}"
    );

    let mj = stack(3, Topology::MultiJunction);
    let eta_mj = mj_efficiency(&mj, &MJ_PIN_GAPS).unwrap();
    assert!(
        (eta_mj - MJ_PIN_ETA).abs() < 1e-7,
        "series pin: {eta_mj} vs {MJ_PIN_ETA}"
    );

    assert!(eta_mj < eta_ss);
}

#[test]
fn split_spectrum_grid_optima_are_reproduced() {
    for (i, (eta_want, gaps)) in SS_OPTIMA.iter().enumerate() {
        let s = stack(i + 1, Topology::SplitSpectrum);
        let eta = ss_efficiency(&s, gaps).unwrap();
        assert!(
            (eta - eta_want).abs() < 1e-8,
            "split-spectrum optimum N={}: {eta} vs {eta_want}",
            i + 1
        );
    }
}

#[test]
fn multi_junction_grid_optima_are_reproduced() {
    for (i, (eta_want, gaps)) in MJ_OPTIMA.iter().enumerate() {
        let s = stack(i + 1, Topology::MultiJunction);
        let eta = mj_efficiency(&s, gaps).unwrap();
        assert!(
            (eta - eta_want).abs() < 1e-7,
            "series optimum N={}: {eta} vs {eta_want}",
            i + 1
        );
    }
}

#[test]
fn coarse_grid_benchmark_point_is_reproduced() {
    // The 40-point-per-axis exhaustive grid value used as the optimizer
    // sanity floor for the 3-cell split-spectrum problem.
    let s = stack(3, Topology::SplitSpectrum);
    let eta = ss_efficiency(&s, &GRID40_SS3_GAPS).unwrap();
    assert!(
        (eta - GRID40_SS3_ETA).abs() < 1e-8,
        "coarse-grid design: {eta} vs {GRID40_SS3_ETA}"
    );
}

#[test]
fn informed_starts_match_reference() {
    let s = stack(3, Topology::SplitSpectrum);
    let (a2, _) = informed_starts(&s, 2);
    for (got, want) in a2.iter().zip(START_A_N2) {
        assert_rel(*got, want, 1e-9, "two-cell flux-quantile start");
    }
    let (a3, b3) = informed_starts(&s, 3);
    for (got, want) in a3.iter().zip(START_A_N3) {
        assert_rel(*got, want, 1e-9, "three-cell flux-quantile start");
    }
    assert_eq!(b3, vec![1.25, 2.0, 2.75]);

    let (_, b1) = informed_starts(&s, 1);
    assert_eq!(b1, vec![2.0]);
}

#[test]
fn efficiency_grows_with_cell_count_along_reference_optima() {
    // More cells never hurt: the reference optima must be strictly
    // increasing in N for both topologies.
    for w in SS_OPTIMA.windows(2) {
        assert!(w[0].0 < w[1].0);
    }
    for w in MJ_OPTIMA.windows(2) {
        assert!(w[0].0 < w[1].0);
    }
}
