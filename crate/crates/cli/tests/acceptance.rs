//! Acceptance suite: one integration test per release criterion. Each test
//! prints a single verdict line (visible with `--nocapture`); the test
//! name itself is the pass/fail line in `cargo test` output.
//!
//! Expected values marked "oracle" were computed with independent
//! arithmetic (term-by-term sums, bisection on the raw polynomial) before
//! the implementation existed and are frozen here.

use lssa_cli::validate::run_validation;
use lssa_core::experiments::{
    compare_to_reference, prescribed_extension_sweep, reference, static_load_sweep,
};
use lssa_core::fitting::{fit_hyperelastic, fit_polynomial, rank_models, Polynomial};
use lssa_core::force::{calibrate_area_profile, calibrate_effective_area, AreaProfile, LssaModel};
use lssa_core::geometry::ActuatorGeometry;
use lssa_core::material::{HyperelasticParams, ModelFamily, UniaxialSample};
use lssa_core::units::mass_to_load;
use std::process::Command;

fn stiffness() -> Polynomial {
    Polynomial::cubic(4.1481e-4, 1.2865e-2, 2.0789, -0.2246)
}

fn anchored_model() -> LssaModel {
    let area = calibrate_effective_area(125.0e3, 0.0, 112.0, &stiffness()).unwrap();
    LssaModel::calibrated(stiffness(), AreaProfile::constant(area).unwrap()).unwrap()
}

/// Bisection oracle independent of the model's own solver.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-10 {
            return mid;
        }
        let fm = f(mid);
        if fm * flo > 0.0 {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Criterion 1: differentiating the stored stiffness cubic reproduces the
/// published rate coefficients to 1e-7 absolute each.
#[test]
fn criterion_1_derivative_consistency() {
    let rate = stiffness().differentiate();
    let expected = [2.0789, 2.5730e-2, 1.24443e-3];
    for (k, (&c, e)) in rate.coefficients().iter().zip(expected).enumerate() {
        assert!(
            (c - e).abs() <= 1e-7,
            "rate coefficient y^{k}: {c} vs {e}"
        );
    }
    println!("criterion 1 PASS: rate coefficients match to <= 1e-7");
}

/// Criterion 2: the blocked-force anchor calibrates to 8.9420e-4 m² and
/// reproduces 112 N by construction.
#[test]
fn criterion_2_anchor_calibration() {
    let area = calibrate_effective_area(125.0e3, 0.0, 112.0, &stiffness()).unwrap();
    // independent arithmetic oracle: (112 + F_K(0)) / P
    let oracle = (112.0 + (-0.2246)) / 125.0e3;
    assert!((area - oracle).abs() < 1e-15, "{area} vs oracle {oracle}");
    assert!((area - 8.9420e-4).abs() < 1e-7, "{area}");
    let net = anchored_model().net_force(125.0e3, 0.0).unwrap();
    assert!((net - 112.0).abs() < 1e-9, "{net}");
    println!("criterion 2 PASS: area {area:.6e} m^2, anchor force {net} N");
}

/// Criterion 3: zero-load free extension at 125 kPa lands on the bisection
/// oracle near 36.26 mm; the ~10% gap to the observed 40 mm stroke is
/// asserted and surfaced in the validate report.
#[test]
fn criterion_3_zero_force_extension() {
    let model = anchored_model();
    let solution = model.free_extension(125.0e3, 0.0).unwrap();
    assert!(solution.is_equilibrium());
    let y = solution.displacement;

    let target = 112.0 - 0.2246; // P * A_eff of the anchor calibration
    let oracle = bisect(|v| stiffness().evaluate(v) - target, 0.0, 40.0);
    assert!((y - oracle).abs() < 1e-4, "{y} vs oracle {oracle}");
    assert!((y - 36.26).abs() < 0.05, "{y}");

    let observed = reference::OBSERVED_FULL_EXTENSION_MM;
    let gap = (observed - y) / observed;
    assert!(gap <= 0.10, "gap {gap}");
    let report = run_validation().report;
    assert!(
        report.contains("under-predicts the observed ~40 mm stroke"),
        "gap must be reported, not hidden"
    );
    println!(
        "criterion 3 PASS: free extension {y:.4} mm (oracle {oracle:.4}), gap to observed {:.2}%",
        gap * 100.0
    );
}

/// Criterion 4: calibrating the five reference points and sweeping forward
/// reproduces the measured forces exactly, matches the per-point area
/// oracle, and raises the non-monotonicity flag.
#[test]
fn criterion_4_area_profile_round_trip() {
    let dataset = reference::extension_125kpa();
    let profile = calibrate_area_profile(&dataset.points, &stiffness()).unwrap();

    let oracle = [8.9420e-4, 7.5413e-4, 7.2654e-4, 8.3137e-4, 1.0405e-3];
    for ((y, a), e) in profile.points().iter().zip(oracle) {
        assert!((a - e).abs() < 1e-7, "area at {y} mm: {a} vs {e}");
    }
    assert!(!profile.is_non_increasing(), "non-monotonicity flag must trip");

    let model = LssaModel::calibrated(stiffness(), profile).unwrap();
    let grid: Vec<f64> = dataset.points.iter().map(|p| p.displacement).collect();
    let sweep = prescribed_extension_sweep(&model, 125.0e3, &grid).unwrap();
    for (p, r) in sweep.iter().zip(&dataset.points) {
        assert!((p.force - r.force).abs() < 1e-9);
    }
    let metrics = compare_to_reference(&sweep, &dataset).unwrap();
    assert!(metrics.rmse < 1e-6, "rmse {}", metrics.rmse);
    println!(
        "criterion 4 PASS: rmse {:.3e} N, non-monotone profile flagged",
        metrics.rmse
    );
}

/// Criterion 5: 50 noiseless samples from the fitted TPU constants refit
/// to < 1e-8 relative error and rank the generating family first.
#[test]
fn criterion_5_hyperelastic_round_trip() {
    let truth = HyperelasticParams::tpu85();
    let samples: Vec<UniaxialSample> = (0..50)
        .map(|k| {
            let stretch = 1.05 + (7.6 - 1.05) * k as f64 / 49.0;
            UniaxialSample::new(stretch, truth.nominal_stress(stretch).unwrap()).unwrap()
        })
        .collect();
    let (fitted, _) = fit_hyperelastic(&samples, ModelFamily::MooneyRivlin5).unwrap();
    let max_rel = fitted
        .constants()
        .iter()
        .zip(truth.constants())
        .map(|(f, t)| ((f - t) / t).abs())
        .fold(0.0f64, f64::max);
    assert!(max_rel < 1e-8, "max relative error {max_rel}");

    let ranked = rank_models(
        &samples,
        &[
            ModelFamily::NeoHookean,
            ModelFamily::MooneyRivlin2,
            ModelFamily::MooneyRivlin5,
        ],
    )
    .unwrap();
    assert_eq!(ranked[0].0, ModelFamily::MooneyRivlin5);
    println!("criterion 5 PASS: max rel error {max_rel:.3e}, mr5 ranked first");
}

/// Criterion 6: 41 noiseless stiffness samples refit to < 1e-9 absolute
/// coefficient error.
#[test]
fn criterion_6_stiffness_round_trip() {
    let truth = stiffness();
    let samples: Vec<(f64, f64)> = (0..=40)
        .map(|i| (i as f64, truth.evaluate(i as f64)))
        .collect();
    let (fitted, _) = fit_polynomial(&samples, 3).unwrap();
    let max_abs = fitted
        .coefficients()
        .iter()
        .zip(truth.coefficients())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(max_abs < 1e-9, "max absolute error {max_abs}");
    println!("criterion 6 PASS: max abs coefficient error {max_abs:.3e}");
}

/// Criterion 7: static-load properties. Dead bands strictly increase
/// across the four loads, curves are pointwise ordered, the 200 kPa
/// no-load prediction sits within 15% of the observed 160 N, and the
/// 3.5 kg dead-band gap is reported rather than asserted.
#[test]
fn criterion_7_static_load_properties() {
    let model = anchored_model();
    let g = 9.81;
    let masses = [0.0, 1.0, 2.0, 3.5];

    let thresholds: Vec<f64> = masses
        .iter()
        .map(|&kg| model.dead_band_pressure(mass_to_load(kg, g), 0.0).unwrap())
        .collect();
    assert!(
        thresholds.windows(2).all(|w| w[1] > w[0]),
        "{thresholds:?}"
    );
    // frozen oracle: (m g + F_K(0)) / A for 1, 2, 3.5 kg
    let oracle = [0.0, 10719.487472198713, 21690.148279496207, 38146.13949044244];
    for (t, e) in thresholds.iter().zip(oracle) {
        assert!((t - e).abs() < 1e-6, "{t} vs {e}");
    }

    let grid: Vec<f64> = (0..=20).map(|k| k as f64 * 10.0e3).collect();
    let curves: Vec<Vec<f64>> = masses
        .iter()
        .map(|&kg| {
            static_load_sweep(&model, mass_to_load(kg, g), &grid, 0.0)
                .unwrap()
                .into_iter()
                .map(|p| p.force)
                .collect()
        })
        .collect();
    assert!(curves
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(light, heavy)| heavy <= light)));

    let no_load_200 = curves[0].last().copied().unwrap();
    assert!((no_load_200 - 179.06524).abs() < 1e-6, "{no_load_200}");
    let observed = reference::static_load_200kpa().cases[0].force;
    let deviation = (no_load_200 - observed).abs() / observed;
    assert!(deviation < 0.15, "deviation {deviation}");

    // the 38 kPa vs 60-70 kPa dead-band mismatch is reported, not asserted
    let report = run_validation().report;
    assert!(report.contains("known model-experiment gap, not asserted"));
    println!(
        "criterion 7 PASS: dead bands {:.2}/{:.2}/{:.2}/{:.2} kPa, 200 kPa deviation {:.2}%",
        thresholds[0] / 1.0e3,
        thresholds[1] / 1.0e3,
        thresholds[2] / 1.0e3,
        thresholds[3] / 1.0e3,
        deviation * 100.0
    );
}

/// Criterion 8: the numerical invariant suite at its stated tolerances.
#[test]
fn criterion_8_numerical_invariants() {
    // stress-energy finite-difference agreement, 1e-6 relative
    let tpu = HyperelasticParams::tpu85();
    for k in 0..=100 {
        let stretch = 1.01 + (7.6 - 1.01) * k as f64 / 100.0;
        let h = 1e-6 * stretch;
        let fd = (tpu.strain_energy(stretch + h).unwrap()
            - tpu.strain_energy(stretch - h).unwrap())
            / (2.0 * h);
        let sigma = tpu.nominal_stress(stretch).unwrap();
        let rel = (sigma - fd).abs() / sigma.abs().max(fd.abs());
        assert!(rel < 1e-6, "λ = {stretch}: rel {rel}");
    }

    // exact zeros at the undeformed state
    for &family in ModelFamily::all() {
        let constants = (0..family.arity()).map(|k| 0.9 - 0.4 * k as f64).collect();
        let p = HyperelasticParams::new(family, constants).unwrap();
        assert_eq!(p.strain_energy(1.0).unwrap(), 0.0);
        assert_eq!(p.nominal_stress(1.0).unwrap(), 0.0);
    }

    // wall-pair area identity, 1e-12 relative
    let g = ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, 0.0, 1).unwrap();
    for k in 0..=15 {
        let theta = 1.5 * k as f64 / 15.0;
        let lhs = g.external_wall_area(theta).unwrap() - g.internal_wall_area(theta).unwrap();
        let rhs = 2.0 * std::f64::consts::PI
            * g.fold_length
            * theta.cos()
            * (g.outer_wall_radius - g.inner_wall_radius);
        assert!((lhs - rhs).abs() / rhs.abs() < 1e-12);
    }

    // affinity of the net force in pressure, 1e-12 relative
    let model = anchored_model();
    for k in 0..=10 {
        let y = 4.0 * k as f64;
        let area = model.effective_area(y).unwrap();
        let slope =
            (model.net_force(200.0e3, y).unwrap() - model.net_force(100.0e3, y).unwrap()) / 100.0e3;
        assert!((slope - area).abs() / area < 1e-12);
    }

    // free-extension / net-force consistency, 1e-6 N
    for (pressure, load) in [(125.0e3, 0.0), (125.0e3, 20.0), (200.0e3, 50.0), (80.0e3, 10.0)] {
        let sol = model.free_extension(pressure, load).unwrap();
        assert!(sol.is_equilibrium());
        let residual = model.net_force(pressure, sol.displacement).unwrap() - load;
        assert!(residual.abs() < 1e-6, "residual {residual}");
    }
    println!("criterion 8 PASS: invariant suite within stated tolerances");
}

/// Criterion 9: `lssa validate` runs the embedded suite end to end, prints
/// reference/computed/tolerance verdicts, exits 0, and is deterministic.
#[test]
fn criterion_9_validate_cli() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lssa"))
            .arg("validate")
            .output()
            .expect("binary runs")
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(text.contains("[PASS]"));
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("reference"), "prints the reference values");
    assert!(text.contains("computed"), "prints the computed values");
    assert!(text.contains("<="), "prints the tolerance verdicts");
    assert!(text.contains(", 0 failed =="));

    let second = run();
    assert_eq!(first.stdout, second.stdout, "validate must be deterministic");
    println!("criterion 9 PASS: validate exits 0 and is byte-stable");
}
