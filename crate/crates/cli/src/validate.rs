//! Embedded-reference validation suite behind `lssa validate`.
//!
//! Replays the toolkit against the prototype actuator's reference
//! measurements and its internal consistency oracles. Every line prints
//! the reference value, the computed value, and a tolerance verdict;
//! model-versus-experiment gaps that are expected (the constant-area
//! simplification, the unknown rig displacement) are printed as notes with
//! generous asserted bounds rather than hidden.
//!
//! The output is deterministic: two consecutive runs are byte-identical.

use lssa_core::experiments::{
    compare_to_reference, prescribed_extension_sweep, reference, static_load_sweep,
};
use lssa_core::fitting::{fit_hyperelastic, fit_polynomial, rank_models};
use lssa_core::force::{calibrate_area_profile, calibrate_effective_area, AreaProfile, LssaModel};
use lssa_core::geometry::{ActuatorGeometry, FoldKinematics};
use lssa_core::material::{HyperelasticParams, ModelFamily, UniaxialSample};
use lssa_core::units::{mass_to_load, pa_to_kpa, STANDARD_GRAVITY};
use std::fmt::Write as _;

/// Outcome of a validation run: the printable report and the verdict.
pub struct ValidationOutcome {
    pub report: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
}

struct Validator {
    report: String,
    checks: usize,
    failures: usize,
}

impl Validator {
    fn new() -> Self {
        Self {
            report: String::new(),
            checks: 0,
            failures: 0,
        }
    }

    fn section(&mut self, title: &str) {
        let _ = writeln!(self.report, "\n-- {title} --");
    }

    fn record(&mut self, pass: bool, line: String) {
        self.checks += 1;
        if !pass {
            self.failures += 1;
        }
        let verdict = if pass { "PASS" } else { "FAIL" };
        let _ = writeln!(self.report, "[{verdict}] {line}");
    }

    /// |computed - reference| <= tol
    fn check_abs(&mut self, name: &str, reference: f64, computed: f64, tol: f64) {
        let err = (computed - reference).abs();
        self.record(
            err <= tol,
            format!(
                "{name:<44} reference {reference:>14.7e}  computed {computed:>14.7e}  |err| {err:>10.3e} <= {tol:e}"
            ),
        );
    }

    /// |computed - reference| / |reference| <= tol
    fn check_rel(&mut self, name: &str, reference: f64, computed: f64, tol: f64) {
        let err = (computed - reference).abs() / reference.abs();
        self.record(
            err <= tol,
            format!(
                "{name:<44} reference {reference:>14.7e}  computed {computed:>14.7e}  rel err {err:>10.3e} <= {tol:e}"
            ),
        );
    }

    /// computed <= threshold (error magnitudes against an implicit zero)
    fn check_max(&mut self, name: &str, computed: f64, threshold: f64) {
        self.record(
            computed <= threshold,
            format!("{name:<44} reference   0.0            computed {computed:>14.7e}  <= {threshold:e}"),
        );
    }

    fn check_flag(&mut self, name: &str, pass: bool, detail: &str) {
        self.record(pass, format!("{name:<44} {detail}"));
    }

    fn note(&mut self, text: &str) {
        let _ = writeln!(self.report, "[note] {text}");
    }
}

fn anchored_model() -> LssaModel {
    let stiffness = reference::prototype_stiffness();
    let area = calibrate_effective_area(
        reference::EXTENSION_PRESSURE_PA,
        0.0,
        112.0,
        &stiffness,
    )
    .expect("anchor calibration");
    LssaModel::calibrated(stiffness, AreaProfile::constant(area).unwrap()).unwrap()
}

/// Plain bisection on `f` over `[lo, hi]`, independent of the model's own
/// solver; used as the oracle for equilibrium checks.
fn bisect_oracle(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-9 {
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

/// Run the whole embedded-reference suite.
pub fn run_validation() -> ValidationOutcome {
    let mut v = Validator::new();
    let _ = writeln!(v.report, "== lssa validate: embedded reference suite ==");

    let stiffness = reference::prototype_stiffness();
    let rate = stiffness.differentiate();

    // -- 1. differentiating the stored stiffness cubic reproduces the
    //       published rate coefficients --
    v.section("axial stiffness rate from the stored cubic");
    let expected_rate = [2.0789, 2.5730e-2, 1.24443e-3];
    for (k, &e) in expected_rate.iter().enumerate() {
        v.check_abs(
            &format!("rate coefficient of y^{k} (N/mm^{})", k + 1),
            e,
            rate.coefficients()[k],
            1e-7,
        );
    }

    // -- 2. blocked-force anchor calibration --
    v.section("blocked-force anchor (125 kPa, y = 0, 112 N)");
    let area = calibrate_effective_area(125.0e3, 0.0, 112.0, &stiffness).unwrap();
    // arithmetic oracle: (112 + F_K(0)) / P evaluated from the raw constants
    let area_oracle = (112.0 + (-0.2246)) / 125.0e3;
    v.check_abs("calibrated effective area (m^2)", 8.9420e-4, area, 1e-7);
    v.check_abs(
        "calibrated area vs arithmetic oracle (m^2)",
        area_oracle,
        area,
        1e-12,
    );
    let anchored = anchored_model();
    v.check_abs(
        "net force at the anchor point (N)",
        112.0,
        anchored.net_force(125.0e3, 0.0).unwrap(),
        1e-9,
    );

    // -- 3. zero-load free extension --
    v.section("free extension at 125 kPa, constant-area model");
    let target = 125.0e3 * area;
    let oracle_root = bisect_oracle(|y| stiffness.evaluate(y) - target, 0.0, 40.0);
    let solution = anchored.free_extension(125.0e3, 0.0).unwrap();
    v.check_flag(
        "solver reports an equilibrium",
        solution.is_equilibrium(),
        &format!("status {:?}", solution.status),
    );
    v.check_abs(
        "free extension vs bisection oracle (mm)",
        oracle_root,
        solution.displacement,
        1e-4,
    );
    v.check_abs(
        "free extension (mm)",
        36.26,
        solution.displacement,
        0.05,
    );
    v.check_rel(
        "free extension vs observed full extension (mm)",
        reference::OBSERVED_FULL_EXTENSION_MM,
        solution.displacement,
        0.10,
    );
    v.note(&format!(
        "constant-area model under-predicts the observed ~{:.0} mm stroke by {:.2}%: expected gap of the fixed-area simplification",
        reference::OBSERVED_FULL_EXTENSION_MM,
        (reference::OBSERVED_FULL_EXTENSION_MM - solution.displacement)
            / reference::OBSERVED_FULL_EXTENSION_MM
            * 100.0
    ));

    // -- 4. area-profile round trip through the reference curve --
    v.section("area profile calibrated from the five reference points");
    let dataset = reference::extension_125kpa();
    let profile = calibrate_area_profile(&dataset.points, &stiffness).unwrap();
    let profile_oracle = [8.9420e-4, 7.5413e-4, 7.2654e-4, 8.3137e-4, 1.0405e-3];
    for ((y, a), e) in profile.points().iter().zip(profile_oracle) {
        v.check_abs(&format!("effective area at y = {y} mm (m^2)"), e, *a, 1e-7);
    }
    v.check_flag(
        "non-monotone profile flag raised",
        !profile.is_non_increasing(),
        "areas dip mid-stroke and rise again, conflicting with monotone unfolding",
    );
    let profiled = LssaModel::calibrated(stiffness.clone(), profile).unwrap();
    let grid: Vec<f64> = dataset.points.iter().map(|p| p.displacement).collect();
    let sweep = prescribed_extension_sweep(&profiled, 125.0e3, &grid).unwrap();
    let metrics = compare_to_reference(&sweep, &dataset).unwrap();
    v.check_max("forward-sweep rmse vs reference (N)", metrics.rmse, 1e-6);

    // -- 5. hyperelastic refit round trip --
    v.section("hyperelastic fit round trip (50 noiseless samples)");
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
    v.check_max("max relative constant error", max_rel, 1e-8);
    let ranked = rank_models(
        &samples,
        &[
            ModelFamily::NeoHookean,
            ModelFamily::MooneyRivlin2,
            ModelFamily::MooneyRivlin5,
        ],
    )
    .unwrap();
    v.check_flag(
        "five-parameter family ranked first",
        ranked[0].0 == ModelFamily::MooneyRivlin5,
        &format!(
            "ranking: {} (r2 {:.6}), {} (r2 {:.6}), {} (r2 {:.6})",
            ranked[0].0, ranked[0].1.r_squared, ranked[1].0, ranked[1].1.r_squared, ranked[2].0,
            ranked[2].1.r_squared
        ),
    );

    // -- 6. stiffness refit round trip --
    v.section("stiffness fit round trip (41 noiseless samples)");
    let poly_samples: Vec<(f64, f64)> = (0..=40)
        .map(|i| (i as f64, stiffness.evaluate(i as f64)))
        .collect();
    let (refit, _) = fit_polynomial(&poly_samples, 3).unwrap();
    let max_abs = refit
        .coefficients()
        .iter()
        .zip(stiffness.coefficients())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    v.check_max("max absolute coefficient error", max_abs, 1e-9);

    // -- 7. static-load behavior --
    v.section("static-load behavior");
    let static_ref = reference::static_load_200kpa();
    let masses = [0.0, 1.0, 2.0, 3.5];
    let thresholds: Vec<f64> = masses
        .iter()
        .map(|&kg| {
            anchored
                .dead_band_pressure(mass_to_load(kg, STANDARD_GRAVITY), 0.0)
                .unwrap()
        })
        .collect();
    v.check_flag(
        "dead-band pressure strictly increases with load",
        thresholds.windows(2).all(|w| w[1] > w[0]),
        &format!(
            "thresholds {:.2} / {:.2} / {:.2} / {:.2} kPa for 0 / 1 / 2 / 3.5 kg",
            pa_to_kpa(thresholds[0]),
            pa_to_kpa(thresholds[1]),
            pa_to_kpa(thresholds[2]),
            pa_to_kpa(thresholds[3])
        ),
    );
    let p_grid: Vec<f64> = (0..=20).map(|k| k as f64 * 10.0e3).collect();
    let curves: Vec<Vec<f64>> = masses
        .iter()
        .map(|&kg| {
            static_load_sweep(&anchored, mass_to_load(kg, STANDARD_GRAVITY), &p_grid, 0.0)
                .unwrap()
                .into_iter()
                .map(|p| p.force)
                .collect()
        })
        .collect();
    let ordered = curves
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(light, heavy)| heavy <= light));
    v.check_flag(
        "force-pressure curves pointwise ordered by load",
        ordered,
        "heavier loads never exceed lighter ones anywhere on the 0-200 kPa grid",
    );
    let no_load_endpoint = curves[0].last().copied().unwrap();
    let reference_endpoint = static_ref.cases[0].force;
    v.check_rel(
        "no-load force at 200 kPa (N)",
        reference_endpoint,
        no_load_endpoint,
        0.15,
    );
    v.note(&format!(
        "constant-area model over-predicts the 200 kPa no-load force by {:.2}%: reported, within the 15% bound",
        (no_load_endpoint - reference_endpoint) / reference_endpoint * 100.0
    ));
    let heavy_threshold_kpa = pa_to_kpa(thresholds[3]);
    v.note(&format!(
        "3.5 kg dead band predicted at {:.2} kPa vs observed {:.0}-{:.0} kPa: known model-experiment gap, not asserted",
        heavy_threshold_kpa, static_ref.dead_band_onset_kpa.0, static_ref.dead_band_onset_kpa.1
    ));

    // -- 8. numerical invariant suite --
    v.section("numerical invariants");
    let mut worst_energy = 0.0f64;
    let mut worst_stress = 0.0f64;
    for &family in ModelFamily::all() {
        let constants = (0..family.arity()).map(|k| 0.7 - 0.3 * k as f64).collect();
        let p = HyperelasticParams::new(family, constants).unwrap();
        worst_energy = worst_energy.max(p.strain_energy(1.0).unwrap().abs());
        worst_stress = worst_stress.max(p.nominal_stress(1.0).unwrap().abs());
    }
    v.check_max("W(1) across families (exact zero, MPa)", worst_energy, 0.0);
    v.check_max("sigma(1) across families (exact zero, MPa)", worst_stress, 0.0);

    let mut worst_fd = 0.0f64;
    for params in [truth.clone(), HyperelasticParams::new(ModelFamily::NeoHookean, vec![1.0]).unwrap()] {
        for k in 0..=100 {
            let stretch = 1.01 + (7.6 - 1.01) * k as f64 / 100.0;
            let h = 1e-6 * stretch;
            let fd = (params.strain_energy(stretch + h).unwrap()
                - params.strain_energy(stretch - h).unwrap())
                / (2.0 * h);
            let sigma = params.nominal_stress(stretch).unwrap();
            worst_fd = worst_fd.max((sigma - fd).abs() / sigma.abs().max(fd.abs()));
        }
    }
    v.check_max("stress vs energy finite difference (rel)", worst_fd, 1e-6);

    let g = ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, 0.0, 1).unwrap();
    let mut worst_identity = 0.0f64;
    for k in 0..=15 {
        let theta = 1.5 * k as f64 / 15.0;
        let lhs = g.external_wall_area(theta).unwrap() - g.internal_wall_area(theta).unwrap();
        let rhs = 2.0 * std::f64::consts::PI
            * g.fold_length
            * theta.cos()
            * (g.outer_wall_radius - g.inner_wall_radius);
        worst_identity = worst_identity.max((lhs - rhs).abs() / rhs.abs());
    }
    v.check_max(
        "wall-pair area identity A2-A3 (rel)",
        worst_identity,
        1e-12,
    );

    let mut worst_affine = 0.0f64;
    for k in 0..=10 {
        let y = 4.0 * k as f64;
        let a = anchored.effective_area(y).unwrap();
        let slope = (anchored.net_force(200.0e3, y).unwrap()
            - anchored.net_force(100.0e3, y).unwrap())
            / 100.0e3;
        worst_affine = worst_affine.max((slope - a).abs() / a);
    }
    v.check_max("net-force affinity in pressure (rel)", worst_affine, 1e-12);

    let mut worst_residual = 0.0f64;
    for (pressure, load) in [(125.0e3, 0.0), (125.0e3, 20.0), (200.0e3, 50.0), (80.0e3, 10.0)] {
        let sol = anchored.free_extension(pressure, load).unwrap();
        if sol.is_equilibrium() {
            let residual = anchored.net_force(pressure, sol.displacement).unwrap() - load;
            worst_residual = worst_residual.max(residual.abs());
        }
    }
    v.check_max(
        "free-extension force residual (N)",
        worst_residual,
        1e-6,
    );

    // kinematics example beyond the constant-area path
    let unfolding = LssaModel::new(g, FoldKinematics::LinearUnfold, stiffness.clone()).unwrap();
    let mut non_increasing = true;
    let mut prev = f64::INFINITY;
    for k in 0..=40 {
        let a = unfolding.effective_area(k as f64).unwrap();
        non_increasing &= a <= prev + 1e-18;
        prev = a;
    }
    v.check_flag(
        "unfolding effective area non-increasing",
        non_increasing,
        "linear unfolding only ever sheds wall projection",
    );

    let _ = writeln!(
        v.report,
        "\n== summary: {} checks, {} passed, {} failed ==",
        v.checks,
        v.checks - v.failures,
        v.failures
    );
    ValidationOutcome {
        passed: v.failures == 0,
        checks: v.checks,
        failures: v.failures,
        report: v.report,
    }
}
