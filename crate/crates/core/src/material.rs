//! Incompressible hyperelastic strain-energy models for printed TPU.
//!
//! All supported families are polynomial in the invariant shifts
//! `(I1 - 3)` and `(I2 - 3)` and therefore linear in their material
//! constants, which is what makes the fitting module a plain linear
//! least-squares problem. The uniaxial reduction used throughout assumes
//! an incompressible material, so the principal stretches under a uniaxial
//! stretch `λ` are `(λ, λ^-1/2, λ^-1/2)` and
//!
//! ```text
//! I1 = λ² + 2/λ        I2 = 2λ + 1/λ²
//! σ_eng = 2 (λ - λ⁻²) (∂W/∂I1 + λ⁻¹ ∂W/∂I2)
//! ```
//!
//! Nominal (engineering) stress is used everywhere: tensile-test crosshead
//! data is nominal by default.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Strain-energy model families supported by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelFamily {
    /// `W = C10 (I1 - 3)`
    NeoHookean,
    /// `W = C10 (I1 - 3) + C01 (I2 - 3)`
    MooneyRivlin2,
    /// `W = C10 (I1 - 3) + C01 (I2 - 3) + C11 (I1 - 3)(I2 - 3)`
    MooneyRivlin3,
    /// `W = C10 (I1 - 3) + C01 (I2 - 3) + C20 (I1 - 3)² + C11 (I1 - 3)(I2 - 3) + C02 (I2 - 3)²`
    MooneyRivlin5,
    /// `W = C10 (I1 - 3) + C20 (I1 - 3)² + C30 (I1 - 3)³`
    Yeoh3,
}

impl ModelFamily {
    /// Number of material constants the family carries.
    pub fn arity(self) -> usize {
        match self {
            ModelFamily::NeoHookean => 1,
            ModelFamily::MooneyRivlin2 => 2,
            ModelFamily::MooneyRivlin3 => 3,
            ModelFamily::MooneyRivlin5 => 5,
            ModelFamily::Yeoh3 => 3,
        }
    }

    /// Conventional names of the constants, in storage order.
    pub fn constant_names(self) -> &'static [&'static str] {
        match self {
            ModelFamily::NeoHookean => &["C10"],
            ModelFamily::MooneyRivlin2 => &["C10", "C01"],
            ModelFamily::MooneyRivlin3 => &["C10", "C01", "C11"],
            ModelFamily::MooneyRivlin5 => &["C10", "C01", "C20", "C11", "C02"],
            ModelFamily::Yeoh3 => &["C10", "C20", "C30"],
        }
    }

    pub fn all() -> &'static [ModelFamily] {
        &[
            ModelFamily::NeoHookean,
            ModelFamily::MooneyRivlin2,
            ModelFamily::MooneyRivlin3,
            ModelFamily::MooneyRivlin5,
            ModelFamily::Yeoh3,
        ]
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelFamily::NeoHookean => "nh",
            ModelFamily::MooneyRivlin2 => "mr2",
            ModelFamily::MooneyRivlin3 => "mr3",
            ModelFamily::MooneyRivlin5 => "mr5",
            ModelFamily::Yeoh3 => "yeoh3",
        };
        f.write_str(s)
    }
}

impl FromStr for ModelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nh" | "neo-hookean" => Ok(ModelFamily::NeoHookean),
            "mr2" => Ok(ModelFamily::MooneyRivlin2),
            "mr3" => Ok(ModelFamily::MooneyRivlin3),
            "mr5" => Ok(ModelFamily::MooneyRivlin5),
            "yeoh3" | "yeoh" => Ok(ModelFamily::Yeoh3),
            other => Err(Error::Usage(format!(
                "unknown material model `{other}` (expected nh, mr2, mr3, mr5 or yeoh3)"
            ))),
        }
    }
}

/// First and second strain invariants of an incompressible uniaxial
/// stretch: `I1 = λ² + 2/λ`, `I2 = 2λ + 1/λ²`.
///
/// Both are ≥ 3, with equality exactly at the undeformed state `λ = 1`.
pub fn strain_invariants(stretch: f64) -> Result<(f64, f64)> {
    if !stretch.is_finite() || stretch <= 0.0 {
        return Err(Error::Domain(format!(
            "stretch must be finite and positive, got {stretch}"
        )));
    }
    let i1 = stretch * stretch + 2.0 / stretch;
    let i2 = 2.0 * stretch + 1.0 / (stretch * stretch);
    Ok((i1, i2))
}

/// One point of a uniaxial tensile test: stretch `λ = 1 + engineering
/// strain` and nominal stress in MPa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniaxialSample {
    pub stretch: f64,
    /// Nominal (engineering) stress, MPa.
    pub stress: f64,
}

impl UniaxialSample {
    pub fn new(stretch: f64, stress: f64) -> Result<Self> {
        if !stretch.is_finite() || stretch <= 0.0 {
            return Err(Error::Domain(format!(
                "sample stretch must be finite and positive, got {stretch}"
            )));
        }
        if !stress.is_finite() {
            return Err(Error::Domain(format!(
                "sample stress must be finite, got {stress}"
            )));
        }
        Ok(Self { stretch, stress })
    }

    /// Build a sample from engineering strain (`λ = 1 + strain`).
    pub fn from_engineering(strain: f64, stress: f64) -> Result<Self> {
        Self::new(1.0 + strain, stress)
    }
}

/// Fixed step for the central-difference stability sweep, in stretch.
pub const STABILITY_FD_STEP: f64 = 1e-5;

/// Outcome of a Drucker-stability sweep: `stable` iff `dσ/dλ > 0` at every
/// grid point, otherwise `first_violation` holds the first offending stretch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    pub first_violation: Option<f64>,
}

/// A strain-energy model family together with its fitted constants.
///
/// Only incompressible materials are representable: the incompressibility
/// parameter `d1` is pinned to zero and construction rejects anything else.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperelasticParams {
    family: ModelFamily,
    constants: Vec<f64>,
    d1: f64,
}

impl HyperelasticParams {
    /// Build an incompressible parameter set (`d1 = 0`). The number of
    /// constants must match the family arity and all must be finite.
    pub fn new(family: ModelFamily, constants: Vec<f64>) -> Result<Self> {
        Self::with_incompressibility(family, constants, 0.0)
    }

    /// Like [`HyperelasticParams::new`] but with an explicit `d1`, which
    /// must still be zero; compressible extensions are rejected.
    pub fn with_incompressibility(
        family: ModelFamily,
        constants: Vec<f64>,
        d1: f64,
    ) -> Result<Self> {
        if constants.len() != family.arity() {
            return Err(Error::Usage(format!(
                "{} expects {} constants, got {}",
                family,
                family.arity(),
                constants.len()
            )));
        }
        if let Some(bad) = constants.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain(format!(
                "material constants must be finite, got {bad}"
            )));
        }
        if d1 != 0.0 {
            return Err(Error::Domain(format!(
                "only incompressible materials are supported (d1 must be 0, got {d1})"
            )));
        }
        Ok(Self {
            family,
            constants,
            d1,
        })
    }

    /// Five-parameter Mooney-Rivlin constants fitted for FDM-printed
    /// TPU 85A (MPa), the reference actuator material.
    pub fn tpu85() -> Self {
        Self::new(
            ModelFamily::MooneyRivlin5,
            vec![-3.1992, 6.977, 0.0281, -0.074972, 0.92155],
        )
        .expect("TPU 85A constants are valid")
    }

    pub fn family(&self) -> ModelFamily {
        self.family
    }

    /// Material constants in the order of [`ModelFamily::constant_names`], MPa.
    pub fn constants(&self) -> &[f64] {
        &self.constants
    }

    /// Incompressibility parameter, MPa⁻¹. Always zero.
    pub fn d1(&self) -> f64 {
        self.d1
    }

    /// `(∂W/∂I1, ∂W/∂I2)` at the given invariant shifts `e1 = I1 - 3`,
    /// `e2 = I2 - 3`.
    fn energy_derivatives(&self, e1: f64, e2: f64) -> (f64, f64) {
        let c = &self.constants;
        match self.family {
            ModelFamily::NeoHookean => (c[0], 0.0),
            ModelFamily::MooneyRivlin2 => (c[0], c[1]),
            ModelFamily::MooneyRivlin3 => (c[0] + c[2] * e2, c[1] + c[2] * e1),
            ModelFamily::MooneyRivlin5 => (
                c[0] + 2.0 * c[2] * e1 + c[3] * e2,
                c[1] + c[3] * e1 + 2.0 * c[4] * e2,
            ),
            ModelFamily::Yeoh3 => (c[0] + 2.0 * c[1] * e1 + 3.0 * c[2] * e1 * e1, 0.0),
        }
    }

    /// Strain-energy density at a uniaxial stretch, MPa.
    ///
    /// Exactly zero at `λ = 1` for every family: the invariants evaluate to
    /// 3.0 without rounding there, so every term is annihilated.
    pub fn strain_energy(&self, stretch: f64) -> Result<f64> {
        let (i1, i2) = strain_invariants(stretch)?;
        let (e1, e2) = (i1 - 3.0, i2 - 3.0);
        let c = &self.constants;
        Ok(match self.family {
            ModelFamily::NeoHookean => c[0] * e1,
            ModelFamily::MooneyRivlin2 => c[0] * e1 + c[1] * e2,
            ModelFamily::MooneyRivlin3 => c[0] * e1 + c[1] * e2 + c[2] * e1 * e2,
            ModelFamily::MooneyRivlin5 => {
                c[0] * e1 + c[1] * e2 + c[2] * e1 * e1 + c[3] * e1 * e2 + c[4] * e2 * e2
            }
            ModelFamily::Yeoh3 => c[0] * e1 + c[1] * e1 * e1 + c[2] * e1 * e1 * e1,
        })
    }

    /// Nominal (engineering) uniaxial stress at a stretch, MPa:
    /// `σ = 2 (λ - λ⁻²) (∂W/∂I1 + λ⁻¹ ∂W/∂I2)`.
    ///
    /// This equals `dW/dλ` along the incompressible uniaxial path, which the
    /// tests exploit as a finite-difference oracle.
    pub fn nominal_stress(&self, stretch: f64) -> Result<f64> {
        let (i1, i2) = strain_invariants(stretch)?;
        let (e1, e2) = (i1 - 3.0, i2 - 3.0);
        let (dw1, dw2) = self.energy_derivatives(e1, e2);
        Ok(2.0 * (stretch - 1.0 / (stretch * stretch)) * (dw1 + dw2 / stretch))
    }

    /// Small-strain shear and Young's moduli `(μ0, E0)`, MPa.
    ///
    /// `μ0 = 2 (C10 + C01)` for the Mooney-Rivlin family and `2 C10` for
    /// Neo-Hookean/Yeoh; `E0 = 3 μ0` under incompressibility.
    pub fn small_strain_moduli(&self) -> (f64, f64) {
        let c = &self.constants;
        let mu0 = match self.family {
            ModelFamily::NeoHookean | ModelFamily::Yeoh3 => 2.0 * c[0],
            ModelFamily::MooneyRivlin2
            | ModelFamily::MooneyRivlin3
            | ModelFamily::MooneyRivlin5 => 2.0 * (c[0] + c[1]),
        };
        (mu0, 3.0 * mu0)
    }

    /// Sweep `dσ/dλ` over an inclusive stretch grid and report whether the
    /// parameter set is Drucker-stable there. Fitted constants with negative
    /// leading terms can produce softening branches; this is the guard.
    ///
    /// The derivative is a central difference with step
    /// [`STABILITY_FD_STEP`], so `stretch_min` must clear that step.
    pub fn stability_scan(
        &self,
        stretch_min: f64,
        stretch_max: f64,
        n: usize,
    ) -> Result<StabilityReport> {
        if n < 2 {
            return Err(Error::Usage(format!(
                "stability scan needs at least 2 grid points, got {n}"
            )));
        }
        if !(stretch_min.is_finite() && stretch_max.is_finite()) || stretch_min >= stretch_max {
            return Err(Error::Usage(format!(
                "degenerate stability grid [{stretch_min}, {stretch_max}]"
            )));
        }
        if stretch_min <= STABILITY_FD_STEP {
            return Err(Error::Domain(format!(
                "stretch_min {stretch_min} too close to zero for the {STABILITY_FD_STEP} difference step"
            )));
        }
        let h = STABILITY_FD_STEP;
        for k in 0..n {
            let t = k as f64 / (n - 1) as f64;
            let stretch = stretch_min + t * (stretch_max - stretch_min);
            let slope =
                (self.nominal_stress(stretch + h)? - self.nominal_stress(stretch - h)?) / (2.0 * h);
            // NaN counts as a violation
            if slope.is_nan() || slope <= 0.0 {
                return Ok(StabilityReport {
                    stable: false,
                    first_violation: Some(stretch),
                });
            }
        }
        Ok(StabilityReport {
            stable: true,
            first_violation: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn invariants_at_reference() {
        assert_eq!(strain_invariants(1.0).unwrap(), (3.0, 3.0));
    }

    #[test]
    fn invariants_direct_arithmetic() {
        let (i1, i2) = strain_invariants(2.0).unwrap();
        assert_relative_eq!(i1, 5.0, epsilon = 1e-15);
        assert_relative_eq!(i2, 4.25, epsilon = 1e-15);
        // the reciprocal stretch swaps the invariants
        let (j1, j2) = strain_invariants(0.5).unwrap();
        assert_relative_eq!(j1, 4.25, epsilon = 1e-15);
        assert_relative_eq!(j2, 5.0, epsilon = 1e-15);
    }

    #[test]
    fn invariants_reject_bad_stretch() {
        assert!(strain_invariants(0.0).is_err());
        assert!(strain_invariants(-1.0).is_err());
        assert!(strain_invariants(f64::NAN).is_err());
        assert!(strain_invariants(f64::INFINITY).is_err());
    }

    #[test]
    fn energy_zero_at_reference_for_all_families() {
        for &family in ModelFamily::all() {
            let constants = (0..family.arity()).map(|k| 0.3 * (k as f64 + 1.0)).collect();
            let p = HyperelasticParams::new(family, constants).unwrap();
            assert_eq!(p.strain_energy(1.0).unwrap(), 0.0, "{family}");
            assert_eq!(p.nominal_stress(1.0).unwrap(), 0.0, "{family}");
        }
    }

    #[test]
    fn neo_hookean_closed_forms() {
        let p = HyperelasticParams::new(ModelFamily::NeoHookean, vec![1.0]).unwrap();
        // W = I1 - 3 = 2 at λ = 2
        assert_relative_eq!(p.strain_energy(2.0).unwrap(), 2.0, epsilon = 1e-15);
        // σ = 2 (2 - 0.25) (1 + 0) = 3.5
        assert_relative_eq!(p.nominal_stress(2.0).unwrap(), 3.5, epsilon = 1e-15);
    }

    #[test]
    fn tpu85_energy_term_by_term() {
        // independent five-term sum at λ = 2 with I1 = 5, I2 = 4.25
        let w_expected = -3.1992 * 2.0
            + 6.977 * 1.25
            + 0.0281 * 4.0
            + (-0.074972) * 2.0 * 1.25
            + 0.92155 * 1.25 * 1.25;
        let p = HyperelasticParams::tpu85();
        assert_relative_eq!(p.strain_energy(2.0).unwrap(), w_expected, epsilon = 1e-12);
        assert_relative_eq!(
            p.strain_energy(2.0).unwrap(),
            3.687741875,
            epsilon = 1e-12
        );
    }

    #[test]
    fn stress_matches_energy_finite_difference() {
        let p = HyperelasticParams::tpu85();
        let stretch = 1.1;
        let h = 1e-6;
        let fd = (p.strain_energy(stretch + h).unwrap() - p.strain_energy(stretch - h).unwrap())
            / (2.0 * h);
        let sigma = p.nominal_stress(stretch).unwrap();
        assert_relative_eq!(sigma, fd, max_relative = 1e-6);
        assert_relative_eq!(sigma, 1.742821432085987, epsilon = 1e-12);
    }

    #[test]
    fn mr5_with_zeroed_tail_matches_mr2_bitwise() {
        let mr2 =
            HyperelasticParams::new(ModelFamily::MooneyRivlin2, vec![-3.1992, 6.977]).unwrap();
        let mr5 = HyperelasticParams::new(
            ModelFamily::MooneyRivlin5,
            vec![-3.1992, 6.977, 0.0, 0.0, 0.0],
        )
        .unwrap();
        for &stretch in &[0.5, 1.0, 1.3, 2.0, 4.7, 7.6] {
            assert_eq!(
                mr5.strain_energy(stretch).unwrap(),
                mr2.strain_energy(stretch).unwrap()
            );
            assert_eq!(
                mr5.nominal_stress(stretch).unwrap(),
                mr2.nominal_stress(stretch).unwrap()
            );
        }
    }

    #[test]
    fn small_strain_moduli_examples() {
        let nh = HyperelasticParams::new(ModelFamily::NeoHookean, vec![0.5]).unwrap();
        assert_eq!(nh.small_strain_moduli(), (1.0, 3.0));

        let (mu0, e0) = HyperelasticParams::tpu85().small_strain_moduli();
        assert_relative_eq!(mu0, 7.5556, epsilon = 1e-12);
        assert_relative_eq!(e0, 22.6668, epsilon = 1e-12);
        assert_eq!(e0, 3.0 * mu0);

        let zero = HyperelasticParams::new(ModelFamily::MooneyRivlin2, vec![0.0, 0.0]).unwrap();
        assert_eq!(zero.small_strain_moduli(), (0.0, 0.0));
    }

    #[test]
    fn stability_neo_hookean_is_stable() {
        let p = HyperelasticParams::new(ModelFamily::NeoHookean, vec![1.0]).unwrap();
        let report = p.stability_scan(1.0, 7.6, 100).unwrap();
        assert!(report.stable);
        assert_eq!(report.first_violation, None);
    }

    #[test]
    fn stability_tpu85_over_test_range() {
        // numerical sweep finds no softening branch on the tested range
        // (minimum dσ/dλ ≈ 0.835 near λ ≈ 2.18)
        let report = HyperelasticParams::tpu85()
            .stability_scan(1.0, 7.6, 500)
            .unwrap();
        assert!(report.stable);
    }

    #[test]
    fn stability_detects_softening() {
        // negative C10 alone softens immediately
        let p = HyperelasticParams::new(ModelFamily::NeoHookean, vec![-1.0]).unwrap();
        let report = p.stability_scan(1.0, 2.0, 10).unwrap();
        assert!(!report.stable);
        assert_eq!(report.first_violation, Some(1.0));
    }

    #[test]
    fn stability_two_point_grid_runs() {
        let p = HyperelasticParams::new(ModelFamily::NeoHookean, vec![1.0]).unwrap();
        assert!(p.stability_scan(1.0, 1.5, 2).unwrap().stable);
    }

    #[test]
    fn stability_rejects_degenerate_grid() {
        let p = HyperelasticParams::new(ModelFamily::NeoHookean, vec![1.0]).unwrap();
        assert!(matches!(
            p.stability_scan(2.0, 1.0, 10),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            p.stability_scan(1.0, 2.0, 1),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn params_reject_mismatched_arity_and_compressibility() {
        assert!(HyperelasticParams::new(ModelFamily::MooneyRivlin5, vec![1.0, 2.0]).is_err());
        assert!(HyperelasticParams::new(ModelFamily::NeoHookean, vec![f64::NAN]).is_err());
        assert!(HyperelasticParams::with_incompressibility(
            ModelFamily::NeoHookean,
            vec![1.0],
            0.1
        )
        .is_err());
    }

    #[test]
    fn sample_from_engineering_strain() {
        let s = UniaxialSample::from_engineering(6.6, 40.0).unwrap();
        assert_eq!(s.stretch, 7.6);
        assert!(UniaxialSample::from_engineering(-1.0, 0.0).is_err());
        assert!(UniaxialSample::from_engineering(-1.5, 0.0).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("mr5".parse::<ModelFamily>().unwrap(), ModelFamily::MooneyRivlin5);
        assert_eq!("NH".parse::<ModelFamily>().unwrap(), ModelFamily::NeoHookean);
        assert!("ogden".parse::<ModelFamily>().is_err());
    }
}
