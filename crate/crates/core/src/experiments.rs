//! Virtual replications of the two characterization rigs, embedded
//! reference measurements, and comparison metrics.
//!
//! Two experiments characterize the actuator:
//!
//! * **Prescribed extension**: hold the pressure, step the crosshead
//!   through a displacement grid, record force at each stop.
//! * **Static load**: hang a mass from the actuator, ramp the pressure,
//!   record the measurable output force (clamped at zero below the
//!   dead-band pressure).
//!
//! The reference numbers shipped in `data/` are the prose-stated values of
//! the prototype's test campaign, not curve digitizations, and carry a
//! ±2 N reading tolerance.

use crate::error::{Error, Result};
use crate::fitting::Polynomial;
use crate::force::{LssaModel, OperatingPoint};

/// Which independent variable a dataset or sweep is ordered by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptVariable {
    Displacement,
    Pressure,
}

/// A digitized experimental curve used by the validation harness.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceDataset {
    pub name: &'static str,
    pub swept: SweptVariable,
    pub points: Vec<OperatingPoint>,
    pub source: &'static str,
    /// Values are prose-stated approximations, not instrument readings.
    pub approximate: bool,
    /// Reading tolerance of the stated values, N.
    pub reading_tolerance: f64,
}

/// One static-load case: hanging mass and the force reached at the
/// reference pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadCase {
    pub mass_kg: f64,
    pub force: f64,
}

/// Static-load reference: per-load endpoint forces at one pressure, plus
/// the observed dead-band onset of the heaviest load.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticLoadReference {
    pub name: &'static str,
    /// Pressure at which the endpoint forces were read, Pa.
    pub pressure: f64,
    pub cases: Vec<LoadCase>,
    /// Mass (kg) and onset window (kPa) of the case whose dead band was
    /// reported.
    pub dead_band_case_kg: f64,
    pub dead_band_onset_kpa: (f64, f64),
    pub source: &'static str,
    pub approximate: bool,
    pub reading_tolerance: f64,
}

/// Error metrics of a predicted curve against a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonMetrics {
    pub rmse: f64,
    pub max_abs_error: f64,
    pub signed_bias: f64,
    pub n: usize,
}

/// Sweep the displacement grid at constant pressure, one operating point
/// per grid entry with `force = net_force(P, y)`.
pub fn prescribed_extension_sweep(
    model: &LssaModel,
    pressure: f64,
    displacement_grid_mm: &[f64],
) -> Result<Vec<OperatingPoint>> {
    displacement_grid_mm
        .iter()
        .map(|&displacement| {
            Ok(OperatingPoint {
                pressure,
                displacement,
                force: model.net_force(pressure, displacement)?,
            })
        })
        .collect()
}

/// Ramp the pressure grid under a fixed external load with the actuator
/// held at `y_op`. The measurable output is the net force beyond the load,
/// clamped at zero: below the dead-band pressure the load cell reads
/// nothing.
pub fn static_load_sweep(
    model: &LssaModel,
    load: f64,
    pressure_grid: &[f64],
    y_op_mm: f64,
) -> Result<Vec<OperatingPoint>> {
    if !load.is_finite() || load < 0.0 {
        return Err(Error::Domain(format!(
            "load must be finite and non-negative, got {load}"
        )));
    }
    if pressure_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Usage("pressure grid must be non-decreasing".into()));
    }
    pressure_grid
        .iter()
        .map(|&pressure| {
            let net = model.net_force(pressure, y_op_mm)?;
            Ok(OperatingPoint {
                pressure,
                displacement: y_op_mm,
                force: (net - load).max(0.0),
            })
        })
        .collect()
}

/// Compare a predicted curve to a reference dataset point-by-point on the
/// swept variable, interpolating the prediction linearly where the
/// abscissae do not match. Reference points outside the predicted range
/// are skipped; if none overlap, that is a usage error.
pub fn compare_to_reference(
    predicted: &[OperatingPoint],
    reference: &ReferenceDataset,
) -> Result<ComparisonMetrics> {
    if predicted.is_empty() {
        return Err(Error::Usage("no predicted points to compare".into()));
    }
    let abscissa = |p: &OperatingPoint| match reference.swept {
        SweptVariable::Displacement => p.displacement,
        SweptVariable::Pressure => p.pressure,
    };
    let mut curve: Vec<(f64, f64)> = predicted.iter().map(|p| (abscissa(p), p.force)).collect();
    curve.sort_by(|a, b| a.0.total_cmp(&b.0));

    let (lo, hi) = (curve[0].0, curve[curve.len() - 1].0);
    let mut errors = Vec::new();
    for r in &reference.points {
        let x = abscissa(r);
        if x < lo || x > hi {
            continue;
        }
        let idx = curve.partition_point(|&(cx, _)| cx <= x);
        let predicted_force = if idx == 0 {
            curve[0].1
        } else if idx == curve.len() {
            curve[idx - 1].1
        } else {
            let (x0, f0) = curve[idx - 1];
            let (x1, f1) = curve[idx];
            if x0 == x {
                f0
            } else {
                f0 + (f1 - f0) * (x - x0) / (x1 - x0)
            }
        };
        errors.push(predicted_force - r.force);
    }
    if errors.is_empty() {
        return Err(Error::Usage(
            "predicted and reference abscissae do not overlap".into(),
        ));
    }
    let n = errors.len();
    let sum_sq: f64 = errors.iter().map(|e| e * e).sum();
    let sum: f64 = errors.iter().sum();
    Ok(ComparisonMetrics {
        rmse: (sum_sq / n as f64).sqrt(),
        max_abs_error: errors.iter().fold(0.0f64, |m, e| m.max(e.abs())),
        signed_bias: sum / n as f64,
        n,
    })
}

/// Embedded reference measurements for the prototype actuator.
pub mod reference {
    use super::*;

    const EXTENSION_CSV: &str = include_str!("../data/ref_extension_125kpa.csv");
    const STATIC_LOAD_CSV: &str = include_str!("../data/ref_staticload_200kpa.csv");

    /// Pressure of the prescribed-extension reference run, Pa.
    pub const EXTENSION_PRESSURE_PA: f64 = 125.0e3;

    /// Pressure at which the static-load endpoint forces were read, Pa.
    pub const STATIC_LOAD_PRESSURE_PA: f64 = 200.0e3;

    /// Reported extension at which the output force reached zero, mm.
    pub const OBSERVED_FULL_EXTENSION_MM: f64 = 40.0;

    /// Reading tolerance of the prose-stated forces, N.
    pub const READING_TOLERANCE_N: f64 = 2.0;

    /// Axial-stiffness polynomial fitted for the prototype actuator
    /// (y in mm, force in N).
    pub fn prototype_stiffness() -> Polynomial {
        Polynomial::cubic(4.1481e-4, 1.2865e-2, 2.0789, -0.2246)
    }

    fn parse_two_column(text: &str, expected_header: &str) -> Vec<(f64, f64)> {
        let mut lines = text.lines();
        let header = lines.next().expect("embedded dataset has a header");
        assert_eq!(header.trim(), expected_header, "embedded dataset header");
        lines
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let mut it = line.split(',');
                let a = it.next().unwrap().trim().parse().expect("numeric column");
                let b = it.next().unwrap().trim().parse().expect("numeric column");
                (a, b)
            })
            .collect()
    }

    /// Force-displacement reference at 125 kPa.
    pub fn extension_125kpa() -> ReferenceDataset {
        let points = parse_two_column(EXTENSION_CSV, "displacement_mm,force_n")
            .into_iter()
            .map(|(displacement, force)| OperatingPoint {
                pressure: EXTENSION_PRESSURE_PA,
                displacement,
                force,
            })
            .collect();
        ReferenceDataset {
            name: "extension-125kPa",
            swept: SweptVariable::Displacement,
            points,
            source: "prescribed-extension test of the prototype actuator at 125 kPa, prose-stated values",
            approximate: true,
            reading_tolerance: READING_TOLERANCE_N,
        }
    }

    /// Per-load endpoint forces at 200 kPa with the observed 3.5 kg
    /// dead-band onset.
    pub fn static_load_200kpa() -> StaticLoadReference {
        let cases = parse_two_column(STATIC_LOAD_CSV, "load_kg,force_n")
            .into_iter()
            .map(|(mass_kg, force)| LoadCase { mass_kg, force })
            .collect();
        StaticLoadReference {
            name: "static-load-200kPa",
            pressure: STATIC_LOAD_PRESSURE_PA,
            cases,
            dead_band_case_kg: 3.5,
            dead_band_onset_kpa: (60.0, 70.0),
            source: "static-load test of the prototype actuator, prose-stated endpoint forces",
            approximate: true,
            reading_tolerance: READING_TOLERANCE_N,
        }
    }
}
