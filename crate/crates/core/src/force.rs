//! Quasi-static force balance, equilibrium solving, and inverse area
//! calibration.
//!
//! The net axial force of a pressurized actuator is the pressure term over
//! the effective projected area minus the axial-stiffness force:
//!
//! ```text
//! F_y = P · A_eff(y) - F_K(y)
//! ```
//!
//! with pressure in Pa, areas in m², displacement in mm (the stiffness
//! polynomial's native unit) and forces in N. The model is quasi-static:
//! no inertia, no damping, uniform internal pressure.
//!
//! `A_eff` comes either from geometry (cap plus `n_folds` wall pairs, see
//! [`crate::geometry`]) or from a calibrated [`AreaProfile`] that stands in
//! when the physical dimensions are unknown: the usual situation when all
//! one has is a measured force curve.

use crate::error::{Error, Result};
use crate::fitting::Polynomial;
use crate::geometry::{ActuatorGeometry, FoldKinematics};

/// Default working-range bound for the displacement, mm.
pub const DEFAULT_Y_MAX_MM: f64 = 40.0;

/// Bisection interval tolerance for equilibrium solves, mm.
pub const BISECTION_TOL_MM: f64 = 1e-6;

/// Force residual tolerance at a reported equilibrium, N.
pub const EQUILIBRIUM_TOL_N: f64 = 1e-6;

const BISECTION_MAX_ITER: usize = 200;

/// One measured or predicted operating state of the actuator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Internal pressure, Pa.
    pub pressure: f64,
    /// Axial displacement, mm.
    pub displacement: f64,
    /// Axial force, N.
    pub force: f64,
}

/// Calibrated effective pressure area as a function of displacement:
/// `(y mm, area m²)` points, piecewise-linear in between and clamped to
/// the end values outside the sampled range.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaProfile {
    points: Vec<(f64, f64)>,
}

impl AreaProfile {
    /// Build a profile from `(displacement mm, area m²)` points. Points are
    /// sorted by displacement; duplicates are rejected, as are non-positive
    /// or non-finite areas.
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Usage("area profile must be non-empty".into()));
        }
        for &(y, a) in &points {
            if !y.is_finite() || !a.is_finite() {
                return Err(Error::Domain(format!(
                    "area profile entries must be finite, got ({y}, {a})"
                )));
            }
            if a <= 0.0 {
                return Err(Error::Domain(format!(
                    "effective area must be positive, got {a} at y = {y}"
                )));
            }
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Usage(
                "area profile displacements must be distinct".into(),
            ));
        }
        Ok(Self { points })
    }

    /// Displacement-independent profile.
    pub fn constant(area: f64) -> Result<Self> {
        Self::new(vec![(0.0, area)])
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Interpolated area at a displacement, m².
    pub fn area_at(&self, displacement_mm: f64) -> f64 {
        let pts = &self.points;
        if displacement_mm <= pts[0].0 {
            return pts[0].1;
        }
        if displacement_mm >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        let idx = pts.partition_point(|&(y, _)| y <= displacement_mm);
        let (y0, a0) = pts[idx - 1];
        let (y1, a1) = pts[idx];
        a0 + (a1 - a0) * (displacement_mm - y0) / (y1 - y0)
    }

    /// True when the areas never rise with displacement. A calibrated
    /// profile that fails this contradicts the picture of folds
    /// progressively flattening, which is worth surfacing to the user.
    pub fn is_non_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].1 <= w[0].1)
    }
}

/// How an equilibrium query ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionStatus {
    /// Root found inside the working range.
    Equilibrium,
    /// The actuator cannot hold the load even at zero extension.
    Blocked,
    /// Net force still exceeds the load at the working-range bound.
    Saturated,
}

/// Result of a free-extension solve. `Blocked` and `Saturated` are valid
/// physical outcomes, not errors, so they travel as a flag next to the
/// clamped displacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionSolution {
    /// Equilibrium displacement, mm (0 when blocked, `y_max` when saturated).
    pub displacement: f64,
    pub status: ExtensionStatus,
}

impl ExtensionSolution {
    pub fn is_equilibrium(&self) -> bool {
        self.status == ExtensionStatus::Equilibrium
    }
}

/// The assembled quasi-static actuator model: stiffness polynomial plus an
/// area source, which is either explicit geometry with fold kinematics or
/// a calibrated area profile (the profile wins when both are present).
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct LssaModel {
    geometry: Option<ActuatorGeometry>,
    kinematics: FoldKinematics,
    stiffness: Polynomial,
    stiffness_rate: Polynomial,
    area_override: Option<AreaProfile>,
    y_max: f64,
}

impl LssaModel {
    /// Geometry-backed model with the default working range.
    pub fn new(
        geometry: ActuatorGeometry,
        kinematics: FoldKinematics,
        stiffness: Polynomial,
    ) -> Result<Self> {
        Self::build(Some(geometry), kinematics, stiffness, None, DEFAULT_Y_MAX_MM)
    }

    /// Model backed purely by a calibrated area profile, for actuators
    /// whose wall dimensions are unknown.
    pub fn calibrated(stiffness: Polynomial, profile: AreaProfile) -> Result<Self> {
        Self::build(
            None,
            FoldKinematics::ConstantAngle,
            stiffness,
            Some(profile),
            DEFAULT_Y_MAX_MM,
        )
    }

    fn build(
        geometry: Option<ActuatorGeometry>,
        kinematics: FoldKinematics,
        stiffness: Polynomial,
        area_override: Option<AreaProfile>,
        y_max: f64,
    ) -> Result<Self> {
        if stiffness.degree() > 3 {
            return Err(Error::Usage(format!(
                "stiffness polynomial degree must be <= 3, got {}",
                stiffness.degree()
            )));
        }
        if !(y_max.is_finite() && y_max > 0.0) {
            return Err(Error::Domain(format!(
                "working range bound must be positive, got {y_max}"
            )));
        }
        if geometry.is_none() && area_override.is_none() {
            return Err(Error::Usage(
                "model needs geometry or a calibrated area profile".into(),
            ));
        }
        let stiffness_rate = stiffness.differentiate();
        Ok(Self {
            geometry,
            kinematics,
            stiffness,
            stiffness_rate,
            area_override,
            y_max,
        })
    }

    /// Replace the area source with a calibrated profile.
    pub fn with_area_profile(mut self, profile: AreaProfile) -> Self {
        self.area_override = Some(profile);
        self
    }

    pub fn with_y_max(mut self, y_max: f64) -> Result<Self> {
        if !(y_max.is_finite() && y_max > 0.0) {
            return Err(Error::Domain(format!(
                "working range bound must be positive, got {y_max}"
            )));
        }
        self.y_max = y_max;
        Ok(self)
    }

    pub fn stiffness(&self) -> &Polynomial {
        &self.stiffness
    }

    pub fn geometry(&self) -> Option<&ActuatorGeometry> {
        self.geometry.as_ref()
    }

    pub fn area_profile(&self) -> Option<&AreaProfile> {
        self.area_override.as_ref()
    }

    /// Working-range bound, mm.
    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    fn check_displacement(&self, y: f64) -> Result<()> {
        if !y.is_finite() || y < 0.0 || y > self.y_max {
            return Err(Error::Domain(format!(
                "displacement {y} mm outside working range [0, {}]",
                self.y_max
            )));
        }
        Ok(())
    }

    fn check_pressure(pressure: f64) -> Result<()> {
        if !pressure.is_finite() || pressure < 0.0 {
            return Err(Error::Domain(format!(
                "pressure must be finite and non-negative, got {pressure}"
            )));
        }
        Ok(())
    }

    /// Effective pressure area at a displacement, m². Uses the calibrated
    /// profile when present, otherwise the cap plus `n_folds` wall pairs.
    pub fn effective_area(&self, displacement_mm: f64) -> Result<f64> {
        self.check_displacement(displacement_mm)?;
        if let Some(profile) = &self.area_override {
            return Ok(profile.area_at(displacement_mm));
        }
        let g = self.geometry.as_ref().expect("model has an area source");
        let theta = self.kinematics.theta_at(g, displacement_mm)?;
        let pair = g.external_wall_area(theta)? - g.internal_wall_area(theta)?;
        Ok(g.cap_area() + f64::from(g.n_folds) * pair)
    }

    /// The three pressure-force components `(F1, F2y, F3y)` in N: cap,
    /// external wall, and internal wall (one fold pair). Requires explicit
    /// geometry; a calibrated profile only determines their net effect.
    pub fn pressure_components(&self, pressure: f64, displacement_mm: f64) -> Result<(f64, f64, f64)> {
        Self::check_pressure(pressure)?;
        self.check_displacement(displacement_mm)?;
        let g = self.geometry.as_ref().ok_or_else(|| {
            Error::Usage("pressure components require explicit geometry".into())
        })?;
        let theta = self.kinematics.theta_at(g, displacement_mm)?;
        Ok((
            pressure * g.cap_area(),
            pressure * g.external_wall_area(theta)?,
            pressure * g.internal_wall_area(theta)?,
        ))
    }

    /// Net axial force `P · A_eff(y) - F_K(y)`, N. Negative means the
    /// pressure cannot hold the displacement.
    pub fn net_force(&self, pressure: f64, displacement_mm: f64) -> Result<f64> {
        Self::check_pressure(pressure)?;
        Ok(pressure * self.effective_area(displacement_mm)? - self.stiffness.evaluate(displacement_mm))
    }

    /// Local axial stiffness `K(y) = dF_K/dy`, N/mm, from the derivative of
    /// the stored polynomial.
    pub fn axial_stiffness(&self, displacement_mm: f64) -> Result<f64> {
        self.check_displacement(displacement_mm)?;
        Ok(self.stiffness_rate.evaluate(displacement_mm))
    }

    /// Displacement at which the net force balances an external load,
    /// found by bisection on `[0, y_max]`.
    ///
    /// Flags instead of failing: `Blocked` when the actuator cannot produce
    /// the load even at zero extension, `Saturated` when it still exceeds
    /// the load at `y_max`.
    pub fn free_extension(&self, pressure: f64, load: f64) -> Result<ExtensionSolution> {
        Self::check_pressure(pressure)?;
        if !load.is_finite() || load < 0.0 {
            return Err(Error::Domain(format!(
                "load must be finite and non-negative, got {load}"
            )));
        }
        let surplus_at_zero = self.net_force(pressure, 0.0)? - load;
        if surplus_at_zero < 0.0 {
            return Ok(ExtensionSolution {
                displacement: 0.0,
                status: ExtensionStatus::Blocked,
            });
        }
        let surplus_at_max = self.net_force(pressure, self.y_max)? - load;
        if surplus_at_max > 0.0 {
            return Ok(ExtensionSolution {
                displacement: self.y_max,
                status: ExtensionStatus::Saturated,
            });
        }

        let mut lo = 0.0;
        let mut hi = self.y_max;
        let mut surplus_lo = surplus_at_zero;
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..BISECTION_MAX_ITER {
            mid = 0.5 * (lo + hi);
            let surplus = self.net_force(pressure, mid)? - load;
            if (hi - lo) < BISECTION_TOL_MM && surplus.abs() < EQUILIBRIUM_TOL_N {
                break;
            }
            if surplus * surplus_lo > 0.0 {
                lo = mid;
                surplus_lo = surplus;
            } else {
                hi = mid;
            }
        }
        Ok(ExtensionSolution {
            displacement: mid,
            status: ExtensionStatus::Equilibrium,
        })
    }

    /// Threshold pressure below which the actuator produces no measurable
    /// output against a load held at displacement `y0`:
    /// `P_th = max(0, (load + F_K(y0)) / A_eff(y0))`, Pa.
    pub fn dead_band_pressure(&self, load: f64, y0_mm: f64) -> Result<f64> {
        if !load.is_finite() {
            return Err(Error::Domain(format!("load must be finite, got {load}")));
        }
        let area = self.effective_area(y0_mm)?;
        if area <= 0.0 {
            return Err(Error::Domain(format!(
                "effective area must be positive at y0, got {area}"
            )));
        }
        Ok(((load + self.stiffness.evaluate(y0_mm)) / area).max(0.0))
    }
}

/// Invert the force balance at a single operating point: the constant
/// effective area that reproduces `f_meas` at `(pressure, y0)`,
/// `A = (f_meas + F_K(y0)) / P`.
pub fn calibrate_effective_area(
    pressure: f64,
    y0_mm: f64,
    measured_force: f64,
    stiffness: &Polynomial,
) -> Result<f64> {
    if !pressure.is_finite() || pressure <= 0.0 {
        return Err(Error::Usage(format!(
            "calibration pressure must be positive, got {pressure}"
        )));
    }
    if !y0_mm.is_finite() || !measured_force.is_finite() {
        return Err(Error::Domain(
            "calibration point must be finite".into(),
        ));
    }
    let area = (measured_force + stiffness.evaluate(y0_mm)) / pressure;
    if area <= 0.0 {
        return Err(Error::Calibration(format!(
            "measured force {measured_force} N at y = {y0_mm} mm implies non-positive area {area}"
        )));
    }
    Ok(area)
}

/// Invert the force balance point-by-point across a measured curve. Every
/// input point must carry a positive pressure; duplicate displacements are
/// rejected. The result reproduces each input force exactly by
/// construction. A profile whose areas rise with displacement is returned
/// as-is: check [`AreaProfile::is_non_increasing`] and surface it.
pub fn calibrate_area_profile(
    points: &[OperatingPoint],
    stiffness: &Polynomial,
) -> Result<AreaProfile> {
    if points.len() < 2 {
        return Err(Error::Usage(format!(
            "area-profile calibration needs at least 2 points, got {}",
            points.len()
        )));
    }
    let mut profile = Vec::with_capacity(points.len());
    for p in points {
        if p.pressure <= 0.0 {
            return Err(Error::Usage(format!(
                "calibration points need positive pressure, got {} Pa at y = {} mm",
                p.pressure, p.displacement
            )));
        }
        let area = calibrate_effective_area(p.pressure, p.displacement, p.force, stiffness)?;
        profile.push((p.displacement, area));
    }
    AreaProfile::new(profile)
}
