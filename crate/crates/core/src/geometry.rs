//! Actuator geometry, projected pressure areas, and fold kinematics.
//!
//! Pressure produces axial force over three projected areas: the annular
//! cap, the external folded wall, and the internal folded wall. The wall
//! areas depend on the fold angle θ, which may stay fixed during extension
//! (the literal fixed-area force balance) or grow as the folds straighten.
//! No published θ(y) relation exists for this actuator family, so the
//! unfolding law is pluggable; [`FoldKinematics::LinearUnfold`] is a
//! reasonable default in which sin θ rises linearly with displacement
//! until the folds are flat.

use crate::error::{Error, Result};
use crate::units::mm_to_m;
use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

/// Radii, fold geometry and fold count of one actuator. All lengths in
/// meters, the fold angle in radians from horizontal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActuatorGeometry {
    /// Cap annulus outer radius.
    pub cap_outer_radius: f64,
    /// Cap annulus inner radius.
    pub cap_inner_radius: f64,
    /// Inner radius of the external folded wall.
    pub outer_wall_radius: f64,
    /// Radius of the internal folded wall.
    pub inner_wall_radius: f64,
    /// Folded wall segment length.
    pub fold_length: f64,
    /// Initial fold angle θ0 ∈ [0, π/2].
    pub fold_angle: f64,
    /// Number of fold pairs contributing wall area.
    pub n_folds: u32,
}

impl ActuatorGeometry {
    pub fn new(
        cap_outer_radius: f64,
        cap_inner_radius: f64,
        outer_wall_radius: f64,
        inner_wall_radius: f64,
        fold_length: f64,
        fold_angle: f64,
        n_folds: u32,
    ) -> Result<Self> {
        let g = Self {
            cap_outer_radius,
            cap_inner_radius,
            outer_wall_radius,
            inner_wall_radius,
            fold_length,
            fold_angle,
            n_folds,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let all = [
            self.cap_outer_radius,
            self.cap_inner_radius,
            self.outer_wall_radius,
            self.inner_wall_radius,
            self.fold_length,
            self.fold_angle,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("geometry fields must be finite".into()));
        }
        if !(self.cap_outer_radius > self.cap_inner_radius && self.cap_inner_radius >= 0.0) {
            return Err(Error::Domain(format!(
                "cap radii must satisfy outer > inner >= 0, got {} and {}",
                self.cap_outer_radius, self.cap_inner_radius
            )));
        }
        if !(self.outer_wall_radius >= self.inner_wall_radius && self.inner_wall_radius >= 0.0) {
            return Err(Error::Domain(format!(
                "wall radii must satisfy outer >= inner >= 0, got {} and {}",
                self.outer_wall_radius, self.inner_wall_radius
            )));
        }
        if self.fold_length < 0.0 {
            return Err(Error::Domain(format!(
                "fold length must be non-negative, got {}",
                self.fold_length
            )));
        }
        check_fold_angle(self.fold_angle)?;
        if self.n_folds < 1 {
            return Err(Error::Domain("need at least one fold pair".into()));
        }
        Ok(())
    }

    /// Projected cap area `A1 = π (R1o² - R1i²)`, m².
    pub fn cap_area(&self) -> f64 {
        PI * (self.cap_outer_radius * self.cap_outer_radius
            - self.cap_inner_radius * self.cap_inner_radius)
    }

    /// Projected external-wall area at a fold angle,
    /// `A2 = π (R2i + S cos θ)² - π R2i²`, m².
    pub fn external_wall_area(&self, theta: f64) -> Result<f64> {
        check_fold_angle(theta)?;
        Ok(annulus_growth(self.outer_wall_radius, self.fold_length, theta))
    }

    /// Projected internal-wall area at a fold angle,
    /// `A3 = π (R3i + S cos θ)² - π R3i²`, m².
    pub fn internal_wall_area(&self, theta: f64) -> Result<f64> {
        check_fold_angle(theta)?;
        Ok(annulus_growth(self.inner_wall_radius, self.fold_length, theta))
    }

    /// Net pressure area of the cap and one wall pair at a displacement,
    /// `A1 + A2(θ(y)) - A3(θ(y))`, m².
    ///
    /// Algebraically this equals `A1 + 2π S cos θ (R2i - R3i)`, so it can
    /// never drop below the cap area while the wall radii are ordered.
    pub fn effective_area(&self, kinematics: &FoldKinematics, displacement_mm: f64) -> Result<f64> {
        let theta = kinematics.theta_at(self, displacement_mm)?;
        Ok(self.cap_area() + self.external_wall_area(theta)? - self.internal_wall_area(theta)?)
    }
}

fn check_fold_angle(theta: f64) -> Result<()> {
    if !theta.is_finite() || !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain(format!(
            "fold angle must lie in [0, π/2], got {theta}"
        )));
    }
    Ok(())
}

/// `π (r + s cos θ)² - π r²`
fn annulus_growth(radius: f64, fold_length: f64, theta: f64) -> f64 {
    let grown = radius + fold_length * theta.cos();
    PI * (grown * grown - radius * radius)
}

/// Fold-angle law θ(y) used during extension.
#[derive(Debug, Clone, PartialEq)]
pub enum FoldKinematics {
    /// θ stays at the geometry's initial fold angle; areas are
    /// displacement-independent, reproducing the fixed-area force balance.
    ConstantAngle,
    /// sin θ(y) = min(1, sin θ0 + y / (2 · n_folds · S)): the folds
    /// straighten linearly in displacement and are flat once the full
    /// stroke 2·n_folds·S·(1 - sin θ0) is consumed.
    LinearUnfold,
    /// Measured θ(y) table, linearly interpolated.
    Tabulated(ThetaTable),
}

impl FoldKinematics {
    /// Fold angle at a displacement (mm). Non-decreasing in `y` for the
    /// built-in laws and anchored at θ(0) = θ0.
    pub fn theta_at(&self, geometry: &ActuatorGeometry, displacement_mm: f64) -> Result<f64> {
        if !displacement_mm.is_finite() || displacement_mm < 0.0 {
            return Err(Error::Domain(format!(
                "displacement must be finite and non-negative, got {displacement_mm}"
            )));
        }
        match self {
            FoldKinematics::ConstantAngle => Ok(geometry.fold_angle),
            FoldKinematics::LinearUnfold => {
                if displacement_mm == 0.0 {
                    return Ok(geometry.fold_angle);
                }
                let y = mm_to_m(displacement_mm);
                let travel = 2.0 * f64::from(geometry.n_folds) * geometry.fold_length;
                // zero fold length means nothing to unfold: flat immediately
                let sin = geometry.fold_angle.sin() + y / travel;
                Ok(sin.min(1.0).asin())
            }
            FoldKinematics::Tabulated(table) => table.theta_at(displacement_mm),
        }
    }
}

/// Strictly increasing `(y mm, θ rad)` table with all angles in [0, π/2].
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaTable {
    points: Vec<(f64, f64)>,
}

impl ThetaTable {
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Usage("fold-angle table must be non-empty".into()));
        }
        for &(y, theta) in &points {
            if !y.is_finite() {
                return Err(Error::Domain(format!("table abscissa must be finite, got {y}")));
            }
            check_fold_angle(theta)?;
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Usage("fold-angle table abscissae must be distinct".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    fn theta_at(&self, y: f64) -> Result<f64> {
        let (lo, hi) = (self.points[0].0, self.points[self.points.len() - 1].0);
        if y < lo || y > hi {
            return Err(Error::Extrapolation {
                name: "fold-angle table",
                at: y,
                lo,
                hi,
            });
        }
        let idx = self.points.partition_point(|&(py, _)| py <= y);
        if idx == 0 {
            return Ok(self.points[0].1);
        }
        if idx == self.points.len() {
            return Ok(self.points[idx - 1].1);
        }
        let (y0, t0) = self.points[idx - 1];
        let (y1, t1) = self.points[idx];
        Ok(t0 + (t1 - t0) * (y - y0) / (y1 - y0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample_geometry() -> ActuatorGeometry {
        ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, 0.0, 1).unwrap()
    }

    #[test]
    fn cap_area_arithmetic() {
        let g = sample_geometry();
        assert_relative_eq!(g.cap_area(), 9.42477796076938e-4, max_relative = 1e-12);
    }

    #[test]
    fn cap_area_degenerates_to_disc() {
        let g = ActuatorGeometry::new(0.02, 0.0, 0.015, 0.010, 0.005, 0.0, 1).unwrap();
        assert_relative_eq!(g.cap_area(), PI * 4.0e-4, max_relative = 1e-15);
    }

    #[test]
    fn cap_annulus_vanishes_near_boundary() {
        // equal radii are rejected; just above the boundary the area is ~0
        assert!(ActuatorGeometry::new(0.01, 0.01, 0.015, 0.010, 0.005, 0.0, 1).is_err());
        let g = ActuatorGeometry::new(0.01 + 1e-12, 0.01, 0.015, 0.010, 0.005, 0.0, 1).unwrap();
        assert!(g.cap_area() < 1e-12);
    }

    #[test]
    fn wall_areas_arithmetic() {
        let g = sample_geometry();
        assert_relative_eq!(
            g.external_wall_area(0.0).unwrap(),
            5.497787143782139e-4,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            g.internal_wall_area(0.0).unwrap(),
            3.9269908169872416e-4,
            max_relative = 1e-12
        );
    }

    #[test]
    fn wall_areas_vanish_at_right_angle() {
        let g = sample_geometry();
        // cos(π/2) is one rounding step from zero in f64
        assert!(g.external_wall_area(FRAC_PI_2).unwrap().abs() < 1e-17);
        assert!(g.internal_wall_area(FRAC_PI_2).unwrap().abs() < 1e-17);
    }

    #[test]
    fn wall_areas_vanish_without_fold() {
        let g = ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.0, 0.3, 1).unwrap();
        assert_eq!(g.external_wall_area(0.3).unwrap(), 0.0);
    }

    #[test]
    fn wall_area_rejects_out_of_range_angle() {
        let g = sample_geometry();
        assert!(g.external_wall_area(-0.1).is_err());
        assert!(g.external_wall_area(2.0).is_err());
    }

    #[test]
    fn equal_wall_radii_cancel() {
        let g = ActuatorGeometry::new(0.02, 0.01, 0.012, 0.012, 0.005, 0.0, 1).unwrap();
        for theta in [0.0, 0.4, 1.1] {
            assert_eq!(
                g.external_wall_area(theta).unwrap(),
                g.internal_wall_area(theta).unwrap()
            );
            assert_relative_eq!(
                g.effective_area(&FoldKinematics::ConstantAngle, 5.0).unwrap(),
                g.cap_area(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn effective_area_sum() {
        let g = sample_geometry();
        assert_relative_eq!(
            g.effective_area(&FoldKinematics::ConstantAngle, 0.0).unwrap(),
            1.0995574287564279e-3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn effective_area_identity() {
        let g = ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, 0.6, 1).unwrap();
        for theta in [0.0f64, 0.3, 0.9, 1.4] {
            let lhs = g.external_wall_area(theta).unwrap() - g.internal_wall_area(theta).unwrap();
            let rhs = 2.0 * PI * g.fold_length * theta.cos()
                * (g.outer_wall_radius - g.inner_wall_radius);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn linear_unfold_anchors_and_saturates() {
        let theta0: f64 = 0.5;
        let g = ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, theta0, 1).unwrap();
        let kin = FoldKinematics::LinearUnfold;
        assert_eq!(kin.theta_at(&g, 0.0).unwrap(), theta0);
        // full unfolding stroke: 2 n S (1 - sin θ0), converted to mm
        let y_flat = 2.0 * 0.005 * (1.0 - theta0.sin()) * 1000.0;
        assert_relative_eq!(kin.theta_at(&g, y_flat).unwrap(), FRAC_PI_2, epsilon = 1e-9);
        assert_relative_eq!(
            kin.theta_at(&g, y_flat * 2.0).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-12
        );
        // non-decreasing between anchor and saturation
        let mut prev = theta0;
        for k in 1..=20 {
            let theta = kin.theta_at(&g, y_flat * k as f64 / 20.0).unwrap();
            assert!(theta >= prev);
            prev = theta;
        }
    }

    #[test]
    fn linear_unfold_zero_fold_length() {
        let g = ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.0, 0.2, 1).unwrap();
        let kin = FoldKinematics::LinearUnfold;
        assert_eq!(kin.theta_at(&g, 0.0).unwrap(), 0.2);
        assert_eq!(kin.theta_at(&g, 1.0).unwrap(), FRAC_PI_2);
    }

    #[test]
    fn constant_angle_everywhere() {
        let g = ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, 0.7, 1).unwrap();
        for y in [0.0, 5.0, 40.0] {
            assert_eq!(FoldKinematics::ConstantAngle.theta_at(&g, y).unwrap(), 0.7);
        }
    }

    #[test]
    fn tabulated_interpolates_and_rejects_extrapolation() {
        let g = sample_geometry();
        let table = ThetaTable::new(vec![(0.0, 0.2), (10.0, 0.6), (20.0, 1.0)]).unwrap();
        let kin = FoldKinematics::Tabulated(table);
        assert_eq!(kin.theta_at(&g, 0.0).unwrap(), 0.2);
        assert_relative_eq!(kin.theta_at(&g, 5.0).unwrap(), 0.4, epsilon = 1e-15);
        assert_eq!(kin.theta_at(&g, 20.0).unwrap(), 1.0);
        assert!(matches!(
            kin.theta_at(&g, 25.0),
            Err(Error::Extrapolation { .. })
        ));
    }

    #[test]
    fn theta_table_validation() {
        assert!(ThetaTable::new(vec![]).is_err());
        assert!(ThetaTable::new(vec![(0.0, 0.1), (0.0, 0.2)]).is_err());
        assert!(ThetaTable::new(vec![(0.0, 2.0)]).is_err());
        // unsorted input is sorted on construction
        let t = ThetaTable::new(vec![(10.0, 0.5), (0.0, 0.1)]).unwrap();
        assert_eq!(t.points()[0].0, 0.0);
    }

    #[test]
    fn negative_displacement_rejected() {
        let g = sample_geometry();
        assert!(FoldKinematics::ConstantAngle.theta_at(&g, -1.0).is_err());
    }

    #[test]
    fn geometry_invariants_rejected() {
        assert!(ActuatorGeometry::new(0.01, 0.02, 0.015, 0.010, 0.005, 0.0, 1).is_err());
        assert!(ActuatorGeometry::new(0.02, 0.01, 0.010, 0.015, 0.005, 0.0, 1).is_err());
        assert!(ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, -0.005, 0.0, 1).is_err());
        assert!(ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, 3.0, 1).is_err());
        assert!(ActuatorGeometry::new(0.02, 0.01, 0.015, 0.010, 0.005, 0.0, 0).is_err());
    }
}
