//! TOML run configuration.
//!
//! The config describes one actuator: geometry (lengths in mm, angles in
//! degrees, converted at this boundary), a fold-kinematics selector, the
//! stiffness polynomial (either its four coefficients or a CSV to refit
//! from), and model options. Exactly one stiffness source must be present.
//!
//! ```toml
//! [geometry]
//! cap_outer_radius_mm = 20.0
//! cap_inner_radius_mm = 10.0
//! outer_wall_radius_mm = 15.0
//! inner_wall_radius_mm = 10.0
//! fold_length_mm = 5.0
//! fold_angle_deg = 30.0
//! n_folds = 1
//!
//! [kinematics]
//! model = "linear-unfold"        # constant-angle | linear-unfold | tabulated
//! # table = [[0.0, 30.0], [20.0, 60.0]]   # y_mm, theta_deg rows
//!
//! [stiffness]
//! a = 4.1481e-4                  # N/mm^3
//! b = 1.2865e-2                  # N/mm^2
//! c = 2.0789                     # N/mm
//! d = -0.2246                    # N
//! # csv = "stiffness.csv"        # alternative: refit from displacement_mm,force_n
//!
//! [model]
//! y_max_mm = 40.0
//! g = 9.81
//! y_op_mm = 0.0                  # holding displacement of the static-load rig
//! # area_profile_csv = "areas.csv"   # calibrated displacement_mm,area_m2 profile
//! ```
//!
//! The geometry block may be omitted when a calibrated area profile is
//! given; forces then come entirely from the profile.

use crate::error::{CliError, CliResult};
use crate::io::{load_area_profile_csv, load_force_csv};
use lssa_core::fitting::{fit_polynomial, Polynomial};
use lssa_core::geometry::{ActuatorGeometry, FoldKinematics, ThetaTable};
use lssa_core::units::{mm_to_m, STANDARD_GRAVITY};
use lssa_core::LssaModel;
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: Option<GeometryConfig>,
    pub kinematics: Option<KinematicsConfig>,
    pub stiffness: StiffnessConfig,
    #[serde(default)]
    pub model: ModelConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub cap_outer_radius_mm: f64,
    pub cap_inner_radius_mm: f64,
    pub outer_wall_radius_mm: f64,
    pub inner_wall_radius_mm: f64,
    pub fold_length_mm: f64,
    pub fold_angle_deg: f64,
    #[serde(default = "default_n_folds")]
    pub n_folds: u32,
}

fn default_n_folds() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KinematicsConfig {
    pub model: String,
    /// `(y_mm, theta_deg)` rows for the tabulated law.
    pub table: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StiffnessConfig {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
    /// Path to `displacement_mm,force_n` data to refit (degree 3).
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub y_max_mm: Option<f64>,
    pub g: Option<f64>,
    pub y_op_mm: Option<f64>,
    pub area_profile_csv: Option<PathBuf>,
}

/// A run configuration resolved into model objects.
#[derive(Debug)]
pub struct BuiltModel {
    pub model: LssaModel,
    /// Gravitational acceleration for mass-to-load conversion, m/s².
    pub gravity: f64,
    /// Holding displacement of the static-load rig, mm.
    pub y_op_mm: f64,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
    }

    /// Resolve the configuration into a model. Relative CSV paths are
    /// taken relative to `base_dir` (normally the config file's directory).
    pub fn build(&self, base_dir: &Path) -> CliResult<BuiltModel> {
        let resolve = |p: &PathBuf| -> PathBuf {
            if p.is_absolute() {
                p.clone()
            } else {
                base_dir.join(p)
            }
        };

        let stiffness = self.build_stiffness(&resolve)?;
        let geometry = self.geometry.as_ref().map(build_geometry).transpose()?;
        let kinematics = self.build_kinematics()?;

        let profile = self
            .model
            .area_profile_csv
            .as_ref()
            .map(|p| load_area_profile_csv(&resolve(p)))
            .transpose()?;

        let mut model = match (geometry, profile) {
            (Some(g), profile) => {
                let m = LssaModel::new(g, kinematics, stiffness)?;
                match profile {
                    Some(p) => m.with_area_profile(p),
                    None => m,
                }
            }
            (None, Some(p)) => LssaModel::calibrated(stiffness, p)?,
            (None, None) => {
                return Err(CliError::Data(
                    "config needs a [geometry] block or model.area_profile_csv".into(),
                ))
            }
        };
        if let Some(y_max) = self.model.y_max_mm {
            model = model.with_y_max(y_max)?;
        }

        let gravity = self.model.g.unwrap_or(STANDARD_GRAVITY);
        if !(gravity.is_finite() && gravity > 0.0) {
            return Err(CliError::Data(format!(
                "model.g must be positive, got {gravity}"
            )));
        }
        let y_op_mm = self.model.y_op_mm.unwrap_or(0.0);

        Ok(BuiltModel {
            model,
            gravity,
            y_op_mm,
        })
    }

    fn build_stiffness(&self, resolve: &dyn Fn(&PathBuf) -> PathBuf) -> CliResult<Polynomial> {
        let s = &self.stiffness;
        let coeffs = [s.a, s.b, s.c, s.d];
        let n_given = coeffs.iter().filter(|c| c.is_some()).count();
        match (n_given, &s.csv) {
            (4, None) => Ok(Polynomial::cubic(
                s.a.unwrap(),
                s.b.unwrap(),
                s.c.unwrap(),
                s.d.unwrap(),
            )),
            (0, Some(csv)) => {
                let samples = load_force_csv(&resolve(csv))?;
                let (poly, _) = fit_polynomial(&samples, 3)?;
                Ok(poly)
            }
            (0, None) => Err(CliError::Data(
                "[stiffness] needs either coefficients a,b,c,d or csv".into(),
            )),
            (4, Some(_)) => Err(CliError::Data(
                "[stiffness] must give exactly one of coefficients a,b,c,d or csv".into(),
            )),
            _ => Err(CliError::Data(
                "[stiffness] coefficients a,b,c,d must all be present".into(),
            )),
        }
    }

    fn build_kinematics(&self) -> CliResult<FoldKinematics> {
        let Some(kin) = &self.kinematics else {
            return Ok(FoldKinematics::LinearUnfold);
        };
        match kin.model.as_str() {
            "constant-angle" => Ok(FoldKinematics::ConstantAngle),
            "linear-unfold" => Ok(FoldKinematics::LinearUnfold),
            "tabulated" => {
                let Some(table) = &kin.table else {
                    return Err(CliError::Data(
                        "kinematics.model = \"tabulated\" needs kinematics.table".into(),
                    ));
                };
                let points = table
                    .iter()
                    .map(|row| (row[0], row[1].to_radians()))
                    .collect();
                Ok(FoldKinematics::Tabulated(ThetaTable::new(points)?))
            }
            other => Err(CliError::Data(format!(
                "unknown kinematics model `{other}` (expected constant-angle, linear-unfold or tabulated)"
            ))),
        }
    }
}

fn build_geometry(g: &GeometryConfig) -> CliResult<ActuatorGeometry> {
    Ok(ActuatorGeometry::new(
        mm_to_m(g.cap_outer_radius_mm),
        mm_to_m(g.cap_inner_radius_mm),
        mm_to_m(g.outer_wall_radius_mm),
        mm_to_m(g.inner_wall_radius_mm),
        mm_to_m(g.fold_length_mm),
        g.fold_angle_deg.to_radians(),
        g.n_folds,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GEOMETRIC: &str = r#"
[geometry]
cap_outer_radius_mm = 20.0
cap_inner_radius_mm = 10.0
outer_wall_radius_mm = 15.0
inner_wall_radius_mm = 10.0
fold_length_mm = 5.0
fold_angle_deg = 0.0

[kinematics]
model = "constant-angle"

[stiffness]
a = 4.1481e-4
b = 1.2865e-2
c = 2.0789
d = -0.2246
"#;

    #[test]
    fn geometric_config_builds() {
        let cfg: RunConfig = toml::from_str(GEOMETRIC).unwrap();
        let built = cfg.build(Path::new(".")).unwrap();
        assert_eq!(built.gravity, STANDARD_GRAVITY);
        assert_eq!(built.y_op_mm, 0.0);
        let (f1, _, _) = built.model.pressure_components(125.0e3, 0.0).unwrap();
        assert!((f1 - 117.80972450961725).abs() < 1e-9);
    }

    #[test]
    fn stiffness_sources_are_exclusive() {
        let text = GEOMETRIC.replace(
            "d = -0.2246",
            "d = -0.2246\ncsv = \"stiffness.csv\"",
        );
        let cfg: RunConfig = toml::from_str(&text).unwrap();
        assert!(matches!(
            cfg.build(Path::new(".")),
            Err(CliError::Data(_))
        ));

        let cfg: RunConfig = toml::from_str(
            "[stiffness]\na = 1.0\nb = 2.0\n\n[model]\ny_max_mm = 40.0\n",
        )
        .unwrap();
        assert!(matches!(cfg.build(Path::new(".")), Err(CliError::Data(_))));
    }

    #[test]
    fn missing_area_source_is_rejected() {
        let cfg: RunConfig =
            toml::from_str("[stiffness]\na = 0.0\nb = 0.0\nc = 2.0\nd = 0.0\n").unwrap();
        let err = cfg.build(Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("geometry"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = GEOMETRIC.replace("fold_angle_deg", "fold_angle");
        assert!(toml::from_str::<RunConfig>(&text).is_err());
    }

    #[test]
    fn tabulated_kinematics_in_degrees() {
        let text = GEOMETRIC.replace(
            "model = \"constant-angle\"",
            "model = \"tabulated\"\ntable = [[0.0, 0.0], [20.0, 90.0]]",
        );
        let cfg: RunConfig = toml::from_str(&text).unwrap();
        let built = cfg.build(Path::new(".")).unwrap();
        // at 20 mm the folds are flat: wall projections vanish
        let area = built.model.effective_area(20.0).unwrap();
        let cap = built.model.geometry().unwrap().cap_area();
        assert!((area - cap).abs() / cap < 1e-12);
    }
}
