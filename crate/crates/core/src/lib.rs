//! Quasi-static force modeling for linear soft sleeve actuators (LSSAs).
//!
//! An LSSA converts internal pressure into axial extension through folded
//! sleeve walls. Its usable force is not a single blocked-force number: it
//! falls with extension as the folds flatten and the structure's axial
//! stiffness eats into the pressure-generated force. This crate models
//! that balance end to end:
//!
//! * [`material`]: incompressible hyperelastic strain-energy models
//!   (Neo-Hookean through five-parameter Mooney-Rivlin and Yeoh) with the
//!   uniaxial reduction and a Drucker-stability guard for fitted constants.
//! * [`fitting`]: linear least squares for both the material constants and
//!   the axial-stiffness polynomial, plus polynomial evaluation and
//!   differentiation.
//! * [`geometry`]: projected pressure areas of the cap and folded walls
//!   and pluggable fold-unfolding kinematics θ(y).
//! * [`force`]: the force balance `F_y = P·A_eff(y) - F_K(y)`, equilibrium
//!   and dead-band solves, and inverse calibration of effective areas from
//!   measured forces.
//! * [`experiments`]: virtual prescribed-extension and static-load rigs
//!   with embedded reference measurements and comparison metrics.
//!
//! Everything is quasi-static and immutable after construction; values may
//! be shared freely across threads.

pub mod error;
pub mod experiments;
pub mod fitting;
pub mod force;
pub mod geometry;
pub mod material;
pub mod units;

pub use error::{Error, Result};
pub use experiments::{
    compare_to_reference, prescribed_extension_sweep, static_load_sweep, ComparisonMetrics,
    ReferenceDataset, StaticLoadReference, SweptVariable,
};
pub use fitting::{fit_hyperelastic, fit_polynomial, rank_models, FitReport, Polynomial};
pub use force::{
    calibrate_area_profile, calibrate_effective_area, AreaProfile, ExtensionSolution,
    ExtensionStatus, LssaModel, OperatingPoint,
};
pub use geometry::{ActuatorGeometry, FoldKinematics, ThetaTable};
pub use material::{
    strain_invariants, HyperelasticParams, ModelFamily, StabilityReport, UniaxialSample,
};
