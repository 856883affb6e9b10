//! Unit conventions and boundary conversions.
//!
//! The core keeps one unit per quantity: lengths in meters, pressures in
//! pascals, forces in newtons, areas in square meters. The deliberate
//! exception is axial displacement, which is millimeters throughout because
//! the axial-stiffness polynomial is fitted in mm/N and its coefficient
//! magnitudes only make sense in those units. Every conversion between the
//! two length scales goes through the helpers below so the factor lives in
//! exactly one place.

pub const MM_PER_M: f64 = 1000.0;

/// Standard gravitational acceleration, m/s², used to convert hanging
/// masses to loads. Callers may substitute a local value.
pub const STANDARD_GRAVITY: f64 = 9.81;

pub fn mm_to_m(mm: f64) -> f64 {
    mm / MM_PER_M
}

pub fn m_to_mm(m: f64) -> f64 {
    m * MM_PER_M
}

pub fn kpa_to_pa(kpa: f64) -> f64 {
    kpa * 1.0e3
}

pub fn pa_to_kpa(pa: f64) -> f64 {
    pa / 1.0e3
}

/// Weight of a hanging mass, N.
pub fn mass_to_load(mass_kg: f64, gravity: f64) -> f64 {
    mass_kg * gravity
}
