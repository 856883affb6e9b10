//! CSV ingestion and emission.
//!
//! Every input format is a two-column comma-separated file with a fixed,
//! unit-suffixed header. Loaders validate the header, require exactly two
//! numeric fields per row, and report failures with the 1-based line
//! number in the file (the header is line 1).

use crate::error::{CliError, CliResult};
use lssa_core::force::{AreaProfile, OperatingPoint};
use lssa_core::units::pa_to_kpa;
use lssa_core::UniaxialSample;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub const TENSILE_HEADER: &str = "strain,stress_mpa";
pub const FORCE_HEADER: &str = "displacement_mm,force_n";
pub const AREA_PROFILE_HEADER: &str = "displacement_mm,area_m2";
pub const SWEEP_HEADER: &str = "pressure_kpa,displacement_mm,force_n";

/// Parse a two-column CSV into `(line_number, a, b)` rows.
fn read_rows(path: &Path, expected_header: &str) -> CliResult<Vec<(usize, f64, f64)>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(CliError::Data(format!("{}: empty file", path.display())));
    };
    if header.trim() != expected_header {
        return Err(CliError::Data(format!(
            "{}: line 1: expected header `{expected_header}`, got `{}`",
            path.display(),
            header.trim()
        )));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 {
            return Err(CliError::Data(format!(
                "{}: line {line_no}: expected 2 columns, got {}",
                path.display(),
                fields.len()
            )));
        }
        let mut values = [0.0f64; 2];
        for (slot, field) in values.iter_mut().zip(&fields) {
            *slot = field.trim().parse().map_err(|_| {
                CliError::Data(format!(
                    "{}: line {line_no}: non-numeric field `{}`",
                    path.display(),
                    field.trim()
                ))
            })?;
            if !slot.is_finite() {
                return Err(CliError::Data(format!(
                    "{}: line {line_no}: non-finite value `{}`",
                    path.display(),
                    field.trim()
                )));
            }
        }
        rows.push((line_no, values[0], values[1]));
    }
    if rows.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    Ok(rows)
}

/// Load tensile samples from `strain,stress_mpa` rows. Stretch is
/// `1 + strain`; strains at or below -1 are rejected with their line
/// number. Samples come back sorted by stretch.
pub fn load_tensile_csv(path: &Path) -> CliResult<Vec<UniaxialSample>> {
    let mut samples = Vec::new();
    for (line_no, strain, stress) in read_rows(path, TENSILE_HEADER)? {
        let sample = UniaxialSample::from_engineering(strain, stress).map_err(|e| {
            CliError::Data(format!("{}: line {line_no}: {e}", path.display()))
        })?;
        samples.push(sample);
    }
    samples.sort_by(|a, b| a.stretch.total_cmp(&b.stretch));
    Ok(samples)
}

/// Load `(displacement mm, force N)` pairs from `displacement_mm,force_n`
/// rows.
pub fn load_force_csv(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    Ok(read_rows(path, FORCE_HEADER)?
        .into_iter()
        .map(|(_, y, f)| (y, f))
        .collect())
}

/// Load a calibrated area profile from `displacement_mm,area_m2` rows.
pub fn load_area_profile_csv(path: &Path) -> CliResult<AreaProfile> {
    let points = read_rows(path, AREA_PROFILE_HEADER)?
        .into_iter()
        .map(|(_, y, a)| (y, a))
        .collect();
    AreaProfile::new(points)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Emit sweep points as `pressure_kpa,displacement_mm,force_n`. Numbers
/// use Rust's shortest exact representation, so reloading reproduces the
/// values bit-for-bit (modulo the Pa/kPa factor).
pub fn write_sweep_csv<W: Write>(mut w: W, points: &[OperatingPoint]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for p in points {
        writeln!(w, "{},{},{}", pa_to_kpa(p.pressure), p.displacement, p.force)?;
    }
    Ok(())
}

/// Emit an area profile as `displacement_mm,area_m2`.
pub fn write_area_profile_csv<W: Write>(mut w: W, profile: &AreaProfile) -> io::Result<()> {
    writeln!(w, "{AREA_PROFILE_HEADER}")?;
    for &(y, a) in profile.points() {
        writeln!(w, "{y},{a}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn tensile_happy_path() {
        let f = write_temp("strain,stress_mpa\n0.0,0.0\n6.6,38.2\n0.5,1.1\n");
        let samples = load_tensile_csv(f.path()).unwrap();
        assert_eq!(samples.len(), 3);
        // sorted by stretch
        assert_eq!(samples[0].stretch, 1.0);
        assert_eq!(samples[0].stress, 0.0);
        assert_eq!(samples[2].stretch, 7.6);
    }

    #[test]
    fn tensile_rejects_bad_rows_with_line_numbers() {
        let f = write_temp("strain,stress_mpa\n0.1,2.0\nabc,3.0\n");
        let err = load_tensile_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");

        let f = write_temp("strain,stress_mpa\n-1.5,2.0\n");
        let err = load_tensile_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");

        let f = write_temp("strain,stress_mpa\n0.1\n");
        let err = load_tensile_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("2 columns"), "{err}");

        let f = write_temp("strain,stress_mpa\n0.1,inf\n");
        let err = load_tensile_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("non-finite"), "{err}");
    }

    #[test]
    fn tensile_rejects_empty_and_headerless() {
        let f = write_temp("");
        assert!(matches!(
            load_tensile_csv(f.path()),
            Err(CliError::Data(_))
        ));

        let f = write_temp("strain,stress_mpa\n");
        let err = load_tensile_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("no data rows"), "{err}");

        let f = write_temp("stretch,stress\n1.0,0.0\n");
        let err = load_tensile_csv(f.path()).unwrap_err();
        assert!(err.to_string().contains("expected header"), "{err}");
    }

    #[test]
    fn force_csv_loads() {
        let f = write_temp("displacement_mm,force_n\n0,-0.2246\n10,22.26571\n");
        let rows = load_force_csv(f.path()).unwrap();
        assert_eq!(rows, vec![(0.0, -0.2246), (10.0, 22.26571)]);
    }

    #[test]
    fn sweep_csv_round_trips_exactly() {
        let points = vec![
            OperatingPoint {
                pressure: 125.0e3,
                displacement: 0.0,
                force: 112.0,
            },
            OperatingPoint {
                pressure: 125.0e3,
                displacement: 36.24463771282052,
                force: -1.0e-7,
            },
        ];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &points).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_HEADER);
        for (line, p) in lines.zip(&points) {
            let cols: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            assert!((cols[0] * 1.0e3 - p.pressure).abs() < 1e-9);
            assert_eq!(cols[1], p.displacement);
            assert_eq!(cols[2], p.force);
        }
    }

    #[test]
    fn area_profile_csv_loads() {
        let f = write_temp("displacement_mm,area_m2\n0,8.942032e-4\n40,1.04050592e-3\n");
        let profile = load_area_profile_csv(f.path()).unwrap();
        assert_eq!(profile.points().len(), 2);
        assert_eq!(profile.area_at(0.0), 8.942032e-4);
    }
}
