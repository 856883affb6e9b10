//! Subcommand implementations.
//!
//! Sweep-style commands write CSV and a human-readable summary. With
//! `--output` the CSV goes to the file and the summary to stdout; without
//! it the CSV itself goes to stdout (for piping) and the summary moves to
//! stderr.

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::io;
use crate::validate;
use lssa_core::experiments::{prescribed_extension_sweep, static_load_sweep};
use lssa_core::fitting::{fit_hyperelastic, fit_polynomial};
use lssa_core::force::{calibrate_area_profile, OperatingPoint};
use lssa_core::material::ModelFamily;
use lssa_core::units::{kpa_to_pa, mass_to_load, pa_to_kpa};
use lssa_core::{AreaProfile, ExtensionStatus};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Inclusive `start:stop:step` grid.
pub fn parse_range(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "range must be start:stop:step, got `{spec}`"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("non-numeric range component `{p}`")))
        })
        .collect::<CliResult<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !nums.iter().all(|v| v.is_finite()) || step <= 0.0 || stop < start {
        return Err(CliError::Usage(format!(
            "range needs start <= stop and step > 0, got `{spec}`"
        )));
    }
    let mut grid = Vec::new();
    let n = ((stop - start) / step).round() as usize + 1;
    for k in 0..n.max(1) {
        let v = start + step * k as f64;
        if v <= stop + 1e-9 * step {
            grid.push(v.min(stop));
        }
    }
    Ok(grid)
}

fn build_from_config(config: &Path) -> CliResult<crate::config::BuiltModel> {
    let cfg = RunConfig::load(config)?;
    let base = config.parent().unwrap_or(Path::new("."));
    cfg.build(base)
}

/// Write CSV + summary per the `--output` convention.
fn emit_csv_and_summary(
    output: Option<&PathBuf>,
    write_csv: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
    summary: &str,
) -> CliResult<()> {
    match output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            write_csv(&mut w).map_err(|e| CliError::Data(e.to_string()))?;
            w.flush().map_err(|e| CliError::Data(e.to_string()))?;
            print!("{summary}");
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            write_csv(&mut w).map_err(|e| CliError::Data(e.to_string()))?;
            eprint!("{summary}");
        }
    }
    Ok(())
}

pub fn fit_material(input: &Path, model: &str) -> CliResult<()> {
    let family: ModelFamily = model
        .parse()
        .map_err(|e: lssa_core::Error| CliError::Usage(e.to_string()))?;
    let samples = io::load_tensile_csv(input)?;
    let (params, report) = fit_hyperelastic(&samples, family)?;

    println!("fitted {} constants (MPa):", family);
    for (name, value) in family.constant_names().iter().zip(params.constants()) {
        println!("  {name:<4} = {value:.6e}");
    }
    let (mu0, e0) = params.small_strain_moduli();
    println!("small-strain moduli: mu0 = {mu0:.4} MPa, E0 = {e0:.4} MPa");
    println!(
        "fit: n = {}, residual norm = {:.3e} MPa, r^2 = {:.8}, condition ~ {:.2e}",
        report.n_samples, report.residual_norm, report.r_squared, report.condition_estimate
    );

    let lo = samples.first().map(|s| s.stretch).unwrap().max(1.0);
    let hi = samples.last().map(|s| s.stretch).unwrap();
    if hi > lo {
        let stability = params.stability_scan(lo, hi, 500)?;
        match stability.first_violation {
            None => println!("stability: dσ/dλ > 0 across λ in [{lo:.3}, {hi:.3}]"),
            Some(at) => println!(
                "stability: WARNING, softening at λ ≈ {at:.4}: constants are non-physical there"
            ),
        }
    }
    Ok(())
}

pub fn fit_stiffness(input: &Path, degree: usize) -> CliResult<()> {
    if degree == 0 || degree > 3 {
        return Err(CliError::Usage(format!(
            "stiffness degree must be 1..=3, got {degree}"
        )));
    }
    let samples = io::load_force_csv(input)?;
    let (poly, report) = fit_polynomial(&samples, degree)?;

    println!("fitted stiffness polynomial (y in mm, force in N):");
    for (k, c) in poly.coefficients().iter().enumerate().rev() {
        println!("  y^{k}: {c:.6e}");
    }
    let rate = poly.differentiate();
    println!("axial stiffness dF/dy (N/mm):");
    for (k, c) in rate.coefficients().iter().enumerate().rev() {
        println!("  y^{k}: {c:.6e}");
    }
    println!(
        "fit: n = {}, residual norm = {:.3e} N, r^2 = {:.8}, condition ~ {:.2e}",
        report.n_samples, report.residual_norm, report.r_squared, report.condition_estimate
    );
    Ok(())
}

pub fn predict(config: &Path, pressure_kpa: f64, displacement_mm: f64, load_kg: f64) -> CliResult<()> {
    if !(pressure_kpa.is_finite() && pressure_kpa >= 0.0) {
        return Err(CliError::Usage(format!(
            "pressure must be non-negative, got {pressure_kpa} kPa"
        )));
    }
    if !(load_kg.is_finite() && load_kg >= 0.0) {
        return Err(CliError::Usage(format!(
            "load must be non-negative, got {load_kg} kg"
        )));
    }
    let built = build_from_config(config)?;
    let pressure = kpa_to_pa(pressure_kpa);
    let load = mass_to_load(load_kg, built.gravity);

    let net = built.model.net_force(pressure, displacement_mm)?;
    let area = built.model.effective_area(displacement_mm)?;
    let stiffness_force = built.model.stiffness().evaluate(displacement_mm);
    let k_axial = built.model.axial_stiffness(displacement_mm)?;

    println!("operating point: P = {pressure_kpa} kPa, y = {displacement_mm} mm, load = {load_kg} kg ({load:.4} N)");
    println!("  effective area         {area:.6e} m^2");
    println!("  pressure force         {:.4} N", pressure * area);
    println!("  stiffness force F_K    {stiffness_force:.4} N");
    println!("  net force F_y          {net:.4} N");
    println!("  net beyond load        {:.4} N", net - load);
    println!("  axial stiffness K      {k_axial:.4} N/mm");
    if built.model.geometry().is_some() {
        let (f1, f2, f3) = built.model.pressure_components(pressure, displacement_mm)?;
        println!("  cap component F1       {f1:.4} N");
        println!("  outer-wall F2y         {f2:.4} N");
        println!("  inner-wall F3y         {f3:.4} N (opposes extension)");
    }
    let dead_band = built.model.dead_band_pressure(load, built.y_op_mm)?;
    println!(
        "  dead-band pressure     {:.4} kPa at y_op = {} mm",
        pa_to_kpa(dead_band),
        built.y_op_mm
    );
    let solution = built.model.free_extension(pressure, load)?;
    let status = match solution.status {
        ExtensionStatus::Equilibrium => "equilibrium",
        ExtensionStatus::Blocked => "blocked (cannot hold the load)",
        ExtensionStatus::Saturated => "saturated (working-range bound)",
    };
    println!(
        "  free extension         {:.4} mm ({status})",
        solution.displacement
    );
    Ok(())
}

pub fn sweep_extension(
    config: &Path,
    pressure_kpa: f64,
    range_mm: &str,
    output: Option<&PathBuf>,
) -> CliResult<()> {
    if !(pressure_kpa.is_finite() && pressure_kpa >= 0.0) {
        return Err(CliError::Usage(format!(
            "pressure must be non-negative, got {pressure_kpa} kPa"
        )));
    }
    let grid = parse_range(range_mm)?;
    let built = build_from_config(config)?;
    let pressure = kpa_to_pa(pressure_kpa);
    let sweep = prescribed_extension_sweep(&built.model, pressure, &grid)?;

    let first = sweep.first().map(|p| p.force).unwrap_or(0.0);
    let last = sweep.last().map(|p| p.force).unwrap_or(0.0);
    let solution = built.model.free_extension(pressure, 0.0)?;
    let summary = format!(
        "prescribed-extension sweep: P = {pressure_kpa} kPa, {} points over [{}, {}] mm\n\
         force {first:.4} N at start, {last:.4} N at end; zero-force extension {:.4} mm ({:?})\n",
        sweep.len(),
        grid.first().unwrap(),
        grid.last().unwrap(),
        solution.displacement,
        solution.status
    );
    emit_csv_and_summary(output, |w| io::write_sweep_csv(w, &sweep), &summary)
}

pub fn sweep_pressure(
    config: &Path,
    load_kg: f64,
    range_kpa: &str,
    output: Option<&PathBuf>,
) -> CliResult<()> {
    if !(load_kg.is_finite() && load_kg >= 0.0) {
        return Err(CliError::Usage(format!(
            "load must be non-negative, got {load_kg} kg"
        )));
    }
    let grid_kpa = parse_range(range_kpa)?;
    let built = build_from_config(config)?;
    let load = mass_to_load(load_kg, built.gravity);
    let grid: Vec<f64> = grid_kpa.iter().map(|&p| kpa_to_pa(p)).collect();
    let sweep = static_load_sweep(&built.model, load, &grid, built.y_op_mm)?;

    let dead_band = built.model.dead_band_pressure(load, built.y_op_mm)?;
    let last = sweep.last().map(|p| p.force).unwrap_or(0.0);
    let summary = format!(
        "static-load sweep: load = {load_kg} kg ({load:.4} N), y_op = {} mm, {} points over [{}, {}] kPa\n\
         dead-band pressure {:.4} kPa; force {last:.4} N at the top of the range\n",
        built.y_op_mm,
        sweep.len(),
        grid_kpa.first().unwrap(),
        grid_kpa.last().unwrap(),
        pa_to_kpa(dead_band)
    );
    emit_csv_and_summary(output, |w| io::write_sweep_csv(w, &sweep), &summary)
}

pub fn calibrate(
    config: &Path,
    measured: &Path,
    pressure_kpa: f64,
    output: Option<&PathBuf>,
) -> CliResult<()> {
    if !(pressure_kpa.is_finite() && pressure_kpa > 0.0) {
        return Err(CliError::Usage(format!(
            "calibration pressure must be positive, got {pressure_kpa} kPa"
        )));
    }
    let built = build_from_config(config)?;
    let rows = io::load_force_csv(measured)?;
    let pressure = kpa_to_pa(pressure_kpa);
    let points: Vec<OperatingPoint> = rows
        .iter()
        .map(|&(displacement, force)| OperatingPoint {
            pressure,
            displacement,
            force,
        })
        .collect();
    let profile = calibrate_area_profile(&points, built.model.stiffness())?;

    let warning = if profile.is_non_increasing() {
        String::new()
    } else {
        "WARNING: calibrated areas rise with displacement somewhere: inconsistent with monotone unfolding\n"
            .to_string()
    };
    let areas: Vec<f64> = profile.points().iter().map(|&(_, a)| a).collect();
    let summary = format!(
        "calibrated {} effective areas at {pressure_kpa} kPa, range [{:.4e}, {:.4e}] m^2\n{warning}",
        areas.len(),
        areas.iter().cloned().fold(f64::INFINITY, f64::min),
        areas.iter().cloned().fold(0.0f64, f64::max),
    );
    emit_csv_and_summary(output, |w| io::write_area_profile_csv(w, &profile), &summary)
}

/// Run the embedded validation suite; true means everything passed.
pub fn validate_cmd() -> CliResult<()> {
    let outcome = validate::run_validation();
    print!("{}", outcome.report);
    if outcome.passed {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "{} of {} validation checks failed",
            outcome.failures, outcome.checks
        )))
    }
}

/// Warn about a non-monotone area profile in calibrate output; kept
/// separate for reuse in tests.
pub fn profile_is_suspicious(profile: &AreaProfile) -> bool {
    !profile.is_non_increasing()
}
