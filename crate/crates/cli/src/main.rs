use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use lssa_cli::commands;
use std::path::PathBuf;
use std::process::ExitCode;

/// Quasi-static force analysis for linear soft sleeve actuators.
#[derive(Parser)]
#[command(name = "lssa", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit hyperelastic material constants to tensile data.
    FitMaterial {
        /// CSV file with header `strain,stress_mpa`.
        #[arg(long)]
        input: PathBuf,
        /// Model family: nh | mr2 | mr3 | mr5 | yeoh3.
        #[arg(long)]
        model: String,
    },
    /// Fit the axial-stiffness polynomial to force-displacement data.
    FitStiffness {
        /// CSV file with header `displacement_mm,force_n`.
        #[arg(long)]
        input: PathBuf,
        /// Polynomial degree (1..=3).
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Evaluate the force balance at one operating point.
    Predict {
        #[arg(long)]
        config: PathBuf,
        /// Internal pressure, kPa.
        #[arg(long)]
        pressure: f64,
        /// Axial displacement, mm.
        #[arg(long)]
        displacement: f64,
        /// External load, kg.
        #[arg(long, default_value_t = 0.0)]
        load: f64,
    },
    /// Force-displacement sweep at constant pressure.
    SweepExtension {
        #[arg(long)]
        config: PathBuf,
        /// Internal pressure, kPa.
        #[arg(long)]
        pressure: f64,
        /// Displacement grid `start:stop:step` in mm.
        #[arg(long)]
        range: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Force-pressure sweep under a static load.
    SweepPressure {
        #[arg(long)]
        config: PathBuf,
        /// External load, kg.
        #[arg(long)]
        load: f64,
        /// Pressure grid `start:stop:step` in kPa.
        #[arg(long)]
        range: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Calibrate an effective-area profile from measured forces.
    Calibrate {
        #[arg(long)]
        config: PathBuf,
        /// Measured CSV with header `displacement_mm,force_n`.
        #[arg(long)]
        measured: PathBuf,
        /// Pressure the measurements were taken at, kPa.
        #[arg(long)]
        pressure: f64,
        /// Write the profile CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the embedded-reference validation suite.
    Validate,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    let result = match &cli.command {
        Command::FitMaterial { input, model } => commands::fit_material(input, model),
        Command::FitStiffness { input, degree } => commands::fit_stiffness(input, *degree),
        Command::Predict {
            config,
            pressure,
            displacement,
            load,
        } => commands::predict(config, *pressure, *displacement, *load),
        Command::SweepExtension {
            config,
            pressure,
            range,
            output,
        } => commands::sweep_extension(config, *pressure, range, output.as_ref()),
        Command::SweepPressure {
            config,
            load,
            range,
            output,
        } => commands::sweep_pressure(config, *load, range, output.as_ref()),
        Command::Calibrate {
            config,
            measured,
            pressure,
            output,
        } => commands::calibrate(config, measured, *pressure, output.as_ref()),
        Command::Validate => commands::validate_cmd(),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
