//! `ctrkit` — concentric-tube robot mechanics and design from the command
//! line: equilibrium prediction, bending-trial verification, circle fitting
//! of digitized centerlines, tensile and fatigue data reduction, and
//! printable design-space search.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ctrkit",
    version,
    about = "Mechanics and design toolkit for 3D-printed concentric-tube robots"
)]
struct Cli {
    /// Write results as CSV to this path
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Print the run report as JSON instead of the plain summary
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predict equilibrium curvature and shape of a nested tube set
    Predict {
        /// Tube-set JSON file
        tubes: PathBuf,
        /// Material catalog JSON file
        materials: PathBuf,
        /// Sampling step for shape export [mm]
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        /// Write the sampled centerline as CSV
        #[arg(long, value_name = "PATH")]
        shape_csv: Option<PathBuf>,
        /// Write the centerline as an SVG polyline (1 px = 1 mm)
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Recompute the embedded in-plane bending trials against published values
    Verify,
    /// Fit a circle to digitized centerline points
    FitCircle {
        /// Points CSV file with header x_mm,y_mm
        points: PathBuf,
        /// Exact circle through exactly three points
        #[arg(long, conflicts_with = "lsq")]
        three_point: bool,
        /// Algebraic least-squares fit (the default)
        #[arg(long)]
        lsq: bool,
    },
    /// Reduce a tensile stress-strain record to material parameters
    Tensile {
        /// Tensile CSV file with header strain,stress_mpa
        csv: PathBuf,
        /// Modulus fit window [strain]
        #[arg(long, default_value_t = ctrkit::testdata::DEFAULT_FIT_WINDOW_STRAIN)]
        window: f64,
        /// Proportional-limit relative deviation tolerance
        #[arg(long, default_value_t = ctrkit::testdata::DEFAULT_DEVIATION_TOL)]
        tol: f64,
    },
    /// Reduce a fatigue log to curvature retention and a plastic-set verdict
    Fatigue {
        /// Fatigue CSV file with header cycle,radius_mm
        csv: PathBuf,
        /// Tube-set JSON file (the outermost tube is the test article)
        tubes: PathBuf,
        /// Material catalog JSON file
        materials: PathBuf,
    },
    /// Search the printable design space for pairs hitting a target radius
    Design {
        /// Target equilibrium radius [mm]
        #[arg(long, value_name = "MM")]
        target_radius: f64,
        /// Design constraints JSON; defaults to the demonstrated envelope
        #[arg(long, value_name = "PATH")]
        constraints: Option<PathBuf>,
        /// Outer-diameter grid step [mm]
        #[arg(long, value_name = "MM")]
        od_step: Option<f64>,
        /// Wall-thickness grid step [mm]
        #[arg(long, value_name = "MM")]
        wall_step: Option<f64>,
        /// Number of log-spaced precurvature radii
        #[arg(long, value_name = "N")]
        radius_count: Option<usize>,
        /// Material catalog JSON (defaults to built-in MJF Nylon-12)
        #[arg(long, value_name = "PATH")]
        materials: Option<PathBuf>,
        /// Material name to search with
        #[arg(long, value_name = "NAME")]
        material: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    let out = match &cli.command {
        Command::Predict {
            tubes,
            materials,
            step,
            shape_csv,
            svg,
        } => commands::predict(tubes, materials, *step, shape_csv.as_deref(), svg.as_deref())?,
        Command::Verify => commands::verify()?,
        Command::FitCircle {
            points,
            three_point,
            lsq: _,
        } => commands::fit_circle(points, *three_point)?,
        Command::Tensile { csv, window, tol } => commands::tensile(csv, *window, *tol)?,
        Command::Fatigue {
            csv,
            tubes,
            materials,
        } => commands::fatigue(csv, tubes, materials)?,
        Command::Design {
            target_radius,
            constraints,
            od_step,
            wall_step,
            radius_count,
            materials,
            material,
        } => commands::design(
            *target_radius,
            constraints.as_deref(),
            *od_step,
            *wall_step,
            *radius_count,
            materials.as_deref(),
            material.as_deref(),
        )?,
    };

    if cli.json {
        print_line(&out.report.to_json());
    } else {
        for line in &out.summary_lines {
            print_line(line);
        }
        for warning in &out.report.warnings {
            print_line(&format!("warning: {warning}"));
        }
    }
    if let Some(path) = &cli.output {
        std::fs::write(path, &out.csv).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

/// Print to stdout, exiting quietly if the reader closed the pipe.
fn print_line(line: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{line}").is_err() {
        std::process::exit(0);
    }
}
