use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cr_cli::{run_file, Stages, EXIT_INPUT};

/// Verify a holomorphic map between model CR hypersurfaces.
#[derive(Parser, Debug)]
#[command(name = "crmap", version)]
struct Args {
    /// Map-definition file (TOML).
    file: PathBuf,
    /// Solve the mapping equation and classify the side.
    #[arg(long)]
    check: bool,
    /// Compute the Ahlfors tensor.
    #[arg(long)]
    ahlfors: bool,
    /// Compute the generic rank and ranks at points.
    #[arg(long)]
    rank: bool,
    /// Check the isometric-extension criterion.
    #[arg(long)]
    isometry: bool,
    /// Sample points file (TOML with `[[point]]` tables).
    #[arg(long)]
    points: Option<PathBuf>,
    /// Weighted truncation order for series maps.
    #[arg(long)]
    order: Option<u32>,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let stages = Stages { check: args.check, ahlfors: args.ahlfors, rank: args.rank, isometry: args.isometry };
    let report = match run_file(&args.file, args.points.as_deref(), args.order, stages) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("crmap: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    println!("{}", report.summary());
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("crmap: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
