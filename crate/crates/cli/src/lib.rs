//! Front end for the `crmap` tool: map-definition files, an expression
//! parser and the verification pipeline.

pub mod definition;
pub mod parse;
pub mod pipeline;

use std::path::{Path, PathBuf};

pub use definition::{InputError, MapDefinition};
pub use pipeline::{run_pipeline, Report, Stages};

/// Exit code for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

/// Loads a definition (and optional points file) and runs the pipeline.
pub fn run_file(path: &Path, points: Option<&Path>, order: Option<u32>, stages: Stages) -> Result<Report, InputError> {
    let def = MapDefinition::load(path)?;
    let resolved = def.resolve(order)?;
    let pts = match points {
        Some(p) => definition::load_points(p, resolved.map.source())?,
        None => Vec::new(),
    };
    let mut report = run_pipeline(&def, &resolved.map, &pts, stages);
    if report.name.is_none() {
        report.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(report)
}

/// The definition files shipped with the crate.
pub fn bundled_maps() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("maps");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .map(|rd| rd.filter_map(|e| e.ok().map(|e| e.path())).collect())
        .unwrap_or_default();
    out.retain(|p| p.extension().is_some_and(|e| e == "toml") && !p.to_string_lossy().ends_with(".points.toml"));
    out.sort();
    out
}
