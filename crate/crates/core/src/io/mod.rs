//! File formats: JSON charts and reports, OBJ and CSV meshes.
//!
//! Every writer goes through [`write_atomic`], which writes a sibling temporary
//! file and renames it over the target.

pub mod chart_file;
pub mod mesh;
pub mod report;

use std::fs;
use std::path::Path;

use crate::error::Result;

pub use chart_file::{read_chart, write_chart, ChartFile, SCHEMA_VERSION};
pub use mesh::{write_csv, write_mesh, write_obj};
pub use report::{Check, Report};

/// Write `bytes` to `path` via a temporary file in the same directory and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, bytes)?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}
