//! Profile records, surface meshes and plots.
//!
//! Everything here is deterministic: the same input produces the same bytes.
//! Files are written to a temporary sibling and renamed into place.

mod mesh;
mod plot;
mod record;

pub use mesh::{curvature_residual, SurfaceMesh};
pub use plot::{plot_profiles, Envelope, Overlay, PlotOptions, Series};
pub use record::{
    export_csv, import_json, profile_csv, profile_record, Diagnostics, ProfileRecord, CSV_HEADER,
};

use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// Writes `bytes` to `path` atomically.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
