//! Input resolution: files on disk first, then the bundled fixtures by file
//! name.

use ballq_core::fixtures;
use std::path::{Path, PathBuf};

/// Resolves file names referenced from inside other inputs.
#[derive(Clone, Debug, Default)]
pub struct Loader {
    dirs: Vec<PathBuf>,
}

impl Loader {
    pub fn bundled_only() -> Self {
        Loader { dirs: Vec::new() }
    }

    pub fn in_dir(dir: impl Into<PathBuf>) -> Self {
        Loader { dirs: vec![dir.into()] }
    }

    /// Text of `name`, searched in the loader's directories and then among
    /// the bundled fixtures.
    pub fn load(&self, name: &str) -> Option<String> {
        for d in &self.dirs {
            if let Ok(t) = std::fs::read_to_string(d.join(name)) {
                return Some(t);
            }
        }
        fixtures::get(name).map(String::from)
    }
}

/// Reads a top-level input. A path that does not exist falls back to the
/// bundled fixture with the same file name, so `examples/z2_abelian.arr`
/// works from any directory.
pub fn read_input(path: &str) -> Result<(String, Loader), String> {
    let p = Path::new(path);
    match std::fs::read_to_string(p) {
        Ok(text) => {
            let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
            Ok((text, Loader::in_dir(dir)))
        }
        Err(e) => {
            let bundled = p.file_name().and_then(|n| n.to_str()).and_then(fixtures::get);
            match bundled {
                Some(t) if e.kind() == std::io::ErrorKind::NotFound => Ok((t.to_string(), Loader::bundled_only())),
                _ => Err(format!("cannot read {path}: {e}")),
            }
        }
    }
}

/// The file name part of `path`, used to label diagnostics.
pub fn display_name(path: &str) -> String {
    path.to_string()
}
