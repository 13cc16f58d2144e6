//! All-or-nothing output directories: files are written to a sibling
//! staging directory that replaces the target only once everything
//! succeeded.

use std::fs;
use std::path::{Path, PathBuf};

use ornithoplan::{Error, Result};

pub struct Staged {
    target: PathBuf,
    staging: PathBuf,
}

impl Staged {
    /// Fails if `target` exists and is not empty, unless `force`.
    pub fn prepare(target: &Path, force: bool) -> Result<Self> {
        if target.exists() && !force && fs::read_dir(target)?.next().is_some() {
            return Err(Error::Config(format!(
                "output directory {} is not empty (use --force to replace it)",
                target.display()
            )));
        }
        let name = target
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "out".into());
        let staging = target.with_file_name(format!(".{name}.partial-{}", std::process::id()));
        Ok(Self {
            target: target.to_path_buf(),
            staging,
        })
    }

    pub fn commit(self, write: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
        if let Some(parent) = self.staging.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        fs::create_dir_all(&self.staging)?;
        if let Err(e) = write(&self.staging) {
            let _ = fs::remove_dir_all(&self.staging);
            return Err(e);
        }
        let swap = || -> std::io::Result<()> {
            if self.target.exists() {
                fs::remove_dir_all(&self.target)?;
            }
            fs::rename(&self.staging, &self.target)
        };
        swap().map_err(|e| {
            let _ = fs::remove_dir_all(&self.staging);
            Error::Io(e)
        })
    }
}
