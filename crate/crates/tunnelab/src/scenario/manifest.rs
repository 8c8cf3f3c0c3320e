//! Run manifests: config echo, version, per-output checksums, timings.
//!
//! The manifest is written last and atomically (temp file + rename in the
//! same directory), so a manifest on disk always refers to complete
//! outputs. Checksums cover the data files only; timings vary run to run
//! and live in clearly marked lines that tooling can ignore.

use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::error::Result;

#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone)]
pub struct RunManifest {
    pub scenario: String,
    pub version: String,
    pub config_echo: String,
    pub outputs: Vec<OutputRecord>,
    pub wall_clock: Duration,
    pub warnings: Vec<String>,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let data = std::fs::read(path)?;
    let mut h = Sha256::new();
    h.update(&data);
    Ok(format!("{:x}", h.finalize()))
}

impl RunManifest {
    /// Render as plain text.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("scenario: {}\n", self.scenario));
        s.push_str(&format!("version: {}\n", self.version));
        s.push_str(&format!(
            "wall_clock_ms: {}\n",
            self.wall_clock.as_millis()
        ));
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        for o in &self.outputs {
            s.push_str(&format!(
                "output: {}  sha256: {}\n",
                o.path.display(),
                o.sha256
            ));
        }
        s.push_str("config:\n");
        for line in self.config_echo.lines() {
            s.push_str(&format!("  | {line}\n"));
        }
        s
    }

    /// Write `manifest.txt` into `dir` atomically.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let tmp = dir.join(".manifest.txt.tmp");
        let fin = dir.join("manifest.txt");
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(self.render().as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, &fin)?;
        Ok(fin)
    }
}
