// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! `manifest.json`: what was run, with which seed, and checksums of every
//! file written.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};

pub const FILE_NAME: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileDigest {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub base_seed: u64,
    pub prng: String,
    pub workers: usize,
    pub duration_seconds: f64,
    pub config: RunConfig,
    pub config_text: String,
    pub files: Vec<FileDigest>,
}

pub fn digest_file(path: &Path) -> Result<FileDigest> {
    let data = std::fs::read(path).map_err(|e| HarnessError::io(path, e))?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_owned();
    Ok(FileDigest { name, bytes: data.len() as u64, sha256: hex::encode(Sha256::digest(&data)) })
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(FILE_NAME);
        let text = serde_json::to_string_pretty(self).map_err(|e| HarnessError::format(&path, e))?;
        std::fs::write(&path, text + "\n").map_err(|e| HarnessError::io(&path, e))
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join(FILE_NAME);
        let text = std::fs::read_to_string(&path).map_err(|e| HarnessError::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::format(&path, e))
    }

    /// Checks that every listed file exists next to the manifest and matches
    /// its digest.
    pub fn verify(&self, dir: &Path) -> Result<()> {
        for f in &self.files {
            let actual = digest_file(&dir.join(&f.name))?;
            if actual != *f {
                return Err(HarnessError::Check(format!("{}: checksum mismatch", f.name)));
            }
        }
        Ok(())
    }
}
