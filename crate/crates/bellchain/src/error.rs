// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

/// Harness failure, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("invalid input: {0}")]
    Model(#[from] bellchain_core::Error),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{0}")]
    Check(String),

    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl HarnessError {
    /// 1 for rejected input, 2 for failures while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Config { .. } | HarnessError::Model(_) | HarnessError::Invalid(_) => 1,
            _ => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    pub fn format(path: impl Into<PathBuf>, message: impl std::fmt::Display) -> Self {
        HarnessError::Format { path: path.into(), message: message.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
