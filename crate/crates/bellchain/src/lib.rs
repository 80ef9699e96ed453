// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Harness around `bellchain-core`: TOML configs, a rayon executor, CSV
//! outputs with run manifests, and SVG plots.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod plot;
pub mod pool;

pub use commands::{run, Command, Overrides, RunReport};
pub use error::{HarnessError, Result};
