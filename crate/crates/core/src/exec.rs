// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Fan-out abstraction for embarrassingly parallel loops.
//!
//! The core crate never spawns threads. Sweeps and Monte Carlo studies hand an
//! index range to an [`Executor`], which must return the results in index
//! order. Every reduction downstream runs over that ordered vector, so results
//! do not depend on how many workers produced them.

use alloc::vec::Vec;

pub trait Executor: Sync {
    /// Evaluates `f(0), f(1), …, f(len - 1)` and returns them in index order.
    fn map<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;

    /// Number of workers, for bookkeeping only.
    fn workers(&self) -> usize {
        1
    }
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl Executor for Serial {
    fn map<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..len).map(f).collect()
    }
}
