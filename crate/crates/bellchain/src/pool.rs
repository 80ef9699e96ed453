// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Thread-pool executor.

use bellchain_core::Executor;
use rayon::prelude::*;

/// Rayon pool with a fixed number of workers.
pub struct Pool {
    pool: rayon::ThreadPool,
    workers: usize,
}

impl Pool {
    pub fn new(workers: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let workers = workers.max(1);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
        Ok(Self { pool, workers })
    }
}

impl Executor for Pool {
    fn map<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        if self.workers == 1 {
            return (0..len).map(f).collect();
        }
        self.pool.install(|| (0..len).into_par_iter().map(f).collect())
    }

    fn workers(&self) -> usize {
        self.workers
    }
}

/// Worker count when none is configured.
pub fn default_workers() -> usize {
    std::env::var("BELLCHAIN_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
