// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Validation and numerical failures reported by the core crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("chain needs at least 4 backbone qubits, got n_chain = {0}")]
    ChainTooShort(usize),
    #[error("standard chain cannot carry branch couplings (j_a_tilde = {j_a_tilde}, j_b_tilde = {j_b_tilde})")]
    BranchCouplingOnStandard { j_a_tilde: f64, j_b_tilde: f64 },
    #[error("`{0}` must be finite")]
    NonFinite(&'static str),
    #[error("edge multiplier #{index} = {value} must be finite and positive")]
    BadMultiplier { index: usize, value: f64 },
    #[error("expected {expected} edge multipliers, got {got}")]
    MultiplierCount { expected: usize, got: usize },
    #[error("disorder can only be sampled from a clean chain")]
    NotClean,
    #[error("disorder strength p = {0} must lie in [0, 1)")]
    DisorderOutOfRange(f64),
    #[error("realization index {index} out of range (n_realizations = {n_realizations})")]
    RealizationOutOfRange { index: u64, n_realizations: u64 },
    #[error("n_realizations must be positive")]
    NoRealizations,
    #[error("perturbed amplitude (1 + delta_alpha)/sqrt(2) = {0} exceeds 1")]
    AmplitudeOutOfRange(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("density matrix is not positive semidefinite (eigenvalue {0})")]
    NotPositive(f64),
    #[error("concurrence {0} outside [0, 1]")]
    ConcurrenceOutOfRange(f64),
    #[error("full-space oracle is limited to {limit} qubits, chain has {qubits}")]
    OracleTooLarge { qubits: usize, limit: usize },
    #[error("evolution time must be non-negative and finite, got {0}")]
    BadTime(f64),
    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(&'static str),
    #[error("empty coupling grid: jm_lo = {lo} > jm_hi = {hi}")]
    EmptyGrid { lo: f64, hi: f64 },
    #[error("sweep template must be a clean chain")]
    TemplateNotClean,
    #[error("{0}")]
    Invalid(&'static str),
}
