// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Transport of a Bell pair through an XX spin chain with two branch qubits.
//!
//! The crate works entirely inside the single-excitation sector, where a chain
//! of `n` qubits evolves under an `n × n` real symmetric coupling matrix. It
//! provides:
//!
//! - [`chain`]: topologies (standard linear or branched), coupling sets and
//!   seeded static-disorder realizations.
//! - [`evolution`]: the single-excitation generator, its spectral propagator,
//!   exact amplitude propagation and a dense full-Hilbert-space oracle.
//! - [`spectrum`]: a reduced spectral form that only tracks the sender and
//!   receiver sites, used by the sweeps and Monte Carlo studies.
//! - [`measures`]: the receiver-pair reduced state, concurrence (closed form
//!   and general Wootters), entanglement of formation and fidelities.
//! - [`sweep`]: the coarse-then-refined grid search over `J_m` and readout time.
//! - [`experiments`]: disorder, input-perturbation, configuration and
//!   single-excitation campaigns.
//!
//! All times are dimensionless (`Jt/ħ`) and all couplings are in units of `J`.
//! The crate is `no_std` and only needs `alloc`; parallel fan-out is injected
//! through the [`exec::Executor`] trait.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chain;
pub mod error;
pub mod evolution;
pub mod exec;
pub mod experiments;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod rng;
pub mod spectrum;
pub mod sweep;

mod math;

pub use chain::{ChainKind, ChainSpec, CouplingSet, DisorderSpec, Edge, Site};
pub use error::{Error, Result};
pub use evolution::{AmplitudeVector, Generator, InitialState, SpectralPropagator};
pub use exec::{Executor, Serial};
pub use measures::{ReducedPair, TransmissionRecord};
pub use num_complex::Complex64;
pub use sweep::{Objective, OptimalPoint, SweepConfig, SweepOutcome, SweepSample};
