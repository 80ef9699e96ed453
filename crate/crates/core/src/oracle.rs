// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Full `2ⁿ`-dimensional reference evolution for small chains.
//!
//! The Hamiltonian is assembled from Pauli actions on computational basis
//! states (qubit `j` is bit `j` of the index, in site order) and integrated
//! with a substepped Taylor series. Nothing here shares code with the
//! single-excitation propagator.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::chain::ChainSpec;
use crate::error::{Error, Result};
use crate::evolution::{AmplitudeVector, InitialState};
use crate::math;

/// Largest chain (in qubits) the oracle accepts.
pub const MAX_QUBITS: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
/// Upper bound on `‖H‖·dt` per Taylor substep.
const STEP_NORM: f64 = 0.25;

/// Sparse Hamiltonian in coordinate form, grouped by column.
#[derive(Debug, Clone)]
pub struct FullHamiltonian {
    qubits: usize,
    /// `columns[x]` lists `(row, value)` pairs of `H|x⟩`.
    columns: Vec<Vec<(usize, Complex64)>>,
    norm_bound: f64,
}

/// `σˣ|b⟩ = |1−b⟩`.
fn sigma_x(bit: bool) -> (bool, Complex64) {
    (!bit, Complex64::new(1.0, 0.0))
}

/// `σʸ|0⟩ = i|1⟩`, `σʸ|1⟩ = −i|0⟩`.
fn sigma_y(bit: bool) -> (bool, Complex64) {
    if bit {
        (false, -I)
    } else {
        (true, I)
    }
}

impl FullHamiltonian {
    /// `H = Σ_edges J_ij (σˣ_i σˣ_j + σʸ_i σʸ_j)`.
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        let qubits = spec.dim();
        if qubits > MAX_QUBITS {
            return Err(Error::OracleTooLarge { qubits, limit: MAX_QUBITS });
        }
        let size = 1usize << qubits;
        let edges = spec.indexed_edges();
        let mut columns = Vec::with_capacity(size);
        for x in 0..size {
            let mut col: Vec<(usize, Complex64)> = Vec::new();
            for &(a, b, s) in &edges {
                for pauli in [sigma_x as fn(bool) -> (bool, Complex64), sigma_y] {
                    let (ba, pa) = pauli(x >> a & 1 == 1);
                    let (bb, pb) = pauli(x >> b & 1 == 1);
                    let mut y = x & !(1 << a) & !(1 << b);
                    y |= (ba as usize) << a;
                    y |= (bb as usize) << b;
                    let v = pa * pb * s;
                    match col.iter_mut().find(|(r, _)| *r == y) {
                        Some(entry) => entry.1 += v,
                        None => col.push((y, v)),
                    }
                }
            }
            col.retain(|&(_, v)| v != ZERO);
            col.sort_by_key(|&(r, _)| r);
            columns.push(col);
        }
        let norm_bound = columns
            .iter()
            .map(|c| c.iter().map(|(_, v)| v.norm()).sum::<f64>())
            .fold(0.0, f64::max);
        Ok(Self { qubits, columns, norm_bound })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// `⟨row|H|col⟩`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.columns[col].iter().find(|(r, _)| *r == row).map_or(ZERO, |&(_, v)| v)
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.fill(ZERO);
        for (x, col) in self.columns.iter().enumerate() {
            let a = v[x];
            if a == ZERO {
                continue;
            }
            for &(y, h) in col {
                out[y] += h * a;
            }
        }
    }

    /// `ψ ← exp(−iH dt) ψ` by Taylor series, for `‖H‖ dt ≤ STEP_NORM`.
    fn taylor_step(&self, psi: &mut [Complex64], dt: f64, term: &mut Vec<Complex64>, next: &mut Vec<Complex64>) {
        term.copy_from_slice(psi);
        let factor = -I * dt;
        for k in 1..=60 {
            self.apply(term, next);
            let scale = factor / k as f64;
            let mut size = 0.0f64;
            for (t, n) in term.iter_mut().zip(next.iter()) {
                *t = n * scale;
                size = size.max(t.norm());
            }
            for (p, t) in psi.iter_mut().zip(term.iter()) {
                *p += t;
            }
            if size < 1e-18 {
                break;
            }
        }
    }

    /// Evolves `psi` forward by `tau`.
    pub fn evolve(&self, psi: &mut [Complex64], tau: f64) -> Result<()> {
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::BadTime(tau));
        }
        if psi.len() != 1 << self.qubits {
            return Err(Error::DimensionMismatch { expected: 1 << self.qubits, got: psi.len() });
        }
        if tau == 0.0 || self.norm_bound == 0.0 {
            return Ok(());
        }
        let steps = math::floor(tau * self.norm_bound / STEP_NORM) as usize + 1;
        let dt = tau / steps as f64;
        let mut term = vec![ZERO; psi.len()];
        let mut next = vec![ZERO; psi.len()];
        for _ in 0..steps {
            self.taylor_step(psi, dt, &mut term, &mut next);
        }
        Ok(())
    }
}

/// Oracle result at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    /// Amplitudes on the states with exactly one excitation, in site order.
    pub amplitudes: AmplitudeVector,
    /// Total weight outside the single-excitation sector.
    pub leakage: f64,
}

/// Full-space state for `state` prepared on Alice's pair.
pub fn full_initial_state(spec: &ChainSpec, state: InitialState) -> Result<Vec<Complex64>> {
    let qubits = spec.dim();
    if qubits > MAX_QUBITS {
        return Err(Error::OracleTooLarge { qubits, limit: MAX_QUBITS });
    }
    let amps = state.sender_amplitudes()?;
    let mut psi = vec![ZERO; 1 << qubits];
    for (&site, a) in spec.sender_pair().iter().zip(amps) {
        psi[1 << site] = a;
    }
    Ok(psi)
}

fn project(psi: &[Complex64], qubits: usize, tau: f64) -> OracleOutcome {
    let amplitudes: Vec<Complex64> = (0..qubits).map(|j| psi[1 << j]).collect();
    let leakage = psi
        .iter()
        .enumerate()
        .filter(|(x, _)| x.count_ones() != 1)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    OracleOutcome { amplitudes: AmplitudeVector::new(amplitudes, tau), leakage }
}

/// Evolves the full state to `tau` and projects on the one-excitation basis.
pub fn full_space_oracle(spec: &ChainSpec, state: InitialState, tau: f64) -> Result<OracleOutcome> {
    Ok(full_space_trace(spec, state, &[tau])?.remove(0))
}

/// Oracle at each of the ascending times `taus`, reusing the previous state.
pub fn full_space_trace(spec: &ChainSpec, state: InitialState, taus: &[f64]) -> Result<Vec<OracleOutcome>> {
    let h = FullHamiltonian::new(spec)?;
    let mut psi = full_initial_state(spec, state)?;
    let mut now = 0.0;
    let mut out = Vec::with_capacity(taus.len());
    for &tau in taus {
        if !(tau.is_finite() && tau >= now) {
            return Err(Error::BadTime(tau));
        }
        h.evolve(&mut psi, tau - now)?;
        now = tau;
        out.push(project(&psi, h.qubits(), tau));
    }
    Ok(out)
}
