// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Grid search over the backbone coupling `J_m` and the readout time.
//!
//! For every `J_m` on a coarse grid the objective is maximized over a uniform
//! time grid and then over a finer time grid around the peak. The winning
//! `J_m` is then revisited on a finer `J_m` grid. Candidates are ordered by
//! objective (descending), readout time (ascending) and `J_m` (ascending), so
//! the outcome is independent of how the work is scheduled.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::chain::ChainSpec;
use crate::error::{Error, Result};
use crate::evolution::InitialState;
use crate::exec::Executor;
use crate::math;
use crate::measures::{self, FidelityTarget, ReducedPair, TransmissionRecord};
use crate::spectrum::{grid_steps, ChainSpectrum, ReceiverSignal};

/// Quantity maximized at the receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Entanglement of formation of the receiver pair.
    ReceiverEof,
    /// `|c|²` on the last receiver site (`B`, or `N` for the standard chain).
    ReceiverSingleFidelity,
    /// Overlap of the receiver pair with the prepared pair state.
    ReceiverPairFidelity,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::ReceiverEof => "receiver_eof",
            Objective::ReceiverSingleFidelity => "receiver_single_fidelity",
            Objective::ReceiverPairFidelity => "receiver_pair_fidelity",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "receiver_eof" => Some(Objective::ReceiverEof),
            "receiver_single_fidelity" => Some(Objective::ReceiverSingleFidelity),
            "receiver_pair_fidelity" => Some(Objective::ReceiverPairFidelity),
            _ => None,
        }
    }
}

impl core::fmt::Display for Objective {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Search grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub jm_lo: f64,
    pub jm_hi: f64,
    pub jm_coarse_step: f64,
    pub jm_refine_step: f64,
    pub tau_max: f64,
    pub tau_step: f64,
    /// Second pass around each time peak; `None` keeps the coarse time grid.
    pub tau_refine_step: Option<f64>,
    pub objective: Objective,
}

impl SweepConfig {
    /// `J_m` steps 0.01 then 0.001, time steps 0.01 then 0.001.
    pub fn new(objective: Objective, jm_lo: f64, jm_hi: f64, tau_max: f64) -> Self {
        Self {
            jm_lo,
            jm_hi,
            jm_coarse_step: 0.01,
            jm_refine_step: 0.001,
            tau_max,
            tau_step: 0.01,
            tau_refine_step: Some(0.001),
            objective,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.jm_lo, self.jm_hi, self.jm_coarse_step, self.jm_refine_step, self.tau_max, self.tau_step];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("sweep parameter"));
        }
        if self.jm_lo > self.jm_hi {
            return Err(Error::EmptyGrid { lo: self.jm_lo, hi: self.jm_hi });
        }
        if self.jm_coarse_step <= 0.0 || self.jm_refine_step <= 0.0 {
            return Err(Error::InvalidSweep("J_m steps must be positive"));
        }
        if self.jm_refine_step > self.jm_coarse_step {
            return Err(Error::InvalidSweep("jm_refine_step exceeds jm_coarse_step"));
        }
        if self.tau_max <= 0.0 {
            return Err(Error::InvalidSweep("tau_max must be positive"));
        }
        if self.tau_step <= 0.0 {
            return Err(Error::InvalidSweep("tau_step must be positive"));
        }
        if let Some(r) = self.tau_refine_step {
            if !(r.is_finite() && r > 0.0 && r <= self.tau_step) {
                return Err(Error::InvalidSweep("tau_refine_step must lie in (0, tau_step]"));
            }
        }
        Ok(())
    }

    /// Coarse `J_m` grid: multiples of the coarse step inside `[jm_lo, jm_hi]`.
    pub fn coarse_grid(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let grid = multiples(self.jm_lo, self.jm_hi, self.jm_coarse_step);
        if grid.is_empty() {
            return Err(Error::EmptyGrid { lo: self.jm_lo, hi: self.jm_hi });
        }
        Ok(grid)
    }

    /// Fine `J_m` grid around `center`, clipped to `[jm_lo, jm_hi]`.
    pub fn refine_grid(&self, center: f64) -> Vec<f64> {
        let lo = (center - self.jm_coarse_step).max(self.jm_lo);
        let hi = (center + self.jm_coarse_step).min(self.jm_hi);
        multiples(lo, hi, self.jm_refine_step)
    }
}

/// `k·step` for every integer `k` with `lo ≤ k·step ≤ hi`, up to rounding.
fn multiples(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let slack = 1e-9;
    let first = -math::floor(slack - lo / step) as i64;
    let last = math::floor(hi / step + slack) as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

/// Best point of one `J_m`, or of a whole sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalPoint {
    pub jm_star: f64,
    pub tau_star: f64,
    pub objective_value: f64,
    pub objective: Objective,
}

/// Best readout time and value for one `J_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSample {
    pub jm: f64,
    pub tau_star: f64,
    pub objective: f64,
}

/// Optimum plus the per-`J_m` curves of both passes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub optimum: OptimalPoint,
    pub coarse: Vec<SweepSample>,
    pub refined: Vec<SweepSample>,
}

/// Candidate with its ordering key (concurrence stands in for EoF).
#[derive(Debug, Clone, Copy)]
struct Candidate {
    key: f64,
    tau: f64,
    jm: f64,
}

/// Objective descending, then time ascending, then `J_m` ascending.
fn better(a: &Candidate, b: &Candidate) -> bool {
    match a.key.total_cmp(&b.key) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match a.tau.total_cmp(&b.tau) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a.jm < b.jm,
        },
    }
}

/// Maps receiver amplitudes to a monotone surrogate of the objective.
#[derive(Debug, Clone, Copy)]
struct Scorer {
    objective: Objective,
    pair: [Complex64; 2],
}

impl Scorer {
    fn new(objective: Objective, state: InitialState) -> Result<Self> {
        Ok(Self { objective, pair: state.pair_state()? })
    }

    #[inline]
    fn key(&self, [c_n, c_b]: [Complex64; 2]) -> f64 {
        match self.objective {
            Objective::ReceiverEof => 2.0 * c_n.norm() * c_b.norm(),
            Objective::ReceiverSingleFidelity => c_b.norm_sqr(),
            Objective::ReceiverPairFidelity => (self.pair[0].conj() * c_b + self.pair[1].conj() * c_n).norm_sqr(),
        }
    }

    fn value(&self, key: f64) -> Result<f64> {
        match self.objective {
            Objective::ReceiverEof => measures::eof_from_concurrence(key.min(1.0)),
            _ => Ok(key.clamp(0.0, 1.0)),
        }
    }
}

fn fidelity_target(state: InitialState) -> Result<FidelityTarget> {
    Ok(match state {
        InitialState::SingleExcitation => FidelityTarget::SingleSite,
        other => FidelityTarget::Pair(other.pair_state()?),
    })
}

/// Receiver measures at `τ = 0, tau_step, …` up to `tau_max`, from one
/// diagonalization.
pub fn time_trace(spec: &ChainSpec, state: InitialState, tau_max: f64, tau_step: f64) -> Result<Vec<TransmissionRecord>> {
    let steps = grid_steps(tau_max, tau_step)?;
    let target = fidelity_target(state)?;
    let signal = ChainSpectrum::new(spec)?.signal(state.sender_amplitudes()?);
    let mut out = Vec::with_capacity(steps + 1);
    let mut failure = None;
    signal.scan(tau_step, steps, |k, [c_n, c_b]| {
        if failure.is_some() {
            return;
        }
        let tau = k as f64 * tau_step;
        match ReducedPair::new(c_n, c_b).and_then(|p| TransmissionRecord::measure(tau, &p, target)) {
            Ok(r) => out.push(r),
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Value of `objective` for `spec` at a single time.
pub fn objective_at(spec: &ChainSpec, state: InitialState, objective: Objective, tau: f64) -> Result<f64> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::BadTime(tau));
    }
    let scorer = Scorer::new(objective, state)?;
    let signal = ChainSpectrum::new(spec)?.signal(state.sender_amplitudes()?);
    scorer.value(scorer.key(signal.at(tau)))
}

/// Best time for one chain: coarse scan, then the optional fine pass.
fn best_time(signal: &ReceiverSignal, scorer: &Scorer, cfg: &SweepConfig, steps: usize) -> (f64, f64) {
    let mut best_key = f64::NEG_INFINITY;
    let mut best_step = 0usize;
    signal.scan(cfg.tau_step, steps, |k, amps| {
        let key = scorer.key(amps);
        if key > best_key {
            best_key = key;
            best_step = k;
        }
    });
    let coarse_tau = best_step as f64 * cfg.tau_step;
    let Some(fine) = cfg.tau_refine_step else {
        return (best_key, coarse_tau);
    };
    let (mut key, mut tau) = (f64::NEG_INFINITY, coarse_tau);
    for t in multiples((coarse_tau - cfg.tau_step).max(0.0), (coarse_tau + cfg.tau_step).min(cfg.tau_max), fine) {
        let t = t.clamp(0.0, cfg.tau_max);
        let k = scorer.key(signal.at(t));
        if k > key {
            key = k;
            tau = t;
        }
    }
    (key, tau)
}

fn evaluate(template: &ChainSpec, jm: f64, state: InitialState, scorer: &Scorer, cfg: &SweepConfig, steps: usize) -> Result<Candidate> {
    let spec = template.with_j_m(jm)?;
    let signal = ChainSpectrum::new(&spec)?.signal(state.sender_amplitudes()?);
    let (key, tau) = best_time(&signal, scorer, cfg, steps);
    Ok(Candidate { key, tau, jm })
}

fn pass<E: Executor>(
    template: &ChainSpec,
    grid: &[f64],
    state: InitialState,
    scorer: &Scorer,
    cfg: &SweepConfig,
    steps: usize,
    exec: &E,
) -> Result<Vec<Candidate>> {
    exec.map(grid.len(), |i| evaluate(template, grid[i], state, scorer, cfg, steps)).into_iter().collect()
}

fn winner(candidates: &[Candidate]) -> Candidate {
    let mut best = candidates[0];
    for c in &candidates[1..] {
        if better(c, &best) {
            best = *c;
        }
    }
    best
}

fn samples(candidates: &[Candidate], scorer: &Scorer) -> Result<Vec<SweepSample>> {
    candidates
        .iter()
        .map(|c| Ok(SweepSample { jm: c.jm, tau_star: c.tau, objective: scorer.value(c.key)? }))
        .collect()
}

/// Coarse-then-fine search for the `J_m` and readout time maximizing
/// `cfg.objective`. The template's other couplings are kept.
pub fn optimize<E: Executor>(template: &ChainSpec, state: InitialState, cfg: &SweepConfig, exec: &E) -> Result<SweepOutcome> {
    if !template.is_clean() {
        return Err(Error::TemplateNotClean);
    }
    let grid = cfg.coarse_grid()?;
    let steps = grid_steps(cfg.tau_max, cfg.tau_step)?;
    let scorer = Scorer::new(cfg.objective, state)?;

    let coarse = pass(template, &grid, state, &scorer, cfg, steps, exec)?;
    let first = winner(&coarse);

    let fine_grid: Vec<f64> = cfg.refine_grid(first.jm).into_iter().filter(|jm| math::abs(jm - first.jm) > 1e-6 * cfg.jm_refine_step)
        .collect();
    let refined = pass(template, &fine_grid, state, &scorer, cfg, steps, exec)?;
    let mut best = first;
    for c in &refined {
        if better(c, &best) {
            best = *c;
        }
    }

    // Report the refined curve including its center.
    let mut refined_curve = refined;
    refined_curve.push(first);
    refined_curve.sort_by(|a, b| a.jm.total_cmp(&b.jm));

    Ok(SweepOutcome {
        optimum: OptimalPoint {
            jm_star: best.jm,
            tau_star: best.tau,
            objective_value: scorer.value(best.key)?,
            objective: cfg.objective,
        },
        coarse: samples(&coarse, &scorer)?,
        refined: samples(&refined_curve, &scorer)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_are_integer_multiples() {
        assert_eq!(multiples(0.0, 0.05, 0.01).len(), 6);
        let g = multiples(-0.021, 0.019, 0.01);
        assert_eq!(g.len(), 4);
        assert!((g[0] + 0.02).abs() < 1e-15 && (g[3] - 0.01).abs() < 1e-15);
        assert_eq!(multiples(0.3, 0.3, 0.1).len(), 1);
        assert!(multiples(0.31, 0.39, 0.1).is_empty());
        let wide = multiples(0.0, 50.0, 0.01);
        assert_eq!(wide.len(), 5001);
        assert_eq!(wide[5000], 50.0);
    }

    #[test]
    fn refine_grid_is_clipped() {
        let cfg = SweepConfig::new(Objective::ReceiverEof, 0.0, 5.0, 10.0);
        let g = cfg.refine_grid(0.0);
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(cfg.refine_grid(2.5).len(), 21);
    }

    #[test]
    fn config_validation() {
        let ok = SweepConfig::new(Objective::ReceiverEof, 0.0, 5.0, 10.0);
        assert!(ok.validate().is_ok());
        assert!(matches!(SweepConfig { jm_lo: 6.0, ..ok }.validate(), Err(Error::EmptyGrid { .. })));
        assert!(SweepConfig { jm_refine_step: 0.1, ..ok }.validate().is_err());
        assert!(SweepConfig { tau_max: 0.0, ..ok }.validate().is_err());
        assert!(SweepConfig { tau_step: -1.0, ..ok }.validate().is_err());
        assert!(SweepConfig { tau_refine_step: Some(0.02), ..ok }.validate().is_err());
        assert!(SweepConfig { jm_lo: 0.311, jm_hi: 0.319, ..ok }.coarse_grid().is_err());
    }

    #[test]
    fn ordering_prefers_value_then_time_then_coupling() {
        let a = Candidate { key: 0.5, tau: 2.0, jm: 1.0 };
        assert!(better(&Candidate { key: 0.6, ..a }, &a));
        assert!(better(&Candidate { tau: 1.0, ..a }, &a));
        assert!(better(&Candidate { jm: 0.5, ..a }, &a));
        assert!(!better(&a, &a));
    }

    #[test]
    fn objective_names_round_trip() {
        for o in [Objective::ReceiverEof, Objective::ReceiverSingleFidelity, Objective::ReceiverPairFidelity] {
            assert_eq!(Objective::parse(o.as_str()), Some(o));
        }
    }
}
