// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Study campaigns built on the sweep and propagation layers.
//!
//! Disorder and input-perturbation studies run at a fixed clean optimum
//! `(J_m*, τ*)`. Every random draw is addressed by `(seed, p, index)`, so
//! results do not depend on the executor.

use alloc::vec::Vec;

use crate::chain::{ChainKind, ChainSpec, CouplingSet, DisorderSpec};
use crate::error::{Error, Result};
use crate::evolution::InitialState;
use crate::exec::Executor;
use crate::measures;
use crate::rng::{self, domain};
use crate::spectrum::ChainSpectrum;
use crate::sweep::{self, Objective, OptimalPoint, SweepConfig, SweepOutcome};

/// Receiver EoF of `spec` at `tau` for a `|Ψ+⟩`-type input.
fn eof_at(spectrum: &ChainSpectrum, state: InitialState, tau: f64) -> Result<f64> {
    let [c_n, c_b] = spectrum.signal(state.sender_amplitudes()?).at(tau);
    measures::eof_from_concurrence((2.0 * c_n.norm() * c_b.norm()).min(1.0))
}

fn check_point(point: &OptimalPoint) -> Result<()> {
    if !(point.tau_star.is_finite() && point.tau_star >= 0.0) {
        return Err(Error::BadTime(point.tau_star));
    }
    if !point.jm_star.is_finite() {
        return Err(Error::NonFinite("jm_star"));
    }
    Ok(())
}

fn check_p_grid(p_grid: &[f64]) -> Result<()> {
    for &p in p_grid {
        if !(p.is_finite() && (0.0..1.0).contains(&p)) {
            return Err(Error::DisorderOutOfRange(p));
        }
    }
    Ok(())
}

/// Seed of the disorder ensemble at strength `p`.
pub fn disorder_seed(base_seed: u64, p: f64) -> u64 {
    rng::mix(&[domain::P_VALUE, base_seed, p.to_bits()])
}

/// Statistics of one sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub p: f64,
    pub samples: Vec<f64>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Fraction strictly above `reference`.
    pub fraction_above_reference: f64,
    /// Fraction strictly above `mean`.
    pub fraction_above_mean: f64,
}

impl SampleStats {
    fn new(p: f64, samples: Vec<f64>, reference: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::NoRealizations);
        }
        let n = samples.len() as f64;
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = (samples.iter().sum::<f64>() / n).clamp(min, max);
        let above = |t: f64| samples.iter().filter(|&&s| s > t).count() as f64 / n;
        let fraction_above_reference = above(reference);
        let fraction_above_mean = above(mean);
        Ok(Self { p, samples, mean, min, max, fraction_above_reference, fraction_above_mean })
    }
}

/// Receiver EoF under static disorder at a fixed clean optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct DisorderSummary {
    pub jm_star: f64,
    pub tau_star: f64,
    pub base_seed: u64,
    pub n_realizations: u64,
    pub clean_value: f64,
    /// One entry per `p`; `fraction_above_reference` is the fraction beating
    /// the clean value.
    pub rows: Vec<SampleStats>,
}

/// Samples `n_realizations` disordered copies of `clean` (with `J_m` set to
/// `point.jm_star`) for each `p` and records the receiver EoF at
/// `point.tau_star` for a `|Ψ+⟩` input.
pub fn disorder_study<E: Executor>(
    clean: &ChainSpec,
    point: &OptimalPoint,
    base_seed: u64,
    n_realizations: u64,
    p_grid: &[f64],
    exec: &E,
) -> Result<DisorderSummary> {
    if !clean.is_clean() {
        return Err(Error::NotClean);
    }
    if n_realizations == 0 {
        return Err(Error::NoRealizations);
    }
    check_point(point)?;
    check_p_grid(p_grid)?;
    let state = InitialState::PsiPlus;
    let clean = clean.with_j_m(point.jm_star)?;
    let clean_value = eof_at(&ChainSpectrum::new(&clean)?, state, point.tau_star)?;

    let mut rows = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let d = DisorderSpec::new(p, disorder_seed(base_seed, p), n_realizations)?;
        let samples: Result<Vec<f64>> = exec
            .map(n_realizations as usize, |i| {
                let spec = clean.sample_disorder(&d, i as u64)?;
                eof_at(&ChainSpectrum::new(&spec)?, state, point.tau_star)
            })
            .into_iter()
            .collect();
        rows.push(SampleStats::new(p, samples?, clean_value)?);
    }
    Ok(DisorderSummary {
        jm_star: point.jm_star,
        tau_star: point.tau_star,
        base_seed,
        n_realizations,
        clean_value,
        rows,
    })
}

/// One perturbed input state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationDraw {
    pub delta_alpha: f64,
    pub delta_gamma: f64,
    pub eof: f64,
    pub ratio: f64,
}

/// Draws for one `p` with their ratio statistics (in `stats.samples`).
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationRow {
    pub draws: Vec<PerturbationDraw>,
    pub stats: SampleStats,
}

/// Receiver EoF for perturbed inputs relative to the exact `|Ψ+⟩` input.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSummary {
    pub jm_star: f64,
    pub tau_star: f64,
    pub base_seed: u64,
    pub clean_value: f64,
    pub rows: Vec<PerturbationRow>,
}

/// `(Δα, Δγ)` for draw `index` at strength `p`. Draws with `α > 1` are
/// replaced by the next pair from the same stream.
pub fn perturbation_draw(base_seed: u64, p: f64, index: u64) -> (f64, f64) {
    let mut stream = rng::stream(&[domain::PERTURB, base_seed, p.to_bits(), index]);
    loop {
        let da = p * rng::symmetric_unit(&mut stream);
        let dg = p * rng::symmetric_unit(&mut stream);
        if (1.0 + da) * core::f64::consts::FRAC_1_SQRT_2 <= 1.0 {
            return (da, dg);
        }
    }
}

/// Evolves `n_per_p` perturbed inputs per `p` on the clean chain at the
/// fixed optimum and records `EoF_perturbed / EoF_clean`.
pub fn perturbation_study<E: Executor>(
    clean: &ChainSpec,
    point: &OptimalPoint,
    p_grid: &[f64],
    n_per_p: u64,
    base_seed: u64,
    exec: &E,
) -> Result<PerturbationSummary> {
    if !clean.is_clean() {
        return Err(Error::NotClean);
    }
    if n_per_p == 0 {
        return Err(Error::NoRealizations);
    }
    check_point(point)?;
    check_p_grid(p_grid)?;
    let spec = clean.with_j_m(point.jm_star)?;
    let spectrum = ChainSpectrum::new(&spec)?;
    let clean_value = eof_at(&spectrum, InitialState::PsiPlus, point.tau_star)?;
    if clean_value <= 0.0 {
        return Err(Error::Invalid("clean EoF is zero at the chosen point"));
    }

    let mut rows = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let draws: Result<Vec<PerturbationDraw>> = exec
            .map(n_per_p as usize, |i| {
                let (delta_alpha, delta_gamma) = perturbation_draw(base_seed, p, i as u64);
                let state = InitialState::Perturbed { delta_alpha, delta_gamma };
                let eof = eof_at(&spectrum, state, point.tau_star)?;
                Ok(PerturbationDraw { delta_alpha, delta_gamma, eof, ratio: eof / clean_value })
            })
            .into_iter()
            .collect();
        let draws = draws?;
        let ratios = draws.iter().map(|d| d.ratio).collect();
        rows.push(PerturbationRow { stats: SampleStats::new(p, ratios, 1.0)?, draws });
    }
    Ok(PerturbationSummary { jm_star: point.jm_star, tau_star: point.tau_star, base_seed, clean_value, rows })
}

/// End-coupling arrangement compared in the configuration study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub label: &'static str,
    pub description: &'static str,
    pub kind: ChainKind,
    pub couplings: CouplingSet,
}

/// Six arrangements: four branched, two standard. `J_m` is overwritten by
/// the sweep.
pub fn configuration_presets() -> [Preset; 6] {
    let ends = |ja, jat, jb, jbt| CouplingSet { j_a: ja, j_a_tilde: jat, j_m: 1.0, j_b: jb, j_b_tilde: jbt };
    [
        Preset {
            label: "a",
            description: "branched, J_A = J~_A = J_B = J~_B = J",
            kind: ChainKind::Branched,
            couplings: ends(1.0, 1.0, 1.0, 1.0),
        },
        Preset {
            label: "b",
            description: "branched, J_A = J_B = J, J~_A = J~_B = -J",
            kind: ChainKind::Branched,
            couplings: ends(1.0, -1.0, 1.0, -1.0),
        },
        Preset {
            label: "c",
            description: "branched, J_A = J_B = J, J~_A = J~_B = 2J",
            kind: ChainKind::Branched,
            couplings: ends(1.0, 2.0, 1.0, 2.0),
        },
        Preset {
            label: "d",
            description: "branched, J_A = J_B = J, J~_A = J~_B = J/2",
            kind: ChainKind::Branched,
            couplings: ends(1.0, 0.5, 1.0, 0.5),
        },
        Preset {
            label: "e",
            description: "standard, J_A = J_B = J",
            kind: ChainKind::Standard,
            couplings: ends(1.0, 0.0, 1.0, 0.0),
        },
        Preset {
            label: "f",
            description: "standard, J_A = J, J_B = J/2",
            kind: ChainKind::Standard,
            couplings: ends(1.0, 0.0, 0.5, 0.0),
        },
    ]
}

/// Optimum of one preset.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationResult {
    pub preset: Preset,
    pub outcome: SweepOutcome,
}

/// Optimizes every preset at chain length `n_chain` with a `|Ψ+⟩` input and
/// returns them best first (ties by label).
pub fn configuration_comparison<E: Executor>(n_chain: usize, cfg: &SweepConfig, exec: &E) -> Result<Vec<ConfigurationResult>> {
    let mut out = Vec::with_capacity(6);
    for preset in configuration_presets() {
        let template = ChainSpec::new(preset.kind, n_chain, preset.couplings)?;
        let outcome = sweep::optimize(&template, InitialState::PsiPlus, cfg, exec)?;
        out.push(ConfigurationResult { preset, outcome });
    }
    out.sort_by(|a, b| {
        b.outcome
            .optimum
            .objective_value
            .total_cmp(&a.outcome.optimum.objective_value)
            .then(a.preset.label.cmp(b.preset.label))
    });
    Ok(out)
}

/// Single-excitation optima of the symmetric branched chain and the standard
/// chain with unit end couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleExcitationResult {
    pub branched: SweepOutcome,
    pub standard: SweepOutcome,
}

pub fn single_excitation_study<E: Executor>(n_chain: usize, cfg: &SweepConfig, exec: &E) -> Result<SingleExcitationResult> {
    if cfg.objective != Objective::ReceiverSingleFidelity {
        return Err(Error::InvalidSweep("single-excitation study needs the receiver_single_fidelity objective"));
    }
    let state = InitialState::SingleExcitation;
    let branched = sweep::optimize(&ChainSpec::branched(n_chain, CouplingSet::symmetric(1.0))?, state, cfg, exec)?;
    let standard = sweep::optimize(&ChainSpec::standard(n_chain, CouplingSet::standard(1.0))?, state, cfg, exec)?;
    Ok(SingleExcitationResult { branched, standard })
}
