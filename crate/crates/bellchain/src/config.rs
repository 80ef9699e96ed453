// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Run configuration files (TOML).
//!
//! ```toml
//! seed = 7
//! workers = 4
//!
//! [chain]
//! kind = "branched"
//! n_chain = 100
//! j_m = 2.863
//!
//! [sweep]
//! jm_lo = 0.0
//! jm_hi = 5.0
//! tau_max = "25pi"
//! ```
//!
//! Times may be numbers or strings of the form `"<k>pi"`. Couplings are in
//! units of `J`, times in units of `ħ/J`.

use std::f64::consts::PI;
use std::path::Path;

use bellchain_core::{ChainKind, ChainSpec, CouplingSet, InitialState, Objective, SweepConfig};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// A time given as a number or as `"<k>pi"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TimeRepr", into = "TimeRepr")]
pub struct Time(pub f64);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum TimeRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<TimeRepr> for Time {
    type Error = String;

    fn try_from(r: TimeRepr) -> std::result::Result<Self, String> {
        match r {
            TimeRepr::Number(x) => Ok(Time(x)),
            TimeRepr::Text(s) => parse_time(&s).map(Time).ok_or_else(|| format!("cannot read `{s}` as a time")),
        }
    }
}

impl From<Time> for TimeRepr {
    fn from(t: Time) -> Self {
        TimeRepr::Number(t.0)
    }
}

/// `"78.5"`, `"pi"`, `"25pi"`, `"25*pi"`, `"25 π"`.
pub fn parse_time(s: &str) -> Option<f64> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    for suffix in ["*pi", "pi", "π"] {
        if let Some(head) = t.strip_suffix(suffix) {
            let k = if head.is_empty() { 1.0 } else { head.parse::<f64>().ok()? };
            return Some(k * PI);
        }
    }
    t.parse().ok()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    pub workers: Option<usize>,
    pub chain: Option<ChainSection>,
    pub state: Option<StateSection>,
    pub trace: Option<TraceSection>,
    pub sweep: Option<SweepSection>,
    pub disorder: Option<DisorderSection>,
    pub perturb: Option<PerturbSection>,
    pub oracle: Option<OracleSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub kind: String,
    pub n_chain: usize,
    #[serde(default = "one")]
    pub j_a: f64,
    pub j_a_tilde: Option<f64>,
    #[serde(default = "one")]
    pub j_m: f64,
    #[serde(default = "one")]
    pub j_b: f64,
    pub j_b_tilde: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl ChainSection {
    pub fn kind(&self) -> Result<ChainKind> {
        match self.kind.as_str() {
            "branched" => Ok(ChainKind::Branched),
            "standard" => Ok(ChainKind::Standard),
            other => Err(HarnessError::Invalid(format!("chain.kind: expected `branched` or `standard`, got `{other}`"))),
        }
    }

    /// Tilde couplings default to `J` on branched chains and 0 on standard ones.
    pub fn spec(&self) -> Result<ChainSpec> {
        let kind = self.kind()?;
        let tilde = if kind == ChainKind::Branched { 1.0 } else { 0.0 };
        let couplings = CouplingSet {
            j_a: self.j_a,
            j_a_tilde: self.j_a_tilde.unwrap_or(tilde),
            j_m: self.j_m,
            j_b: self.j_b,
            j_b_tilde: self.j_b_tilde.unwrap_or(tilde),
        };
        Ok(ChainSpec::new(kind, self.n_chain, couplings)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSection {
    pub kind: String,
    #[serde(default)]
    pub delta_alpha: f64,
    #[serde(default)]
    pub delta_gamma: f64,
}

impl StateSection {
    pub fn state(&self) -> Result<InitialState> {
        parse_state(&self.kind, self.delta_alpha, self.delta_gamma)
    }
}

pub fn parse_state(kind: &str, delta_alpha: f64, delta_gamma: f64) -> Result<InitialState> {
    match kind {
        "psi_plus" => Ok(InitialState::PsiPlus),
        "psi_minus" => Ok(InitialState::PsiMinus),
        "single_excitation" => Ok(InitialState::SingleExcitation),
        "perturbed" => Ok(InitialState::Perturbed { delta_alpha, delta_gamma }),
        other => Err(HarnessError::Invalid(format!(
            "state.kind: expected psi_plus, psi_minus, single_excitation or perturbed, got `{other}`"
        ))),
    }
}

pub fn state_name(s: InitialState) -> &'static str {
    match s {
        InitialState::PsiPlus => "psi_plus",
        InitialState::PsiMinus => "psi_minus",
        InitialState::SingleExcitation => "single_excitation",
        InitialState::Perturbed { .. } => "perturbed",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSection {
    pub tau_max: Time,
    #[serde(default = "default_tau_step")]
    pub tau_step: f64,
}

fn default_tau_step() -> f64 {
    0.01
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub jm_lo: f64,
    pub jm_hi: f64,
    pub tau_max: Time,
    #[serde(default = "default_coarse")]
    pub jm_coarse_step: f64,
    #[serde(default = "default_refine")]
    pub jm_refine_step: f64,
    #[serde(default = "default_tau_step")]
    pub tau_step: f64,
    /// 0 disables the fine time pass.
    #[serde(default = "default_refine")]
    pub tau_refine_step: f64,
    #[serde(default = "default_objective")]
    pub objective: String,
}

fn default_coarse() -> f64 {
    0.01
}

fn default_refine() -> f64 {
    0.001
}

fn default_objective() -> String {
    "receiver_eof".into()
}

impl SweepSection {
    pub fn config(&self) -> Result<SweepConfig> {
        let objective = Objective::parse(&self.objective).ok_or_else(|| {
            HarnessError::Invalid(format!(
                "sweep.objective: expected receiver_eof, receiver_single_fidelity or receiver_pair_fidelity, got `{}`",
                self.objective
            ))
        })?;
        let cfg = SweepConfig {
            jm_lo: self.jm_lo,
            jm_hi: self.jm_hi,
            jm_coarse_step: self.jm_coarse_step,
            jm_refine_step: self.jm_refine_step,
            tau_max: self.tau_max.0,
            tau_step: self.tau_step,
            tau_refine_step: (self.tau_refine_step > 0.0).then_some(self.tau_refine_step),
            objective,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A list of values or an inclusive `start..stop` range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl Grid {
    pub fn values(&self) -> Result<Vec<f64>> {
        match self {
            Grid::List(v) => Ok(v.clone()),
            Grid::Range { start, stop, step } => {
                if !(*step > 0.0 && stop >= start) {
                    return Err(HarnessError::Invalid("grid range needs step > 0 and stop >= start".into()));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                // Rounded to 12 decimals so that 0.1% steps print as typed.
                Ok((0..=n).map(|k| round12(start + k as f64 * step)).collect())
            }
        }
    }
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderSection {
    /// Clean optimum; found with `[sweep]` when absent.
    pub jm_star: Option<f64>,
    pub tau_star: Option<f64>,
    #[serde(default = "default_realizations")]
    pub n_realizations: u64,
    #[serde(default = "default_disorder_grid")]
    pub p_grid: Grid,
}

fn default_realizations() -> u64 {
    10_000
}

fn default_disorder_grid() -> Grid {
    Grid::Range { start: 0.001, stop: 0.05, step: 0.001 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbSection {
    pub jm_star: Option<f64>,
    pub tau_star: Option<f64>,
    #[serde(default = "default_draws")]
    pub n_per_p: u64,
    #[serde(default = "default_perturb_grid")]
    pub p_grid: Grid,
}

fn default_draws() -> u64 {
    1000
}

fn default_perturb_grid() -> Grid {
    Grid::Range { start: 0.0, stop: 0.10, step: 0.002 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    #[serde(default = "default_oracle_tau")]
    pub tau_max: Time,
    #[serde(default = "default_oracle_samples")]
    pub samples: usize,
    #[serde(default = "default_oracle_states")]
    pub states: Vec<String>,
    #[serde(default = "default_oracle_tolerance")]
    pub tolerance: f64,
}

impl Default for OracleSection {
    fn default() -> Self {
        Self {
            tau_max: default_oracle_tau(),
            samples: default_oracle_samples(),
            states: default_oracle_states(),
            tolerance: default_oracle_tolerance(),
        }
    }
}

fn default_oracle_tau() -> Time {
    Time(25.0)
}

fn default_oracle_samples() -> usize {
    50
}

fn default_oracle_states() -> Vec<String> {
    vec!["psi_plus".into(), "single_excitation".into()]
}

fn default_oracle_tolerance() -> f64 {
    1e-8
}

impl RunConfig {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| HarnessError::Config { path: path.to_owned(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<(Self, String)> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Ok((Self::parse(&text, path)?, text))
    }

    pub fn chain(&self) -> Result<&ChainSection> {
        self.chain.as_ref().ok_or_else(|| missing("chain"))
    }

    pub fn sweep(&self) -> Result<&SweepSection> {
        self.sweep.as_ref().ok_or_else(|| missing("sweep"))
    }

    pub fn trace(&self) -> Result<&TraceSection> {
        self.trace.as_ref().ok_or_else(|| missing("trace"))
    }

    pub fn disorder(&self) -> Result<&DisorderSection> {
        self.disorder.as_ref().ok_or_else(|| missing("disorder"))
    }

    pub fn perturb(&self) -> Result<&PerturbSection> {
        self.perturb.as_ref().ok_or_else(|| missing("perturb"))
    }

    /// `[state]`, defaulting to `|Ψ+⟩`.
    pub fn state(&self) -> Result<InitialState> {
        self.state.as_ref().map_or(Ok(InitialState::PsiPlus), StateSection::state)
    }
}

fn missing(section: &str) -> HarnessError {
    HarnessError::Invalid(format!("missing section [{section}]"))
}
