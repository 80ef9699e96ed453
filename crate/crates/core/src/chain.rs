// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Chain topologies, coupling constants and static disorder.
//!
//! Sites are indexed in a fixed order that every vector and matrix in the
//! crate follows:
//!
//! - branched: `A, 1, 2, …, N, B` (index 0 is `A`, index `N + 1` is `B`)
//! - standard: `1, 2, …, N`
//!
//! Edges are also kept in a fixed order: the `A` branch edge, the backbone
//! edges in site order, then the `B` branch edge. Disorder multipliers are
//! stored per edge in that order.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rng;

/// Smallest backbone length for which `H_A`, `H_M` and `H_B` are all defined.
pub const MIN_CHAIN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainKind {
    /// Linear chain `1 … N`; sender pair `(1, 2)`, receiver pair `(N-1, N)`.
    Standard,
    /// Linear chain plus `A` attached to site 2 and `B` attached to site `N-1`;
    /// sender pair `(A, 1)`, receiver pair `(N, B)`.
    Branched,
}

impl ChainKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChainKind::Standard => "standard",
            ChainKind::Branched => "branched",
        }
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The five coupling constants, in units of `J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet {
    pub j_a: f64,
    pub j_a_tilde: f64,
    pub j_m: f64,
    pub j_b: f64,
    pub j_b_tilde: f64,
}

impl CouplingSet {
    /// All four end couplings equal to `J = 1` with the given bulk coupling.
    pub fn symmetric(j_m: f64) -> Self {
        Self { j_a: 1.0, j_a_tilde: 1.0, j_m, j_b: 1.0, j_b_tilde: 1.0 }
    }

    /// `J_A = J_B = 1`, no branch couplings.
    pub fn standard(j_m: f64) -> Self {
        Self { j_a: 1.0, j_a_tilde: 0.0, j_m, j_b: 1.0, j_b_tilde: 0.0 }
    }

    pub fn with_j_m(self, j_m: f64) -> Self {
        Self { j_m, ..self }
    }

    fn check_finite(&self) -> Result<()> {
        let named = [
            ("j_a", self.j_a),
            ("j_a_tilde", self.j_a_tilde),
            ("j_m", self.j_m),
            ("j_b", self.j_b),
            ("j_b_tilde", self.j_b_tilde),
        ];
        for (name, v) in named {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        Ok(())
    }
}

/// A qubit of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    A,
    /// Backbone site, 1-based as in the usual labelling.
    Chain(usize),
    B,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::A => f.write_str("A"),
            Site::Chain(j) => write!(f, "{j}"),
            Site::B => f.write_str("B"),
        }
    }
}

/// A coupled pair of sites and its strength (units of `J`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: Site,
    pub b: Site,
    pub strength: f64,
}

/// A chain topology with its couplings and, optionally, one disorder
/// realization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    kind: ChainKind,
    n_chain: usize,
    couplings: CouplingSet,
    multipliers: Option<Vec<f64>>,
}

impl ChainSpec {
    /// Builds a clean chain after validating size and couplings.
    pub fn new(kind: ChainKind, n_chain: usize, couplings: CouplingSet) -> Result<Self> {
        if n_chain < MIN_CHAIN {
            return Err(Error::ChainTooShort(n_chain));
        }
        couplings.check_finite()?;
        if kind == ChainKind::Standard && (couplings.j_a_tilde != 0.0 || couplings.j_b_tilde != 0.0) {
            return Err(Error::BranchCouplingOnStandard {
                j_a_tilde: couplings.j_a_tilde,
                j_b_tilde: couplings.j_b_tilde,
            });
        }
        Ok(Self { kind, n_chain, couplings, multipliers: None })
    }

    pub fn branched(n_chain: usize, couplings: CouplingSet) -> Result<Self> {
        Self::new(ChainKind::Branched, n_chain, couplings)
    }

    pub fn standard(n_chain: usize, couplings: CouplingSet) -> Result<Self> {
        Self::new(ChainKind::Standard, n_chain, couplings)
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn n_chain(&self) -> usize {
        self.n_chain
    }

    pub fn couplings(&self) -> &CouplingSet {
        &self.couplings
    }

    pub fn multipliers(&self) -> Option<&[f64]> {
        self.multipliers.as_deref()
    }

    pub fn is_clean(&self) -> bool {
        self.multipliers.is_none()
    }

    /// Same topology and end couplings with a different bulk coupling.
    /// Disorder multipliers are kept.
    pub fn with_j_m(&self, j_m: f64) -> Result<Self> {
        if !j_m.is_finite() {
            return Err(Error::NonFinite("j_m"));
        }
        Ok(Self { couplings: self.couplings.with_j_m(j_m), ..self.clone() })
    }

    /// The clean chain underlying this one.
    pub fn clean(&self) -> Self {
        Self { multipliers: None, ..self.clone() }
    }

    /// Attaches explicit per-edge multipliers `1 + Δ` in edge order.
    pub fn with_multipliers(&self, multipliers: Vec<f64>) -> Result<Self> {
        let expected = self.edge_count();
        if multipliers.len() != expected {
            return Err(Error::MultiplierCount { expected, got: multipliers.len() });
        }
        for (index, &value) in multipliers.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::BadMultiplier { index, value });
            }
        }
        Ok(Self { multipliers: Some(multipliers), ..self.clone() })
    }

    /// Number of qubits, i.e. the dimension of the single-excitation sector.
    pub fn dim(&self) -> usize {
        match self.kind {
            ChainKind::Standard => self.n_chain,
            ChainKind::Branched => self.n_chain + 2,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            ChainKind::Standard => self.n_chain - 1,
            ChainKind::Branched => self.n_chain + 1,
        }
    }

    /// Position of `site` in the site ordering, if the site exists.
    pub fn index_of(&self, site: Site) -> Option<usize> {
        match (self.kind, site) {
            (ChainKind::Branched, Site::A) => Some(0),
            (ChainKind::Branched, Site::B) => Some(self.n_chain + 1),
            (ChainKind::Branched, Site::Chain(j)) if (1..=self.n_chain).contains(&j) => Some(j),
            (ChainKind::Standard, Site::Chain(j)) if (1..=self.n_chain).contains(&j) => Some(j - 1),
            _ => None,
        }
    }

    /// Site at position `index` of the ordering.
    pub fn site_at(&self, index: usize) -> Option<Site> {
        match self.kind {
            ChainKind::Branched => match index {
                0 => Some(Site::A),
                i if i <= self.n_chain => Some(Site::Chain(i)),
                i if i == self.n_chain + 1 => Some(Site::B),
                _ => None,
            },
            ChainKind::Standard => (index < self.n_chain).then_some(Site::Chain(index + 1)),
        }
    }

    /// Indices of Alice's pair, ordered as the two qubits of the prepared
    /// state: `(A, 1)` or `(1, 2)`.
    pub fn sender_pair(&self) -> [usize; 2] {
        match self.kind {
            ChainKind::Branched => [0, 1],
            ChainKind::Standard => [0, 1],
        }
    }

    /// Indices of Bob's pair: `(N, B)` or `(N-1, N)`.
    pub fn receiver_pair(&self) -> [usize; 2] {
        match self.kind {
            ChainKind::Branched => [self.n_chain, self.n_chain + 1],
            ChainKind::Standard => [self.n_chain - 2, self.n_chain - 1],
        }
    }

    /// Clean edge set in canonical order.
    fn clean_edges(&self) -> Vec<Edge> {
        let n = self.n_chain;
        let c = &self.couplings;
        let mut edges = Vec::with_capacity(self.edge_count());
        if self.kind == ChainKind::Branched {
            edges.push(Edge { a: Site::A, b: Site::Chain(2), strength: c.j_a_tilde });
        }
        edges.push(Edge { a: Site::Chain(1), b: Site::Chain(2), strength: c.j_a });
        for j in 2..=n - 2 {
            edges.push(Edge { a: Site::Chain(j), b: Site::Chain(j + 1), strength: c.j_m });
        }
        edges.push(Edge { a: Site::Chain(n - 1), b: Site::Chain(n), strength: c.j_b });
        if self.kind == ChainKind::Branched {
            edges.push(Edge { a: Site::Chain(n - 1), b: Site::B, strength: c.j_b_tilde });
        }
        edges
    }

    /// Edge list with disorder multipliers applied.
    pub fn edge_list(&self) -> Vec<Edge> {
        let mut edges = self.clean_edges();
        if let Some(m) = &self.multipliers {
            for (e, &k) in edges.iter_mut().zip(m) {
                e.strength *= k;
            }
        }
        edges
    }

    /// Edge list as `(index, index, strength)` triples in site ordering.
    pub fn indexed_edges(&self) -> Vec<(usize, usize, f64)> {
        self.edge_list()
            .into_iter()
            .map(|e| {
                let a = self.index_of(e.a).expect("edge endpoint exists");
                let b = self.index_of(e.b).expect("edge endpoint exists");
                (a, b, e.strength)
            })
            .collect()
    }

    /// Draws disorder realization `index`.
    ///
    /// Each edge gets `1 + Δ` with `Δ` uniform on `[-p, p]`, drawn from a stream
    /// addressed by `(base_seed, index, edge ordinal)`.
    pub fn sample_disorder(&self, spec: &DisorderSpec, index: u64) -> Result<Self> {
        if !self.is_clean() {
            return Err(Error::NotClean);
        }
        spec.validate()?;
        if index >= spec.n_realizations {
            return Err(Error::RealizationOutOfRange { index, n_realizations: spec.n_realizations });
        }
        let multipliers = (0..self.edge_count())
            .map(|edge| 1.0 + spec.p * edge_draw(spec.base_seed, index, edge as u64))
            .collect();
        Ok(Self { multipliers: Some(multipliers), ..self.clone() })
    }
}

/// The raw `[-1, 1)` draw behind one edge of one realization.
pub fn edge_draw(base_seed: u64, realization: u64, edge: u64) -> f64 {
    let mut s = rng::stream(&[rng::domain::DISORDER, base_seed, realization, edge]);
    rng::symmetric_unit(&mut s)
}

/// Parameters of a static-disorder ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisorderSpec {
    /// Maximal fractional deviation of each coupling.
    pub p: f64,
    pub base_seed: u64,
    pub n_realizations: u64,
}

impl DisorderSpec {
    pub fn new(p: f64, base_seed: u64, n_realizations: u64) -> Result<Self> {
        let spec = Self { p, base_seed, n_realizations };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p.is_finite() && (0.0..1.0).contains(&self.p)) {
            return Err(Error::DisorderOutOfRange(self.p));
        }
        if self.n_realizations == 0 {
            return Err(Error::NoRealizations);
        }
        Ok(())
    }
}
