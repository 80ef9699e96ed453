// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Reduced spectral form of a chain generator.
//!
//! Both end clusters of the branched chain are stars: `A` and `1` only couple
//! to site 2, `N` and `B` only couple to site `N-1`. Rotating each pair into
//! the combination that couples (`u`) and the one that does not (`d`) turns the
//! generator into a path of `N` nodes `u_A, 2, …, N-1, u_B` plus two exact
//! zero modes `d_A`, `d_B`:
//!
//! ```text
//! u_A = (J̃_A |A⟩ + J_A |1⟩) / r_A      r_A = hypot(J̃_A, J_A)
//! d_A = (J_A |A⟩ − J̃_A |1⟩) / r_A      H d_A = 0
//! ```
//!
//! and likewise at the `B` end. The rotation holds for any coupling values,
//! including disordered ones. The standard chain is already a path.
//!
//! A path is a symmetric tridiagonal matrix, so its eigenvalues come from the
//! QL iteration in [`crate::linalg`]. Sender and receiver amplitudes only need
//! the eigenvector components on a handful of nodes, which the QL iteration
//! can accumulate at `O(n)` per rotation. [`ChainSpectrum`] keeps exactly
//! those rows; [`ReceiverSignal`] then evaluates Bob's two amplitudes at any
//! time as a short sum of phases.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::chain::{ChainKind, ChainSpec};
use crate::error::{Error, Result};
use crate::linalg::{self, RowBlock};
use crate::math;

/// Site-space vector with at most two nonzero entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsePair(pub [(usize, f64); 2]);

impl SparsePair {
    fn unit(site: usize) -> Self {
        SparsePair([(site, 1.0), (site, 0.0)])
    }

    /// Component on `site`.
    pub fn coeff(&self, site: usize) -> f64 {
        self.0.iter().filter(|(s, _)| *s == site).map(|(_, c)| c).sum()
    }

    pub fn dot(&self, v: &[Complex64]) -> Complex64 {
        self.0.iter().map(|&(s, c)| v[s] * c).sum()
    }

    pub fn touches(&self, site: usize) -> bool {
        self.0.iter().any(|&(s, c)| s == site && c != 0.0)
    }
}

/// Orthonormal basis in which the generator is a path plus zero modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainBasis {
    dim: usize,
    nodes: Vec<SparsePair>,
    /// Couplings between consecutive nodes, generator units (factor 2 included).
    off: Vec<f64>,
    dark: Vec<SparsePair>,
}

/// Rotates a star end `(outer, inner)` into `(u, d)`. `s_outer` is the branch
/// coupling, `s_inner` the chain coupling.
fn star_pair(outer: usize, inner: usize, s_outer: f64, s_inner: f64) -> (SparsePair, SparsePair, f64) {
    let r = math::hypot(s_outer, s_inner);
    if r == 0.0 {
        return (SparsePair::unit(inner), SparsePair::unit(outer), 0.0);
    }
    let u = SparsePair([(outer, s_outer / r), (inner, s_inner / r)]);
    let d = SparsePair([(outer, s_inner / r), (inner, -s_outer / r)]);
    (u, d, r)
}

impl ChainBasis {
    pub fn new(spec: &ChainSpec) -> Self {
        let s: Vec<f64> = spec.edge_list().iter().map(|e| e.strength).collect();
        let n = spec.n_chain();
        match spec.kind() {
            ChainKind::Standard => Self {
                dim: n,
                nodes: (0..n).map(SparsePair::unit).collect(),
                off: s.iter().map(|x| 2.0 * x).collect(),
                dark: Vec::new(),
            },
            ChainKind::Branched => {
                // Edge order: (A,2) (1,2) (2,3) … (N-2,N-1) (N-1,N) (N-1,B).
                // Site indices: A = 0, j = j, B = N + 1.
                let (u_a, d_a, r_a) = star_pair(0, 1, s[0], s[1]);
                // At the B end the chain coupling goes to N, the branch one to B.
                let (u_b, d_b, r_b) = star_pair(n + 1, n, s[n], s[n - 1]);
                let mut nodes = Vec::with_capacity(n);
                nodes.push(u_a);
                nodes.extend((2..n).map(SparsePair::unit));
                nodes.push(u_b);
                let mut off = Vec::with_capacity(n - 1);
                off.push(2.0 * r_a);
                off.extend(s[2..n - 1].iter().map(|x| 2.0 * x));
                off.push(2.0 * r_b);
                Self { dim: n + 2, nodes, off, dark: vec![d_a, d_b] }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn path_len(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[SparsePair] {
        &self.nodes
    }

    pub fn dark_modes(&self) -> &[SparsePair] {
        &self.dark
    }

    /// Off-diagonal of the path Hamiltonian.
    pub fn path_couplings(&self) -> &[f64] {
        &self.off
    }

    fn nodes_touching(&self, sites: &[usize]) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&k| sites.iter().any(|&s| self.nodes[k].touches(s))).collect()
    }
}

/// Path spectrum with eigenvector components on the sender and receiver nodes.
#[derive(Debug, Clone)]
pub struct ChainSpectrum {
    basis: ChainBasis,
    sender: [usize; 2],
    receiver: [usize; 2],
    eigenvalues: Vec<f64>,
    sender_nodes: Vec<usize>,
    receiver_nodes: Vec<usize>,
    /// Rows: sender nodes first, then receiver nodes.
    rows: RowBlock,
}

impl ChainSpectrum {
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        let basis = ChainBasis::new(spec);
        let sender = spec.sender_pair();
        let receiver = spec.receiver_pair();
        let sender_nodes = basis.nodes_touching(&sender);
        let receiver_nodes = basis.nodes_touching(&receiver);
        let tracked: Vec<usize> = sender_nodes.iter().chain(&receiver_nodes).copied().collect();
        let len = basis.path_len();
        let eig = linalg::tridiagonal_eigen(&vec![0.0; len], &basis.off, RowBlock::identity_rows(len, &tracked))?;
        Ok(Self {
            basis,
            sender,
            receiver,
            eigenvalues: eig.values,
            sender_nodes,
            receiver_nodes,
            rows: eig.vectors,
        })
    }

    pub fn basis(&self) -> &ChainBasis {
        &self.basis
    }

    /// Eigenvalues of the path part (the two dark modes sit at 0).
    pub fn path_eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Bob's amplitudes as a function of time for a state prepared on Alice's
    /// pair, with `sender[0]`, `sender[1]` the amplitudes on the two sender
    /// sites in pair order.
    pub fn signal(&self, sender_amplitudes: [Complex64; 2]) -> ReceiverSignal {
        let dim = self.basis.dim;
        let mut c0 = vec![Complex64::new(0.0, 0.0); dim];
        c0[self.sender[0]] = sender_amplitudes[0];
        c0[self.sender[1]] = sender_amplitudes[1];

        let len = self.eigenvalues.len();
        let ns = self.sender_nodes.len();
        // Projection of the initial state on each path eigenvector.
        let mut projection = vec![Complex64::new(0.0, 0.0); len];
        for (t, &node) in self.sender_nodes.iter().enumerate() {
            let overlap = self.basis.nodes[node].dot(&c0);
            if overlap == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (p, z) in projection.iter_mut().zip(self.rows.row(t)) {
                *p += overlap * z;
            }
        }

        let mut rows = Vec::with_capacity(self.receiver_nodes.len());
        for (q, &node) in self.receiver_nodes.iter().enumerate() {
            let z = self.rows.row(ns + q);
            let weights: Vec<Complex64> = projection.iter().zip(z).map(|(p, z)| p * z).collect();
            let v = &self.basis.nodes[node];
            rows.push(SignalRow { weights, mix: [v.coeff(self.receiver[0]), v.coeff(self.receiver[1])] });
        }

        let mut constant = [Complex64::new(0.0, 0.0); 2];
        for d in &self.basis.dark {
            let overlap = d.dot(&c0);
            for (c, &site) in constant.iter_mut().zip(&self.receiver) {
                *c += overlap * d.coeff(site);
            }
        }

        ReceiverSignal { eigenvalues: self.eigenvalues.clone(), rows, constant }
    }
}

#[derive(Debug, Clone)]
struct SignalRow {
    weights: Vec<Complex64>,
    /// Components of this node on the two receiver sites.
    mix: [f64; 2],
}

/// `c_r(τ) = constant_r + Σ_q mix_q[r] Σ_k w_qk e^{-iλ_k τ}` for the two
/// receiver sites `r`.
#[derive(Debug, Clone)]
pub struct ReceiverSignal {
    eigenvalues: Vec<f64>,
    rows: Vec<SignalRow>,
    constant: [Complex64; 2],
}

/// Exact phases are recomputed every this many recurrence steps.
const RESYNC: usize = 128;

impl ReceiverSignal {
    /// Receiver amplitudes at time `tau`, evaluated directly.
    pub fn at(&self, tau: f64) -> [Complex64; 2] {
        let mut out = self.constant;
        for row in &self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for (w, &l) in row.weights.iter().zip(&self.eigenvalues) {
                let (s, c) = math::sin_cos(l * tau);
                acc += w * Complex64::new(c, -s);
            }
            out[0] += acc * row.mix[0];
            out[1] += acc * row.mix[1];
        }
        out
    }

    /// Calls `visit(step, amplitudes)` at `τ = step · tau_step` for
    /// `step = 0..=steps`.
    ///
    /// Phases advance by a fixed rotation per step and are resynchronized
    /// exactly every few hundred steps.
    pub fn scan<F: FnMut(usize, [Complex64; 2])>(&self, tau_step: f64, steps: usize, mut visit: F) {
        let len = self.eigenvalues.len();
        let nrows = self.rows.len();
        let (rot_re, rot_im): (Vec<f64>, Vec<f64>) = self
            .eigenvalues
            .iter()
            .map(|&l| {
                let (s, c) = math::sin_cos(l * tau_step);
                (c, -s)
            })
            .unzip();
        let mut re = vec![0.0; nrows * len];
        let mut im = vec![0.0; nrows * len];
        let mut sums = vec![Complex64::new(0.0, 0.0); nrows];

        for step in 0..=steps {
            if step % RESYNC == 0 {
                let tau = step as f64 * tau_step;
                for (q, row) in self.rows.iter().enumerate() {
                    for k in 0..len {
                        let (s, c) = math::sin_cos(self.eigenvalues[k] * tau);
                        let v = row.weights[k] * Complex64::new(c, -s);
                        re[q * len + k] = v.re;
                        im[q * len + k] = v.im;
                    }
                }
            }
            for q in 0..nrows {
                let r = &mut re[q * len..(q + 1) * len];
                let i = &mut im[q * len..(q + 1) * len];
                sums[q] = advance(r, i, &rot_re, &rot_im);
            }
            let mut out = self.constant;
            for (row, s) in self.rows.iter().zip(&sums) {
                out[0] += s * row.mix[0];
                out[1] += s * row.mix[1];
            }
            visit(step, out);
        }
    }
}

/// Returns `Σ_k q_k` and then advances `q_k ← q_k · rot_k`.
#[inline]
fn advance(re: &mut [f64], im: &mut [f64], rot_re: &[f64], rot_im: &[f64]) -> Complex64 {
    const LANES: usize = 4;
    let n = re.len();
    let split = n - n % LANES;
    let mut acc_re = [0.0; LANES];
    let mut acc_im = [0.0; LANES];
    for base in (0..split).step_by(LANES) {
        for j in 0..LANES {
            let k = base + j;
            let (a, b) = (re[k], im[k]);
            acc_re[j] += a;
            acc_im[j] += b;
            re[k] = a * rot_re[k] - b * rot_im[k];
            im[k] = a * rot_im[k] + b * rot_re[k];
        }
    }
    let mut sum_re = (acc_re[0] + acc_re[1]) + (acc_re[2] + acc_re[3]);
    let mut sum_im = (acc_im[0] + acc_im[1]) + (acc_im[2] + acc_im[3]);
    for k in split..n {
        let (a, b) = (re[k], im[k]);
        sum_re += a;
        sum_im += b;
        re[k] = a * rot_re[k] - b * rot_im[k];
        im[k] = a * rot_im[k] + b * rot_re[k];
    }
    Complex64::new(sum_re, sum_im)
}

/// Validates a uniform time grid and returns its number of steps.
pub(crate) fn grid_steps(tau_max: f64, tau_step: f64) -> Result<usize> {
    if !(tau_step.is_finite() && tau_step > 0.0) {
        return Err(Error::InvalidSweep("tau_step must be positive"));
    }
    if !(tau_max.is_finite() && tau_max >= 0.0) {
        return Err(Error::BadTime(tau_max));
    }
    Ok(math::floor(tau_max / tau_step + 1e-9) as usize)
}
