// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Single-excitation generator and exact time evolution.
//!
//! The generator holds `⟨1_k|H|1_j⟩` in units of `J`, which is twice the edge
//! strength on every edge and zero elsewhere. The `-i/ħ` of the Schrödinger
//! equation lives in the propagator phase, so with `τ = Jt/ħ`
//!
//! ```text
//! c(τ) = V · exp(-i Λ τ) · Vᵀ · c(0)
//! ```
//!
//! where `G = V Λ Vᵀ` is the eigendecomposition of the generator.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::chain::ChainSpec;
use crate::error::{Error, Result};
use crate::linalg::{self, RowBlock};
use crate::math;
use crate::spectrum::ChainBasis;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Real symmetric single-excitation coupling matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    dim: usize,
    matrix: Vec<f64>,
    basis: Option<ChainBasis>,
}

impl Generator {
    /// Generator of a chain, disorder included.
    pub fn from_chain(spec: &ChainSpec) -> Self {
        let dim = spec.dim();
        let mut matrix = vec![0.0; dim * dim];
        for (a, b, s) in spec.indexed_edges() {
            matrix[a * dim + b] = 2.0 * s;
            matrix[b * dim + a] = 2.0 * s;
        }
        Self { dim, matrix, basis: Some(ChainBasis::new(spec)) }
    }

    /// Arbitrary symmetric matrix, row-major.
    pub fn from_dense(dim: usize, matrix: Vec<f64>) -> Result<Self> {
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: matrix.len() });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("generator entry"));
        }
        for i in 0..dim {
            for j in 0..i {
                if matrix[i * dim + j] != matrix[j * dim + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { dim, matrix, basis: None })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.dim + col]
    }
}

/// Builds the generator of `spec`.
pub fn build_generator(spec: &ChainSpec) -> Generator {
    Generator::from_chain(spec)
}

/// Eigendecomposition of a generator, used to propagate amplitudes exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPropagator {
    eigenvalues: Vec<f64>,
    /// `V[i][k]`: component `i` of eigenvector `k`.
    eigenvectors: RowBlock,
}

/// Diagonalizes `g`. Chain generators go through the path reduction; dense
/// matrices through a Householder reduction.
pub fn diagonalize(g: &Generator) -> Result<SpectralPropagator> {
    let Some(basis) = &g.basis else {
        let eig = linalg::symmetric_eigen(&g.matrix, g.dim)?;
        return Ok(SpectralPropagator { eigenvalues: eig.values, eigenvectors: eig.vectors });
    };
    let len = basis.path_len();
    let path = linalg::tridiagonal_eigen(&vec![0.0; len], basis.path_couplings(), RowBlock::identity(len))?;

    // Columns in site space: path eigenvectors then dark modes (eigenvalue 0).
    let dim = g.dim;
    let mut columns: Vec<(f64, Vec<f64>)> = Vec::with_capacity(dim);
    for k in 0..len {
        let mut v = vec![0.0; dim];
        for (t, node) in basis.nodes().iter().enumerate() {
            let z = path.vectors.get(t, k);
            for &(site, c) in &node.0 {
                v[site] += z * c;
            }
        }
        columns.push((path.values[k], v));
    }
    for dark in basis.dark_modes() {
        let mut v = vec![0.0; dim];
        for &(site, c) in &dark.0 {
            v[site] += c;
        }
        columns.push((0.0, v));
    }
    columns.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut eigenvectors = RowBlock::zeros(dim, dim);
    let mut eigenvalues = Vec::with_capacity(dim);
    for (k, (value, v)) in columns.into_iter().enumerate() {
        eigenvalues.push(value);
        for (i, x) in v.into_iter().enumerate() {
            eigenvectors.data[i * dim + k] = x;
        }
    }
    Ok(SpectralPropagator { eigenvalues, eigenvectors })
}

impl SpectralPropagator {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Ascending eigenvalues, units of `J`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector matrix `V`, row-major, eigenvectors in columns.
    pub fn eigenvectors(&self) -> &RowBlock {
        &self.eigenvectors
    }

    /// Largest entry of `|VᵀV − I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n).map(|r| v.get(r, a) * v.get(r, b)).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max(math::abs(dot - target));
            }
        }
        worst
    }

    /// `V Λ Vᵀ`, row-major.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let x: f64 = (0..n).map(|k| v.get(i, k) * self.eigenvalues[k] * v.get(j, k)).sum();
                out[i * n + j] = x;
                out[j * n + i] = x;
            }
        }
        out
    }

    /// Propagates `c0` forward by `tau`. The returned vector carries
    /// `c0.tau() + tau`.
    pub fn evolve(&self, c0: &AmplitudeVector, tau: f64) -> Result<AmplitudeVector> {
        let n = self.dim();
        if c0.amplitudes.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c0.amplitudes.len() });
        }
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::BadTime(tau));
        }
        if tau == 0.0 {
            return Ok(c0.clone());
        }
        let v = &self.eigenvectors;
        let mut modes = vec![ZERO; n];
        for (i, &c) in c0.amplitudes.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            for (k, m) in modes.iter_mut().enumerate() {
                *m += c * v.get(i, k);
            }
        }
        for (m, &l) in modes.iter_mut().zip(&self.eigenvalues) {
            let (s, c) = math::sin_cos(l * tau);
            *m *= Complex64::new(c, -s);
        }
        let amplitudes = (0..n)
            .map(|i| v.row(i).iter().zip(&modes).map(|(&x, m)| m * x).sum())
            .collect();
        Ok(AmplitudeVector { amplitudes, tau: c0.tau + tau })
    }
}

/// Complex amplitudes over the one-excitation basis, in site order.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    amplitudes: Vec<Complex64>,
    tau: f64,
}

impl AmplitudeVector {
    pub fn new(amplitudes: Vec<Complex64>, tau: f64) -> Self {
        Self { amplitudes, tau }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// States Alice can prepare on her pair; every other qubit starts in `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    /// `(|01⟩ + |10⟩)/√2`.
    PsiPlus,
    /// `(|01⟩ − |10⟩)/√2`.
    PsiMinus,
    /// `α|01⟩ + √(1−α²) e^{-iγ}|10⟩` with `α = (1+Δα)/√2`, `γ = 2π(1+Δγ)`.
    Perturbed { delta_alpha: f64, delta_gamma: f64 },
    /// `|1⟩` on the first sender site (`A`, or `1` for the standard chain).
    SingleExcitation,
}

impl InitialState {
    /// Amplitudes on the two sender sites, in pair order.
    ///
    /// The pair is written `|q0 q1⟩`, so `|01⟩` puts the excitation on the
    /// second site and `|10⟩` on the first.
    pub fn sender_amplitudes(&self) -> Result<[Complex64; 2]> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Ok(match *self {
            InitialState::PsiPlus => [h, h],
            InitialState::PsiMinus => [h, -h],
            InitialState::SingleExcitation => [Complex64::new(1.0, 0.0), ZERO],
            InitialState::Perturbed { delta_alpha, delta_gamma } => {
                if !delta_alpha.is_finite() {
                    return Err(Error::NonFinite("delta_alpha"));
                }
                if !delta_gamma.is_finite() {
                    return Err(Error::NonFinite("delta_gamma"));
                }
                let alpha = (1.0 + delta_alpha) * FRAC_1_SQRT_2;
                if math::abs(alpha) > 1.0 {
                    return Err(Error::AmplitudeOutOfRange(alpha));
                }
                let beta = if delta_alpha == 0.0 { FRAC_1_SQRT_2 } else { math::sqrt(1.0 - alpha * alpha) };
                // e^{-i2π(1+Δγ)} = e^{-i2πΔγ}
                let (s, c) = math::sin_cos(2.0 * PI * delta_gamma);
                [Complex64::new(c, -s) * beta, Complex64::new(alpha, 0.0)]
            }
        })
    }

    /// The prepared two-qubit pure state as `(amp of |01⟩, amp of |10⟩)`.
    pub fn pair_state(&self) -> Result<[Complex64; 2]> {
        let [first, second] = self.sender_amplitudes()?;
        Ok([second, first])
    }
}

/// Full amplitude vector at `τ = 0` for `state` on `spec`.
pub fn initial_amplitudes(state: InitialState, spec: &ChainSpec) -> Result<AmplitudeVector> {
    let pair = state.sender_amplitudes()?;
    let mut amplitudes = vec![ZERO; spec.dim()];
    let [s0, s1] = spec.sender_pair();
    amplitudes[s0] = pair[0];
    amplitudes[s1] = pair[1];
    Ok(AmplitudeVector { amplitudes, tau: 0.0 })
}
