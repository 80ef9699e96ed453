// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Receiver-pair reduction, concurrence, entanglement of formation and
//! fidelity.
//!
//! Two-qubit states are written in the basis `|00⟩, |01⟩, |10⟩, |11⟩` of the
//! receiver pair `(first, second)`: `(N, B)` for the branched chain and
//! `(N−1, N)` for the standard one. `|01⟩` therefore carries the amplitude of
//! the second site.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::chain::ChainSpec;
use crate::error::{Error, Result};
use crate::evolution::AmplitudeVector;
use crate::linalg;
use crate::math;

const NORM_SLACK: f64 = 1e-10;
const CLAMP: f64 = 1e-12;
const PSD_SLACK: f64 = 1e-10;
/// Eigenvalues of `ρ` below this are treated as exact zeros. Keeping rounding
/// noise of order 1e-16 would feed spurious singular values of order 1e-8.
const RANK_FLOOR: f64 = 1e-11;

/// Amplitudes on the receiver pair. The reduced state is
///
/// ```text
///        |00⟩        |01⟩        |10⟩     |11⟩
/// |00⟩ [ 1-|cn|²-|cb|²  0          0          0 ]
/// |01⟩ [ 0          |cb|²      cb·cn*      0 ]
/// |10⟩ [ 0          cn·cb*     |cn|²       0 ]
/// |11⟩ [ 0          0          0          0 ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedPair {
    pub c_n: Complex64,
    pub c_b: Complex64,
}

impl ReducedPair {
    /// Validates the pair norm.
    pub fn new(c_n: Complex64, c_b: Complex64) -> Result<Self> {
        if !(c_n.re.is_finite() && c_n.im.is_finite() && c_b.re.is_finite() && c_b.im.is_finite()) {
            return Err(Error::NonFinite("receiver amplitude"));
        }
        let norm = c_n.norm_sqr() + c_b.norm_sqr();
        if norm > 1.0 + NORM_SLACK {
            return Err(Error::AmplitudeOutOfRange(norm));
        }
        Ok(Self { c_n, c_b })
    }

    pub fn populations(&self) -> [f64; 3] {
        let n = self.c_n.norm_sqr();
        let b = self.c_b.norm_sqr();
        [(1.0 - n - b).max(0.0), b, n]
    }

    /// Dense 4×4 matrix, row-major.
    pub fn density_matrix(&self) -> [[Complex64; 4]; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let [p00, p01, p10] = self.populations();
        let mut rho = [[zero; 4]; 4];
        rho[0][0] = Complex64::new(p00, 0.0);
        rho[1][1] = Complex64::new(p01, 0.0);
        rho[2][2] = Complex64::new(p10, 0.0);
        rho[1][2] = self.c_b * self.c_n.conj();
        rho[2][1] = self.c_n * self.c_b.conj();
        rho
    }
}

/// Picks the receiver amplitudes out of a full vector.
pub fn reduce_to_receiver_pair(c: &AmplitudeVector, spec: &ChainSpec) -> Result<ReducedPair> {
    let a = c.amplitudes();
    if a.len() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), got: a.len() });
    }
    let [n, b] = spec.receiver_pair();
    ReducedPair::new(a[n], a[b])
}

/// `2|c_n c_b|`.
pub fn concurrence_x(state: &ReducedPair) -> f64 {
    2.0 * state.c_n.norm() * state.c_b.norm()
}

/// `|c_n + c_b|² / 2`, the overlap with `|Ψ+⟩`.
pub fn bell_fidelity(state: &ReducedPair) -> f64 {
    0.5 * (state.c_n + state.c_b).norm_sqr()
}

/// Overlap with the pure pair state `a01|01⟩ + a10|10⟩`.
pub fn pair_fidelity(state: &ReducedPair, a01: Complex64, a10: Complex64) -> f64 {
    (a01.conj() * state.c_b + a10.conj() * state.c_n).norm_sqr()
}

/// `|c_B|²` (branched) or `|c_N|²` (standard).
pub fn single_site_fidelity(c: &AmplitudeVector, spec: &ChainSpec) -> Result<f64> {
    Ok(reduce_to_receiver_pair(c, spec)?.c_b.norm_sqr())
}

/// Entanglement of formation as a function of concurrence.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !c.is_finite() || !(-CLAMP..=1.0 + CLAMP).contains(&c) {
        return Err(Error::ConcurrenceOutOfRange(c));
    }
    let c = c.clamp(0.0, 1.0);
    let s = math::sqrt(1.0 - c * c);
    let f = 0.5 * (1.0 + s);
    // 1 − f without cancellation
    let g = c * c / (2.0 * (1.0 + s));
    Ok((xlog2x(f) + xlog2x(g)).clamp(0.0, 1.0))
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * math::log2(x)
    }
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
///
/// `ρ = W W†` is factored from its eigendecomposition; the square roots of
/// the eigenvalues of `ρ σʸ⊗σʸ ρ* σʸ⊗σʸ` are then the singular values of the
/// complex symmetric matrix `Wᵀ (σʸ⊗σʸ) W`, read off a real symmetric
/// eigenproblem so that no square root of a rounded eigenvalue is taken.
pub fn wootters_general(rho: &[[Complex64; 4]; 4]) -> Result<f64> {
    for (i, row) in rho.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite("density matrix entry"));
            }
            if (rho[j][i].conj() - v).norm() > 1e-12 {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    let trace: f64 = (0..4).map(|i| rho[i][i].re).sum();
    if math::abs(trace - 1.0) > NORM_SLACK {
        return Err(Error::Invalid("density matrix trace differs from 1"));
    }

    // Real embedding [[Re, −Im], [Im, Re]]: every eigenvalue appears twice,
    // with eigenvectors (a; b) and (−b; a) both mapping to a + ib up to a phase.
    let mut embed = vec![0.0; 64];
    for i in 0..4 {
        for j in 0..4 {
            let v = rho[i][j];
            embed[i * 8 + j] = v.re;
            embed[i * 8 + j + 4] = -v.im;
            embed[(i + 4) * 8 + j] = v.im;
            embed[(i + 4) * 8 + j + 4] = v.re;
        }
    }
    symmetrize(&mut embed, 8);
    let eig = linalg::symmetric_eigen(&embed, 8)?;
    let mut w: Vec<[Complex64; 4]> = Vec::with_capacity(8);
    for (k, &mu) in eig.values.iter().enumerate() {
        if mu < -PSD_SLACK {
            return Err(Error::NotPositive(mu));
        }
        if mu <= RANK_FLOOR {
            continue;
        }
        let scale = math::sqrt(mu / 2.0);
        let mut col = [Complex64::new(0.0, 0.0); 4];
        for (i, x) in col.iter_mut().enumerate() {
            *x = Complex64::new(eig.vectors.get(i, k), eig.vectors.get(i + 4, k)) * scale;
        }
        w.push(col);
    }
    let m = w.len();
    if m == 0 {
        return Ok(0.0);
    }

    // σʸ⊗σʸ: |00⟩↔−|11⟩, |01⟩↔|10⟩.
    let flip = |v: &[Complex64; 4]| [-v[3], v[2], v[1], -v[0]];
    let mut tau = vec![Complex64::new(0.0, 0.0); m * m];
    for j in 0..m {
        let fj = flip(&w[j]);
        for k in 0..m {
            tau[j * m + k] = (0..4).map(|i| w[k][i] * fj[i]).sum();
        }
    }

    // Singular values of τ via the Jordan-Wielandt form of its real embedding.
    let r = 2 * m;
    let size = 2 * r;
    let mut jw = vec![0.0; size * size];
    for j in 0..m {
        for k in 0..m {
            let v = tau[j * m + k];
            let block = [(j, k, v.re), (j, k + m, -v.im), (j + m, k, v.im), (j + m, k + m, v.re)];
            for (a, b, x) in block {
                jw[a * size + r + b] = x;
                jw[(r + b) * size + a] = x;
            }
        }
    }
    let values = linalg::symmetric_eigen(&jw, size)?.values;
    let mut sigma: Vec<f64> = values[size - r..].iter().rev().step_by(2).map(|s| s.max(0.0)).collect();
    sigma.resize(4, 0.0);
    let c = sigma[0] - sigma[1] - sigma[2] - sigma[3];
    Ok(c.clamp(0.0, 1.0))
}

fn symmetrize(a: &mut [f64], n: usize) {
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = m;
            a[j * n + i] = m;
        }
    }
}

/// Receiver-side measures at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionRecord {
    pub tau: f64,
    pub concurrence: f64,
    pub eof: f64,
    /// Overlap with the prepared pair state, or `|c|²` on the last receiver
    /// site when a single excitation was sent.
    pub fidelity: f64,
}

/// What a record's fidelity column compares against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FidelityTarget {
    /// Prepared pair as `(amp of |01⟩, amp of |10⟩)`.
    Pair([Complex64; 2]),
    SingleSite,
}

impl TransmissionRecord {
    pub fn measure(tau: f64, pair: &ReducedPair, target: FidelityTarget) -> Result<Self> {
        let concurrence = concurrence_x(pair).min(1.0);
        let eof = eof_from_concurrence(concurrence)?;
        let fidelity = match target {
            FidelityTarget::Pair([a01, a10]) => pair_fidelity(pair, a01, a10),
            FidelityTarget::SingleSite => pair.c_b.norm_sqr(),
        };
        Ok(Self { tau, concurrence, eof, fidelity: fidelity.clamp(0.0, 1.0) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reduced_matrix_layout() {
        let p = ReducedPair::new(c(0.6, 0.0), c(0.0, 0.5)).unwrap();
        let rho = p.density_matrix();
        assert!((rho[0][0].re - 0.39).abs() < 1e-15);
        assert!((rho[1][1].re - 0.25).abs() < 1e-15);
        assert!((rho[2][2].re - 0.36).abs() < 1e-15);
        assert!((rho[1][2] - c(0.0, 0.3)).norm() < 1e-15);
        assert!((rho[2][1] - c(0.0, -0.3)).norm() < 1e-15);
        assert_eq!(rho[3][3], c(0.0, 0.0));
        assert_eq!(rho[0][3], c(0.0, 0.0));
    }

    #[test]
    fn psi_plus_pair() {
        let p = ReducedPair::new(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!((concurrence_x(&p) - 1.0).abs() < 1e-15);
        assert!((bell_fidelity(&p) - 1.0).abs() < 1e-15);
        assert!((wootters_general(&p.density_matrix()).unwrap() - 1.0).abs() < 1e-12);
        let m = ReducedPair::new(c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!(bell_fidelity(&m) < 1e-15);
    }

    #[test]
    fn hand_values() {
        let p = ReducedPair::new(c(0.6, 0.0), c(0.5, 0.0)).unwrap();
        assert!((concurrence_x(&p) - 0.6).abs() < 1e-15);
        assert!((bell_fidelity(&p) - 0.605).abs() < 1e-15);
        assert!((wootters_general(&p.density_matrix()).unwrap() - 0.6).abs() < 1e-12);
        // f = 0.9, h(0.9)
        let h = -0.9 * libm::log2(0.9) - 0.1 * libm::log2(0.1);
        assert!((eof_from_concurrence(0.6).unwrap() - h).abs() < 1e-14);
        assert!((h - 0.46899559).abs() < 1e-8);
    }

    #[test]
    fn separable_states_have_no_concurrence() {
        let zero = c(0.0, 0.0);
        let mut mixed = [[zero; 4]; 4];
        for (i, row) in mixed.iter_mut().enumerate() {
            row[i] = c(0.25, 0.0);
        }
        assert!(wootters_general(&mixed).unwrap().abs() < 1e-12);
        let ground = ReducedPair::new(zero, zero).unwrap();
        assert_eq!(wootters_general(&ground.density_matrix()).unwrap(), 0.0);
        assert_eq!(concurrence_x(&ReducedPair::new(c(0.3, 0.1), zero).unwrap()), 0.0);
    }

    #[test]
    fn eof_endpoints_and_clamping() {
        assert_eq!(eof_from_concurrence(0.0).unwrap(), 0.0);
        assert!((eof_from_concurrence(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(eof_from_concurrence(1.0 + 1e-13).unwrap(), eof_from_concurrence(1.0).unwrap());
        assert_eq!(eof_from_concurrence(-1e-13).unwrap(), 0.0);
        assert!(eof_from_concurrence(1.01).is_err());
        assert!(eof_from_concurrence(-0.01).is_err());
        assert!(eof_from_concurrence(f64::NAN).is_err());
    }

    #[test]
    fn wootters_rejects_bad_input() {
        let zero = c(0.0, 0.0);
        let mut rho = [[zero; 4]; 4];
        rho[0][0] = c(1.0, 0.0);
        rho[0][1] = c(0.1, 0.0);
        assert!(matches!(wootters_general(&rho), Err(Error::NotHermitian { .. })));
        rho[1][0] = c(0.1, 0.0);
        assert!(matches!(wootters_general(&rho), Err(Error::NotPositive(_))));
        let mut half = [[zero; 4]; 4];
        half[0][0] = c(0.5, 0.0);
        assert!(wootters_general(&half).is_err());
    }

    #[test]
    fn pair_norm_is_checked() {
        assert!(ReducedPair::new(c(0.8, 0.0), c(0.8, 0.0)).is_err());
    }
}
