// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Counter-based random streams.
//!
//! Every random number in the crate is addressed by a short tuple of integers
//! (base seed, domain tag, realization, edge ordinal, …). The tuple is folded
//! through SplitMix64 into a 256-bit ChaCha8 key, and the first outputs of that
//! generator are used. A draw is therefore a pure function of its address and
//! never depends on evaluation order or worker count.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Recorded in run manifests.
pub const PRNG_NAME: &str = "ChaCha8 keyed by SplitMix64(address tuple)";

/// Domain tags keep streams for different purposes disjoint.
pub mod domain {
    pub const DISORDER: u64 = 0x6469_736f_7264_6572; // "disorder"
    pub const PERTURB: u64 = 0x7065_7274_7572_6221; // "perturb!"
    pub const P_VALUE: u64 = 0x702d_7661_6c75_6521; // "p-value!"
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// One SplitMix64 finalization step.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds an address tuple into a single 64-bit key.
pub fn mix(words: &[u64]) -> u64 {
    let mut h = splitmix64(words.len() as u64);
    for &w in words {
        h = splitmix64(h ^ w);
    }
    h
}

/// ChaCha8 stream for the given address.
pub fn stream(words: &[u64]) -> ChaCha8Rng {
    let mut state = mix(words);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// Uniform draw on `[0, 1)` with 53 bits of resolution.
#[inline]
pub fn unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw on `[-1, 1)`.
#[inline]
pub fn symmetric_unit(rng: &mut impl RngCore) -> f64 {
    2.0 * unit(rng) - 1.0
}
