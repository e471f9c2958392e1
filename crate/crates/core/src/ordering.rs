// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Presentation orders.
//!
//! Two samplers produce the same distribution over permutations: a seeded
//! Fisher–Yates shuffle, and the position model in which every vertex draws
//! an independent uniform position and vertices arrive by increasing
//! position. Every random stream is a ChaCha8 generator seeded from a 64-bit
//! value; per-trial seeds come from [`derive_trial_seed`], so a trial's
//! stream depends only on `(base seed, trial index)`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forest::Vertex;

/// The generator behind every seeded stream in this crate.
pub type TrialRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrderError {
    #[error("order has {found} entries but the forest has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("entry {value} at index {index} is repeated or out of range")]
    NotAPermutation { index: usize, value: u64 },
    #[error("position {value} at index {index} is not in [0, 1)")]
    PositionOutOfRange { index: usize, value: f64 },
}

/// A presentation order `v_1, v_2, ..., v_n` over the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<Vertex>);

impl Permutation {
    pub fn new(order: Vec<Vertex>) -> Result<Self, OrderError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for (index, &v) in order.iter().enumerate() {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                _ => {
                    return Err(OrderError::NotAPermutation {
                        index,
                        value: v as u64,
                    })
                }
            }
        }
        Ok(Permutation(order))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as Vertex).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Vertex> {
        self.0
    }

    /// Replaces the order with a fresh uniform permutation of `0..n`.
    pub fn reshuffle<R: Rng>(&mut self, n: usize, rng: &mut R) {
        shuffle_into(&mut self.0, n, rng);
    }

    /// Exchanges the arrivals at indices `i` and `j`.
    pub fn swap(&mut self, i: usize, j: usize) {
        self.0.swap(i, j);
    }

    /// `ranks()[v]` is the index at which `v` arrives.
    pub fn ranks(&self) -> Vec<u32> {
        let mut ranks = vec![0u32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            ranks[v as usize] = i as u32;
        }
        ranks
    }
}

impl AsRef<[Vertex]> for Permutation {
    fn as_ref(&self) -> &[Vertex] {
        &self.0
    }
}

pub(crate) fn check_len(order: &Permutation, n: usize) -> Result<(), OrderError> {
    if order.len() == n {
        Ok(())
    } else {
        Err(OrderError::LengthMismatch {
            expected: n,
            found: order.len(),
        })
    }
}

/// Per-vertex positions in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionAssignment(Vec<f64>);

impl PositionAssignment {
    pub fn new(positions: Vec<f64>) -> Result<Self, OrderError> {
        if let Some((index, &value)) = positions
            .iter()
            .enumerate()
            .find(|(_, x)| !(0.0..1.0).contains(*x))
        {
            return Err(OrderError::PositionOutOfRange { index, value });
        }
        Ok(PositionAssignment(positions))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Redraws every position from `rng`, keeping the allocation.
    pub fn resample<R: RngCore>(&mut self, rng: &mut R) {
        for x in &mut self.0 {
            *x = unit_f64(rng);
        }
    }

    /// Resizes to `n` vertices and redraws every position.
    pub fn resample_n<R: RngCore>(&mut self, n: usize, rng: &mut R) {
        self.0.resize(n, 0.0);
        self.resample(rng);
    }
}

/// Maps the top 53 bits of a 64-bit draw onto `k / 2^53`.
#[inline]
fn unit_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seeded uniform permutation of `0..n` (Fisher–Yates).
pub fn uniform_permutation(n: usize, seed: u64) -> Permutation {
    let mut order = Vec::new();
    shuffle_into(&mut order, n, &mut rng_from_seed(seed));
    Permutation(order)
}

/// Fills `order` with a uniform permutation of `0..n` drawn from `rng`.
pub fn shuffle_into<R: Rng>(order: &mut Vec<Vertex>, n: usize, rng: &mut R) {
    order.clear();
    order.extend(0..n as Vertex);
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
}

/// `n` independent uniform positions, deterministic per seed.
pub fn sample_positions(n: usize, seed: u64) -> PositionAssignment {
    let mut rng = rng_from_seed(seed);
    PositionAssignment((0..n).map(|_| unit_f64(&mut rng)).collect())
}

/// Vertices sorted by position; equal positions arrive by ascending index.
pub fn order_from_positions(positions: &PositionAssignment) -> Permutation {
    let x = positions.as_slice();
    let mut order: Vec<Vertex> = (0..x.len() as Vertex).collect();
    // Stable sort on an index-ascending input breaks ties by index.
    order.sort_by(|&a, &b| x[a as usize].total_cmp(&x[b as usize]));
    Permutation(order)
}

/// Identifies one trial of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub base: u64,
    pub index: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Splitmix64 finalizer over `base + (index + 1) * golden gamma`.
///
/// The increment is odd and the finalizer is a bijection, so distinct indices
/// under one base never collide.
pub fn derive_trial_seed(spec: SeedSpec) -> u64 {
    let mut z = spec
        .base
        .wrapping_add(spec.index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
