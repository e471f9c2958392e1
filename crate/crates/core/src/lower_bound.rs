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

//! The recursive lower-bound trees.
//!
//! `T(1)` is a single vertex. `T(i + 1)` is a fresh root joined to the roots
//! of `r` copies of each of `T(1), ..., T(i)`, so its root has degree `r * i`
//! and `|T(k)| = (r + 1)^(k - 1)`. Under a uniformly random order First-Fit
//! colors the root of `T(k)` with color `k` with probability at least
//! `1 - gamma` once `r >= ceil(10 k ln k / gamma^2)`.

use alloc::vec::Vec;

use crate::forest::{Forest, Vertex};

/// Default ceiling on constructed tree sizes.
pub const DEFAULT_VERTEX_CAP: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LowerBoundError {
    #[error("k must be at least 1, got {0}")]
    InvalidK(u32),
    #[error("gamma must lie in (0, 1), got {0}")]
    InvalidGamma(f64),
    #[error("r must be at least 1, got {0}")]
    InvalidR(u64),
    #[error("the calibrated gamma = 1/ln k needs k >= 3, got {0}")]
    CalibrationNeedsK3(u32),
    #[error("(r + 1)^(k - 1) overflows for k = {k}, r = {r}")]
    Overflow { k: u32, r: u64 },
    #[error("tree would have {size} vertices, above the cap of {cap}")]
    ExceedsCap { size: u64, cap: u64 },
}

/// Parameters of the construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundParams {
    pub k: u32,
    pub gamma: f64,
    /// `10 / gamma^2`.
    pub c: f64,
    pub r: u64,
    /// True when `r` was supplied instead of derived from `c`.
    pub r_overridden: bool,
    /// `epsilons[i - 1] = i * gamma / k`.
    pub epsilons: Vec<f64>,
}

impl LowerBoundParams {
    /// Upper bound on the probability that the root of `T(i)` gets a color
    /// below `i`.
    pub fn epsilon(&self, i: u32) -> f64 {
        self.epsilons[i as usize - 1]
    }

    pub fn tree_size(&self) -> Result<u64, LowerBoundError> {
        lb_tree_size(self.k, self.r)
    }
}

/// `c = 10 / gamma^2`, `r = ceil(c k ln k)` (at least 1) unless overridden,
/// `eps_i = i gamma / k`.
pub fn derive_params(
    k: u32,
    gamma: f64,
    r_override: Option<u64>,
) -> Result<LowerBoundParams, LowerBoundError> {
    if k < 1 {
        return Err(LowerBoundError::InvalidK(k));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(LowerBoundError::InvalidGamma(gamma));
    }
    let c = 10.0 / (gamma * gamma);
    let r = match r_override {
        Some(0) => return Err(LowerBoundError::InvalidR(0)),
        Some(r) => r,
        None => {
            let kf = k as f64;
            (libm::ceil(c * kf * libm::log(kf)) as u64).max(1)
        }
    };
    Ok(LowerBoundParams {
        k,
        gamma,
        c,
        r,
        r_overridden: r_override.is_some(),
        epsilons: epsilons(k, gamma),
    })
}

/// The calibration `gamma = 1 / ln k`, for which `r = ceil(10 k ln^3 k)`.
pub fn calibrated_params(k: u32) -> Result<LowerBoundParams, LowerBoundError> {
    if k < 3 {
        return Err(LowerBoundError::CalibrationNeedsK3(k));
    }
    let kf = k as f64;
    let ln_k = libm::log(kf);
    let gamma = 1.0 / ln_k;
    // Evaluate the simplified form directly; c k ln k rounds differently.
    let r = libm::ceil(10.0 * kf * ln_k * ln_k * ln_k) as u64;
    Ok(LowerBoundParams {
        k,
        gamma,
        c: 10.0 * ln_k * ln_k,
        r,
        r_overridden: false,
        epsilons: epsilons(k, gamma),
    })
}

fn epsilons(k: u32, gamma: f64) -> Vec<f64> {
    (1..=k).map(|i| i as f64 * gamma / k as f64).collect()
}

/// `(r + 1)^(k - 1)` with overflow reported.
pub fn lb_tree_size(k: u32, r: u64) -> Result<u64, LowerBoundError> {
    if k < 1 {
        return Err(LowerBoundError::InvalidK(k));
    }
    if r < 1 {
        return Err(LowerBoundError::InvalidR(r));
    }
    r.checked_add(1)
        .and_then(|b| b.checked_pow(k - 1))
        .ok_or(LowerBoundError::Overflow { k, r })
}

/// A constructed `T(k)` with per-vertex level labels.
///
/// Vertices are numbered in preorder: the root is 0, then its child subtrees
/// in order of (level, copy), each numbered the same way recursively.
#[derive(Debug, Clone)]
pub struct RootedLbTree {
    pub forest: Forest,
    pub root: Vertex,
    pub k: u32,
    pub r: u64,
    /// Level of the subtree each vertex roots (1 for leaves).
    pub levels: Vec<u8>,
}

impl RootedLbTree {
    pub fn n(&self) -> usize {
        self.forest.n()
    }
}

/// Builds `T(k)` with branching `r`, refusing trees above `vertex_cap`.
pub fn build_lb_tree(k: u32, r: u64, vertex_cap: u64) -> Result<RootedLbTree, LowerBoundError> {
    let size = lb_tree_size(k, r)?;
    if size > vertex_cap || size > crate::forest::MAX_VERTICES as u64 {
        return Err(LowerBoundError::ExceedsCap {
            size,
            cap: vertex_cap,
        });
    }
    if k > u8::MAX as u32 {
        return Err(LowerBoundError::ExceedsCap {
            size,
            cap: vertex_cap,
        });
    }
    let size = size as usize;
    let mut levels = Vec::with_capacity(size);
    let mut parents: Vec<Vertex> = Vec::with_capacity(size.saturating_sub(1));
    levels.push(k as u8);
    // Explicit stack of (vertex, level, next child level, copies emitted).
    let mut stack: Vec<(Vertex, u32, u32, u64)> = Vec::with_capacity(k as usize);
    stack.push((0, k, 1, 0));
    while let Some(top) = stack.last_mut() {
        let (v, level, child_level, copies) = *top;
        if child_level >= level {
            stack.pop();
            continue;
        }
        if copies + 1 == r {
            top.2 += 1;
            top.3 = 0;
        } else {
            top.3 += 1;
        }
        let child = levels.len() as Vertex;
        levels.push(child_level as u8);
        parents.push(v);
        if child_level > 1 {
            stack.push((child, child_level, 1, 0));
        }
    }
    debug_assert_eq!(levels.len(), size);
    let forest = if size == 1 {
        Forest::new(1, &[])
            .expect("single vertex")
            .with_root(Some(0))
            .expect("root in range")
    } else {
        Forest::from_preorder_parents(&parents)
    };
    Ok(RootedLbTree {
        forest,
        root: 0,
        k,
        r,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn params_k3_gamma_half() {
        let p = derive_params(3, 0.5, None).unwrap();
        assert_eq!(p.c, 40.0);
        assert_eq!(p.r, 132);
        assert!(!p.r_overridden);
        let want = [1.0 / 6.0, 1.0 / 3.0, 0.5];
        for (e, w) in p.epsilons.iter().zip(want) {
            assert!((e - w).abs() < 1e-15);
        }
        assert_eq!(p.epsilon(3), 0.5);
    }

    #[test]
    fn params_k4_gamma_half() {
        assert_eq!(derive_params(4, 0.5, None).unwrap().r, 222);
    }

    #[test]
    fn calibrated_k3() {
        let p = calibrated_params(3).unwrap();
        assert_eq!(p.r, 40);
        assert!((p.gamma - 1.0 / libm::log(3.0)).abs() < 1e-15);
        assert_eq!(
            calibrated_params(2),
            Err(LowerBoundError::CalibrationNeedsK3(2))
        );
    }

    #[test]
    fn params_k1_and_errors() {
        let p = derive_params(1, 0.9, None).unwrap();
        assert_eq!(p.epsilons, vec![0.9]);
        assert_eq!(p.r, 1);
        assert_eq!(p.tree_size().unwrap(), 1);
        assert_eq!(
            derive_params(1, 0.9, Some(17))
                .unwrap()
                .tree_size()
                .unwrap(),
            1
        );
        assert!(matches!(
            derive_params(0, 0.5, None),
            Err(LowerBoundError::InvalidK(0))
        ));
        assert!(matches!(
            derive_params(3, 1.0, None),
            Err(LowerBoundError::InvalidGamma(_))
        ));
        assert!(matches!(
            derive_params(3, 0.0, None),
            Err(LowerBoundError::InvalidGamma(_))
        ));
        assert!(matches!(
            derive_params(3, 0.5, Some(0)),
            Err(LowerBoundError::InvalidR(0))
        ));
        let o = derive_params(3, 0.5, Some(2)).unwrap();
        assert!(o.r_overridden);
        assert_eq!(o.r, 2);
    }

    #[test]
    fn sizes() {
        assert_eq!(lb_tree_size(1, 7), Ok(1));
        assert_eq!(lb_tree_size(4, 3), Ok(64));
        assert_eq!(lb_tree_size(3, 132), Ok(17_689));
        assert_eq!(
            lb_tree_size(40, 1_000_000),
            Err(LowerBoundError::Overflow {
                k: 40,
                r: 1_000_000
            })
        );
    }

    #[test]
    fn small_trees() {
        let t = build_lb_tree(1, 5, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.levels, vec![1]);

        let t = build_lb_tree(3, 2, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(t.n(), 9);
        assert_eq!(t.forest.degree(0), 4);
        // root, two leaves, then two copies of T(2) (root + 2 leaves each).
        assert_eq!(t.levels, vec![3, 1, 1, 2, 1, 1, 2, 1, 1]);
        assert_eq!(
            t.forest.edges().collect::<vec::Vec<_>>(),
            vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 6),
                (3, 4),
                (3, 5),
                (6, 7),
                (6, 8)
            ]
        );
        assert_eq!(t.forest.root(), Some(0));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            build_lb_tree(3, 132, 10_000).unwrap_err(),
            LowerBoundError::ExceedsCap {
                size: 17_689,
                cap: 10_000
            }
        );
    }

    #[test]
    fn root_degree_and_levels() {
        for k in 1..=5u32 {
            for r in 1..=4u64 {
                let t = build_lb_tree(k, r, DEFAULT_VERTEX_CAP).unwrap();
                for v in t.forest.vertices() {
                    let level = t.levels[v as usize] as u64;
                    let children = t.forest.degree(v) - usize::from(v != 0);
                    assert_eq!(children as u64, r * (level - 1));
                }
            }
        }
    }
}
