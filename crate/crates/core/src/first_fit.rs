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

//! The First-Fit engine and the path witnesses behind its color counts.
//!
//! First-Fit gives each arriving vertex the least positive color missing
//! from its already-colored neighbors. Two facts make color counts
//! checkable:
//!
//! * a vertex with color `i` is the last vertex of a directed path on `i`
//!   vertices in the order-induced orientation ([`directed_path_witness`]);
//! * on a forest, a run that uses `i >= 2` colors contains a bidirected path
//!   on `2i - 2` vertices ([`bidirected_path_witness`]).
//!
//! Both witnesses are built by back-chaining through earlier neighbors and
//! can be checked independently of the engine.

use alloc::vec;
use alloc::vec::Vec;

use crate::forest::{Forest, Vertex};
use crate::ordering::{check_len, OrderError, Permutation, PositionAssignment};

/// Decides which of two vertices arrives first.
pub trait Precedence {
    fn vertex_count(&self) -> usize;

    /// True iff `u` arrives strictly before `v`.
    fn precedes(&self, u: Vertex, v: Vertex) -> bool;
}

/// Arrival index of every vertex, derived from an explicit order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranks(Vec<u32>);

impl From<&Permutation> for Ranks {
    fn from(order: &Permutation) -> Self {
        Ranks(order.ranks())
    }
}

impl Precedence for Ranks {
    fn vertex_count(&self) -> usize {
        self.0.len()
    }

    #[inline]
    fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        self.0[u as usize] < self.0[v as usize]
    }
}

impl Precedence for PositionAssignment {
    fn vertex_count(&self) -> usize {
        self.len()
    }

    /// Smaller position first, ties by smaller index.
    #[inline]
    fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        let x = self.as_slice();
        let (a, b) = (x[u as usize], x[v as usize]);
        a < b || (a == b && u < v)
    }
}

/// A First-Fit coloring; colors are 1-based and 0 marks "uncolored".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub max_color: u32,
}

impl Coloring {
    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v as usize]
    }

    /// Smallest-index vertex carrying the maximum color.
    pub fn max_color_vertex(&self) -> Option<Vertex> {
        self.colors
            .iter()
            .position(|&c| c == self.max_color && c > 0)
            .map(|v| v as Vertex)
    }
}

/// Least positive integer absent from `colors` (zeros are ignored).
#[inline]
fn least_missing<I: IntoIterator<Item = u32>>(colors: I) -> u32 {
    let mut mask = 0u128;
    let mut high = Vec::new();
    for c in colors {
        match c {
            0 => {}
            1..=128 => mask |= 1u128 << (c - 1),
            _ => high.push(c),
        }
    }
    let low = (!mask).trailing_zeros() + 1;
    if low <= 128 {
        return low;
    }
    high.sort_unstable();
    high.dedup();
    let mut m = 129;
    for c in high {
        if c == m {
            m += 1;
        } else if c > m {
            break;
        }
    }
    m
}

/// Colors `forest` by First-Fit, presenting vertices in `order`.
pub fn first_fit_color(forest: &Forest, order: &Permutation) -> Result<Coloring, OrderError> {
    let mut out = Coloring::default();
    first_fit_color_into(forest, order, &mut out)?;
    Ok(out)
}

/// [`first_fit_color`] writing into a reusable coloring.
pub fn first_fit_color_into(
    forest: &Forest,
    order: &Permutation,
    out: &mut Coloring,
) -> Result<(), OrderError> {
    check_len(order, forest.n())?;
    out.colors.clear();
    out.colors.resize(forest.n(), 0);
    let mut max_color = 0;
    for &v in order.as_slice() {
        let colors = &out.colors;
        let c = least_missing(forest.neighbors(v).iter().map(|&u| colors[u as usize]));
        out.colors[v as usize] = c;
        max_color = max_color.max(c);
    }
    out.max_color = max_color;
    Ok(())
}

/// First-Fit under the order induced by `positions`, without sorting.
///
/// A vertex's color depends only on the colors of its earlier neighbors, so
/// colors are resolved by a depth-first walk along earlier neighbors. The
/// result equals `first_fit_color(forest, &order_from_positions(positions))`.
pub fn first_fit_by_positions(
    forest: &Forest,
    positions: &PositionAssignment,
) -> Result<Coloring, OrderError> {
    let mut out = Coloring::default();
    first_fit_by_positions_into(forest, positions, &mut out, &mut Vec::new())?;
    Ok(out)
}

/// [`first_fit_by_positions`] with caller-owned buffers.
pub fn first_fit_by_positions_into(
    forest: &Forest,
    positions: &PositionAssignment,
    out: &mut Coloring,
    stack: &mut Vec<Vertex>,
) -> Result<(), OrderError> {
    let n = forest.n();
    if positions.len() != n {
        return Err(OrderError::LengthMismatch {
            expected: n,
            found: positions.len(),
        });
    }
    out.colors.clear();
    out.colors.resize(n, 0);
    let colors = &mut out.colors;
    let mut max_color = 0;
    stack.clear();
    for start in 0..n as Vertex {
        if colors[start as usize] != 0 {
            continue;
        }
        stack.push(start);
        while let Some(&v) = stack.last() {
            if colors[v as usize] != 0 {
                stack.pop();
                continue;
            }
            let before = stack.len();
            for &u in forest.neighbors(v) {
                if colors[u as usize] == 0 && positions.precedes(u, v) {
                    stack.push(u);
                }
            }
            if stack.len() == before {
                let c = least_missing(
                    forest
                        .neighbors(v)
                        .iter()
                        .filter(|&&u| positions.precedes(u, v))
                        .map(|&u| colors[u as usize]),
                );
                colors[v as usize] = c;
                max_color = max_color.max(c);
                stack.pop();
            }
        }
    }
    out.max_color = max_color;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringViolation {
    #[error("coloring has {found} entries for {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} is uncolored")]
    Uncolored(Vertex),
    #[error("edge ({0}, {1}) joins two vertices of the same color")]
    Improper(Vertex, Vertex),
    #[error("vertex {vertex} has color {found}, First-Fit gives {expected}")]
    NotGreedy {
        vertex: Vertex,
        expected: u32,
        found: u32,
    },
    #[error("max_color is {found} but the largest color is {expected}")]
    MaxColorMismatch { expected: u32, found: u32 },
}

/// Re-derives properness and the First-Fit rule from scratch and reports the
/// first violation.
pub fn verify_coloring<P: Precedence>(
    forest: &Forest,
    order: &P,
    coloring: &Coloring,
) -> Result<(), ColoringViolation> {
    let n = forest.n();
    for len in [order.vertex_count(), coloring.colors.len()] {
        if len != n {
            return Err(ColoringViolation::LengthMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let colors = &coloring.colors;
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(ColoringViolation::Uncolored(v as Vertex));
    }
    if let Some((u, v)) = forest
        .edges()
        .find(|&(u, v)| colors[u as usize] == colors[v as usize])
    {
        return Err(ColoringViolation::Improper(u, v));
    }
    for v in forest.vertices() {
        let mut earlier: Vec<u32> = forest
            .neighbors(v)
            .iter()
            .filter(|&&u| order.precedes(u, v))
            .map(|&u| colors[u as usize])
            .collect();
        earlier.sort_unstable();
        earlier.dedup();
        let expected = earlier
            .iter()
            .zip(1u32..)
            .find(|&(&c, want)| c != want)
            .map_or(earlier.len() as u32 + 1, |(_, want)| want);
        if colors[v as usize] != expected {
            return Err(ColoringViolation::NotGreedy {
                vertex: v,
                expected,
                found: colors[v as usize],
            });
        }
    }
    let expected = colors.iter().copied().max().unwrap_or(0);
    if coloring.max_color != expected {
        return Err(ColoringViolation::MaxColorMismatch {
            expected,
            found: coloring.max_color,
        });
    }
    Ok(())
}

/// A directed path `p_1, ..., p_i` with strictly increasing arrival.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedPathWitness {
    pub path: Vec<Vertex>,
}

/// A simple path rising in arrival order from both ends to `path[peak]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidirectedPathWitness {
    pub path: Vec<Vertex>,
    pub peak: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("vertex {0} is uncolored")]
    Uncolored(Vertex),
    #[error("vertex {vertex} has no earlier neighbor with color {color}")]
    MissingPredecessor { vertex: Vertex, color: u32 },
    #[error("a bidirected witness needs at least 2 colors, the run used {0}")]
    TooFewColors(u32),
    #[error("the two arms of the bidirected witness share vertex {0}")]
    ArmsIntersect(Vertex),
    #[error("coloring does not match the forest size")]
    SizeMismatch,
}

fn earlier_neighbor_with_color<P: Precedence>(
    forest: &Forest,
    order: &P,
    coloring: &Coloring,
    v: Vertex,
    color: u32,
) -> Result<Vertex, WitnessError> {
    // Adjacency is sorted, so the first hit has the smallest index.
    forest
        .neighbors(v)
        .iter()
        .copied()
        .find(|&u| coloring.colors[u as usize] == color && order.precedes(u, v))
        .ok_or(WitnessError::MissingPredecessor { vertex: v, color })
}

/// Directed path on exactly `c(v)` vertices ending at `v`, found by stepping
/// to an earlier neighbor whose color is one less.
pub fn directed_path_witness<P: Precedence>(
    forest: &Forest,
    order: &P,
    coloring: &Coloring,
    v: Vertex,
) -> Result<DirectedPathWitness, WitnessError> {
    if coloring.colors.len() != forest.n() || order.vertex_count() != forest.n() {
        return Err(WitnessError::SizeMismatch);
    }
    let mut color = coloring.color(v);
    if color == 0 {
        return Err(WitnessError::Uncolored(v));
    }
    let mut path = Vec::with_capacity(color as usize);
    path.push(v);
    let mut current = v;
    while color > 1 {
        current = earlier_neighbor_with_color(forest, order, coloring, current, color - 1)?;
        path.push(current);
        color -= 1;
    }
    path.reverse();
    Ok(DirectedPathWitness { path })
}

/// Bidirected path on exactly `2i - 2` vertices for a run using `i >= 2`
/// colors.
///
/// Takes the smallest vertex `v` of color `i`, its earlier neighbors `u`
/// (color `i - 1`) and `w` (color `i - 2`), and joins the directed witnesses
/// of `w` and `u` through `v`. The arms are checked to be disjoint.
pub fn bidirected_path_witness<P: Precedence>(
    forest: &Forest,
    order: &P,
    coloring: &Coloring,
) -> Result<BidirectedPathWitness, WitnessError> {
    let top = coloring.max_color;
    if top < 2 {
        return Err(WitnessError::TooFewColors(top));
    }
    if coloring.colors.len() != forest.n() {
        return Err(WitnessError::SizeMismatch);
    }
    let v = coloring
        .max_color_vertex()
        .ok_or(WitnessError::TooFewColors(0))?;
    let u = earlier_neighbor_with_color(forest, order, coloring, v, top - 1)?;
    let right = directed_path_witness(forest, order, coloring, u)?.path;
    let left = if top > 2 {
        let w = earlier_neighbor_with_color(forest, order, coloring, v, top - 2)?;
        directed_path_witness(forest, order, coloring, w)?.path
    } else {
        Vec::new()
    };
    if let Some(&shared) = left.iter().find(|x| right.contains(x) || **x == v) {
        return Err(WitnessError::ArmsIntersect(shared));
    }
    if right.contains(&v) {
        return Err(WitnessError::ArmsIntersect(v));
    }
    let peak = left.len();
    let mut path = left;
    path.reserve(right.len() + 1);
    path.push(v);
    path.extend(right.iter().rev());
    Ok(BidirectedPathWitness { path, peak })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessViolation {
    #[error("witness has {found} vertices, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("witness ends at {found}, expected {expected}")]
    WrongEnd { expected: Vertex, found: Vertex },
    #[error("peak index {0} is outside the path")]
    PeakOutOfRange(usize),
    #[error("vertex {0} repeats or is out of range")]
    NotSimple(Vertex),
    #[error("({0}, {1}) is not an edge")]
    NotAdjacent(Vertex, Vertex),
    #[error("arrival order is not monotone between {0} and {1}")]
    NotMonotone(Vertex, Vertex),
}

fn check_simple_path(forest: &Forest, path: &[Vertex]) -> Result<(), WitnessViolation> {
    let mut seen = vec![false; forest.n()];
    for &v in path {
        match seen.get_mut(v as usize) {
            Some(s) if !*s => *s = true,
            _ => return Err(WitnessViolation::NotSimple(v)),
        }
    }
    for pair in path.windows(2) {
        if !forest.is_adjacent(pair[0], pair[1]) {
            return Err(WitnessViolation::NotAdjacent(pair[0], pair[1]));
        }
    }
    Ok(())
}

/// Independent check of a directed witness: simple, adjacent steps, strictly
/// increasing arrival, `expected_len` vertices, ends at `end`.
pub fn verify_directed_witness<P: Precedence>(
    forest: &Forest,
    order: &P,
    witness: &DirectedPathWitness,
    end: Vertex,
    expected_len: usize,
) -> Result<(), WitnessViolation> {
    let path = &witness.path;
    if path.len() != expected_len {
        return Err(WitnessViolation::WrongLength {
            expected: expected_len,
            found: path.len(),
        });
    }
    if let Some(&last) = path.last() {
        if last != end {
            return Err(WitnessViolation::WrongEnd {
                expected: end,
                found: last,
            });
        }
    }
    check_simple_path(forest, path)?;
    for pair in path.windows(2) {
        if !order.precedes(pair[0], pair[1]) {
            return Err(WitnessViolation::NotMonotone(pair[0], pair[1]));
        }
    }
    Ok(())
}

/// Independent check of a bidirected witness: simple, adjacent steps,
/// arrival increasing from both ends toward the peak, `expected_len`
/// vertices.
pub fn verify_bidirected_witness<P: Precedence>(
    forest: &Forest,
    order: &P,
    witness: &BidirectedPathWitness,
    expected_len: usize,
) -> Result<(), WitnessViolation> {
    let path = &witness.path;
    if path.len() != expected_len {
        return Err(WitnessViolation::WrongLength {
            expected: expected_len,
            found: path.len(),
        });
    }
    if witness.peak >= path.len() {
        return Err(WitnessViolation::PeakOutOfRange(witness.peak));
    }
    check_simple_path(forest, path)?;
    for (i, pair) in path.windows(2).enumerate() {
        let (earlier, later) = if i < witness.peak {
            (pair[0], pair[1])
        } else {
            (pair[1], pair[0])
        };
        if !order.precedes(earlier, later) {
            return Err(WitnessViolation::NotMonotone(earlier, later));
        }
    }
    Ok(())
}
