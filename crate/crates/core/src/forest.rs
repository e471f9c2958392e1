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

//! Validated forests over dense vertex indices `0..n`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::ordering::{self, OrderError, Permutation};

/// Vertex index. Forests are capped well below `u32::MAX` vertices.
pub type Vertex = u32;

/// Largest vertex count any forest may have.
pub const MAX_VERTICES: usize = u32::MAX as usize - 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ForestError {
    #[error("vertex {vertex} out of range for a forest on {n} vertices")]
    OutOfRange { vertex: u64, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge ({0}, {1}) closes a cycle")]
    Cycle(Vertex, Vertex),
    #[error("forest on {0} vertices exceeds the supported size")]
    TooLarge(usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(&'static str),
}

/// An undirected acyclic simple graph stored as sorted adjacency lists.
///
/// Immutable once built; every constructor validates the forest invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    offsets: Vec<usize>,
    adjacency: Vec<Vertex>,
    root: Option<Vertex>,
}

impl Forest {
    /// Builds a forest from an edge list, rejecting self-loops, duplicate
    /// edges, out-of-range endpoints and cycles.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, ForestError> {
        if n > MAX_VERTICES {
            return Err(ForestError::TooLarge(n));
        }
        let mut dsu = DisjointSets::new(n);
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(ForestError::OutOfRange {
                        vertex: w as u64,
                        n,
                    });
                }
            }
            if u == v {
                return Err(ForestError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        let mut sorted = normalized.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ForestError::DuplicateEdge(w[0].0, w[0].1));
        }
        for &(u, v) in edges {
            if !dsu.union(u as usize, v as usize) {
                return Err(ForestError::Cycle(u, v));
            }
        }
        Ok(Self::from_sorted_edges(n, &sorted))
    }

    /// Builds the adjacency arrays from lexicographically sorted edges
    /// already known to form a forest.
    fn from_sorted_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adjacency = vec![0; acc];
        for &(u, v) in edges {
            adjacency[fill[u as usize]] = v;
            fill[u as usize] += 1;
            adjacency[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        let mut forest = Forest {
            offsets,
            adjacency,
            root: None,
        };
        for v in 0..n {
            let (lo, hi) = (forest.offsets[v], forest.offsets[v + 1]);
            forest.adjacency[lo..hi].sort_unstable();
        }
        forest
    }

    /// Builds a rooted tree from a parent array in which every non-root
    /// vertex's parent has a smaller index (preorder labeling).
    pub(crate) fn from_preorder_parents(parents: &[Vertex]) -> Self {
        let n = parents.len() + 1;
        let mut degree = vec![0usize; n];
        for (i, &p) in parents.iter().enumerate() {
            degree[i + 1] += 1;
            degree[p as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        drop(degree);
        let mut fill = offsets[..n].to_vec();
        let mut adjacency = vec![0; acc];
        // Children arrive in increasing index order and every parent is
        // smaller than its children, so writing the parent link of `child`
        // first keeps each list sorted.
        for (i, &p) in parents.iter().enumerate() {
            let child = i + 1;
            adjacency[fill[child]] = p;
            fill[child] += 1;
            adjacency[fill[p as usize]] = child as Vertex;
            fill[p as usize] += 1;
        }
        Forest {
            offsets,
            adjacency,
            root: Some(0),
        }
    }

    /// Returns a copy designating `root` as the root vertex.
    pub fn with_root(mut self, root: Option<Vertex>) -> Result<Self, ForestError> {
        if let Some(r) = root {
            if r as usize >= self.n() {
                return Err(ForestError::OutOfRange {
                    vertex: r as u64,
                    n: self.n(),
                });
            }
        }
        self.root = root;
        Ok(self)
    }

    pub fn empty() -> Self {
        Forest {
            offsets: vec![0],
            adjacency: Vec::new(),
            root: None,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    pub fn root(&self) -> Option<Vertex> {
        self.root
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.offsets
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n() as Vertex).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.n() as Vertex
    }

    pub fn component_count(&self) -> usize {
        self.n() - self.edge_count()
    }

    /// Chromatic number: 0 for the empty forest, 1 when edgeless, else 2.
    pub fn chromatic_number(&self) -> u32 {
        match (self.n(), self.edge_count()) {
            (0, _) => 0,
            (_, 0) => 1,
            _ => 2,
        }
    }

    /// Number of vertices on the longest simple path that ends at `v`.
    pub fn eccentricity_vertices(&self, v: Vertex) -> usize {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[v as usize] = 1;
        queue.push_back(v);
        let mut best = 1;
        while let Some(u) = queue.pop_front() {
            let d = dist[u as usize];
            best = best.max(d);
            for &w in self.neighbors(u) {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        best
    }

    /// Disjoint union; vertices of `other` are shifted past this forest's.
    pub fn disjoint_union(&self, other: &Forest) -> Result<Forest, ForestError> {
        let shift = self.n() as Vertex;
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(ForestError::TooLarge(n));
        }
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Ok(Self::from_sorted_edges(n, &edges))
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// A forest whose edges point from the earlier to the later endpoint of a
/// presentation order.
#[derive(Debug, Clone)]
pub struct OrientedForest<'a> {
    base: &'a Forest,
    ranks: Vec<u32>,
    arcs: Vec<(Vertex, Vertex)>,
}

/// Orients every edge `{u, v}` as `u -> v` iff `u` comes before `v` in `order`.
pub fn orient<'a>(
    forest: &'a Forest,
    order: &Permutation,
) -> Result<OrientedForest<'a>, OrderError> {
    ordering::check_len(order, forest.n())?;
    let ranks = order.ranks();
    let arcs = forest
        .edges()
        .map(|(u, v)| {
            if ranks[u as usize] < ranks[v as usize] {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    Ok(OrientedForest {
        base: forest,
        ranks,
        arcs,
    })
}

impl<'a> OrientedForest<'a> {
    pub fn base(&self) -> &'a Forest {
        self.base
    }

    /// Arcs `(tail, head)`, listed in the lexicographic order of their
    /// underlying undirected edges.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn has_arc(&self, tail: Vertex, head: Vertex) -> bool {
        self.base.is_adjacent(tail, head) && self.ranks[tail as usize] < self.ranks[head as usize]
    }

    /// The undirected edge set, sorted lexicographically.
    pub fn forget_direction(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges: Vec<_> = self
            .arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Kahn's algorithm; `None` if the arcs contain a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let n = self.base.n();
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &(u, v) in &self.arcs {
            indegree[v as usize] += 1;
            out[u as usize].push(v);
        }
        let mut queue: VecDeque<Vertex> = (0..n as Vertex)
            .filter(|&v| indegree[v as usize] == 0)
            .collect();
        let mut result = Vec::with_capacity(n);
        while let Some(u) = queue.pop_front() {
            result.push(u);
            for &v in &out[u as usize] {
                indegree[v as usize] -= 1;
                if indegree[v as usize] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (result.len() == n).then_some(result)
    }

    /// True if every arc goes forward in `order`.
    pub fn is_topological(&self, order: &[Vertex]) -> bool {
        if order.len() != self.base.n() {
            return false;
        }
        let mut pos = vec![usize::MAX; order.len()];
        for (i, &v) in order.iter().enumerate() {
            match pos.get_mut(v as usize) {
                Some(p) if *p == usize::MAX => *p = i,
                _ => return false,
            }
        }
        self.arcs
            .iter()
            .all(|&(u, v)| pos[u as usize] < pos[v as usize])
    }

    /// Vertex count of the longest directed path (0 for the empty forest).
    pub fn longest_path_vertices(&self) -> usize {
        let Some(topo) = self.topological_order() else {
            return 0;
        };
        let mut best = vec![1usize; self.base.n()];
        for &v in &topo {
            for &u in self.base.neighbors(v) {
                if self.ranks[u as usize] < self.ranks[v as usize] {
                    best[v as usize] = best[v as usize].max(best[u as usize] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

/// A family of test forests.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// `0 - 1 - ... - (n-1)`.
    Path { n: usize },
    /// Center 0 joined to every other vertex.
    Star { n: usize },
    /// Uniformly random labeled tree via a random Prüfer sequence.
    Prufer { n: usize },
    /// Disjoint union, parts relabeled consecutively in the listed order.
    Union(Vec<FamilySpec>),
    Explicit {
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
    },
}

/// Generates a member of `spec`; deterministic for a fixed `(spec, seed)`.
pub fn generate(spec: &FamilySpec, seed: u64) -> Result<Forest, ForestError> {
    match spec {
        FamilySpec::Path { n } => {
            check_size(*n)?;
            let edges: Vec<_> = (1..*n as Vertex).map(|v| (v - 1, v)).collect();
            Ok(Forest::from_sorted_edges(*n, &edges))
        }
        FamilySpec::Star { n } => {
            check_size(*n)?;
            let edges: Vec<_> = (1..*n as Vertex).map(|v| (0, v)).collect();
            Ok(Forest::from_sorted_edges(*n, &edges))
        }
        FamilySpec::Prufer { n } => {
            check_size(*n)?;
            let mut rng = ordering::rng_from_seed(seed);
            let mut edges = prufer_tree_edges(*n, &mut rng);
            edges.sort_unstable();
            Ok(Forest::from_sorted_edges(*n, &edges))
        }
        FamilySpec::Union(parts) => {
            let mut acc = Forest::empty();
            for (i, part) in parts.iter().enumerate() {
                let part_seed = ordering::derive_trial_seed(ordering::SeedSpec {
                    base: seed,
                    index: i as u64,
                });
                acc = acc.disjoint_union(&generate(part, part_seed)?)?;
            }
            Ok(acc)
        }
        FamilySpec::Explicit { n, edges } => Forest::new(*n, edges),
    }
}

fn check_size(n: usize) -> Result<(), ForestError> {
    if n > MAX_VERTICES {
        Err(ForestError::TooLarge(n))
    } else {
        Ok(())
    }
}

/// Draws a uniform Prüfer sequence and decodes it in linear time.
fn prufer_tree_edges<R: Rng>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code)
}

pub(crate) fn prufer_decode(n: usize, code: &[usize]) -> Vec<(Vertex, Vertex)> {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(n - 1);
    for &x in code {
        edges.push(((leaf.min(x)) as Vertex, (leaf.max(x)) as Vertex));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf as Vertex, (n - 1) as Vertex));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Forest {
        Forest::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn single_vertex_and_path() {
        let one = Forest::new(1, &[]).unwrap();
        assert_eq!(one.n(), 1);
        assert_eq!(one.edge_count(), 0);

        let p = p4();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(p.neighbors(1), &[0, 2]);
        assert_eq!(p.component_count(), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Forest::new(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(ForestError::Cycle(2, 0))
        );
        assert_eq!(Forest::new(2, &[(1, 1)]), Err(ForestError::SelfLoop(1)));
        assert_eq!(
            Forest::new(3, &[(0, 1), (1, 0)]),
            Err(ForestError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Forest::new(2, &[(0, 2)]),
            Err(ForestError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let f = Forest::new(6, &[(5, 0), (0, 3), (3, 1), (4, 0)]).unwrap();
        assert_eq!(f.neighbors(0), &[3, 4, 5]);
        for u in f.vertices() {
            for &v in f.neighbors(u) {
                assert!(f.neighbors(v).contains(&u));
            }
        }
        assert_eq!(f.component_count(), 2);
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(Forest::new(5, &[]).unwrap().chromatic_number(), 1);
        assert_eq!(p4().chromatic_number(), 2);
        assert_eq!(Forest::empty().chromatic_number(), 0);
    }

    #[test]
    fn orientation_examples() {
        let p2 = Forest::new(2, &[(0, 1)]).unwrap();
        let o = orient(&p2, &Permutation::new(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(o.arcs(), &[(0, 1)]);
        let o = orient(&p2, &Permutation::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(o.arcs(), &[(1, 0)]);

        let p3 = Forest::new(3, &[(0, 1), (1, 2)]).unwrap();
        let o = orient(&p3, &Permutation::new(vec![2, 0, 1]).unwrap()).unwrap();
        assert_eq!(o.arcs(), &[(0, 1), (2, 1)]);
        assert!(o.has_arc(2, 1));
        assert!(!o.has_arc(1, 2));
    }

    #[test]
    fn orientation_rejects_wrong_length() {
        let err = orient(&p4(), &Permutation::new(vec![0, 1]).unwrap()).unwrap_err();
        assert_eq!(
            err,
            OrderError::LengthMismatch {
                expected: 4,
                found: 2
            }
        );
    }

    #[test]
    fn canonical_families() {
        let path = generate(&FamilySpec::Path { n: 4 }, 0).unwrap();
        assert_eq!(path, p4());
        let star = generate(&FamilySpec::Star { n: 4 }, 0).unwrap();
        assert_eq!(
            star.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (0, 3)]
        );
        assert_eq!(generate(&FamilySpec::Path { n: 0 }, 0).unwrap().n(), 0);
    }

    #[test]
    fn union_shifts_labels() {
        let spec = FamilySpec::Union(vec![FamilySpec::Path { n: 2 }, FamilySpec::Star { n: 3 }]);
        let f = generate(&spec, 9).unwrap();
        assert_eq!(f.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3), (2, 4)]);
    }

    #[test]
    fn prufer_decode_known_sequence() {
        // Sequence (3, 3, 3, 4) on six vertices.
        let mut edges = prufer_decode(6, &[3, 3, 3, 4]);
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn prufer_trees_are_trees() {
        for seed in 0..50 {
            for n in [0, 1, 2, 3, 7, 40] {
                let f = generate(&FamilySpec::Prufer { n }, seed).unwrap();
                assert_eq!(f.n(), n);
                assert_eq!(f.edge_count(), n.saturating_sub(1));
            }
        }
    }

    #[test]
    fn longest_path_of_oriented_path() {
        let f = p4();
        let o = orient(&f, &Permutation::new(vec![3, 0, 2, 1]).unwrap()).unwrap();
        // 3 -> 2 -> 1 and 0 -> 1.
        assert_eq!(o.longest_path_vertices(), 3);
        assert!(o.is_topological(&[3, 0, 2, 1]));
        assert!(!o.is_topological(&[1, 0, 2, 3]));
    }

    #[test]
    fn eccentricity_counts_vertices() {
        assert_eq!(p4().eccentricity_vertices(0), 4);
        assert_eq!(p4().eccentricity_vertices(1), 3);
    }
}
