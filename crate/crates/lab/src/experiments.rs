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

//! Monte Carlo estimation, exhaustive oracles and lower-bound experiments.
//!
//! Every Monte Carlo trial draws its order from a generator seeded with
//! `derive_trial_seed(base_seed, trial)`, and trials are reduced by merging
//! integer histograms, so results depend only on the inputs and the base
//! seed, never on the number of worker threads.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use ffrand_core::first_fit::{
    bidirected_path_witness, directed_path_witness, first_fit_by_positions_into,
    first_fit_color_into, verify_bidirected_witness, verify_coloring, verify_directed_witness,
    Coloring, ColoringViolation, Precedence, Ranks, WitnessError, WitnessViolation,
};
use ffrand_core::forest::{Forest, Vertex};
use ffrand_core::lower_bound::{build_lb_tree, LowerBoundError, LowerBoundParams};
use ffrand_core::ordering::{
    derive_trial_seed, rng_from_seed, Permutation, PositionAssignment, SeedSpec,
};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::stats::{mean_and_std_error, Proportion, Z95};

/// Largest forest whose `n!` orders are enumerated by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;
/// Largest `n` for which all forests are enumerated.
pub const SMALL_RFF_CAP: usize = 6;
/// Below this many vertices [`CheckMode::Auto`] checks every trial.
pub const CHECK_ALL_BELOW: usize = 100_000;
/// Above [`CHECK_ALL_BELOW`], [`CheckMode::Auto`] checks one trial in this many.
pub const SAMPLED_CHECK_EVERY: u64 = 100;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExperimentError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("trial {trial} failed verification: {source}")]
    CheckFailed { trial: u64, source: RunCheckError },
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    LowerBound(#[from] LowerBoundError),
}

/// Which trials get their coloring and witnesses verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Every trial below [`CHECK_ALL_BELOW`] vertices, else one in
    /// [`SAMPLED_CHECK_EVERY`].
    #[default]
    Auto,
    Always,
    Never,
}

impl CheckMode {
    fn should_check(self, n: usize, trial: u64) -> bool {
        match self {
            CheckMode::Always => true,
            CheckMode::Never => false,
            CheckMode::Auto => n < CHECK_ALL_BELOW || trial % SAMPLED_CHECK_EVERY == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunCheckError {
    #[error(transparent)]
    Coloring(#[from] ColoringViolation),
    #[error(transparent)]
    Extraction(#[from] WitnessError),
    #[error(transparent)]
    Witness(#[from] WitnessViolation),
}

/// Verifies a First-Fit run end to end: the coloring itself, a directed
/// witness of `max_color` vertices ending at a max-color vertex, and (when
/// at least two colors were used) a bidirected witness of `2 max - 2`
/// vertices.
pub fn check_run<P: Precedence>(
    forest: &Forest,
    order: &P,
    coloring: &Coloring,
) -> Result<(), RunCheckError> {
    verify_coloring(forest, order, coloring)?;
    let Some(top) = coloring.max_color_vertex() else {
        return Ok(());
    };
    let directed = directed_path_witness(forest, order, coloring, top)?;
    verify_directed_witness(forest, order, &directed, top, coloring.max_color as usize)?;
    if coloring.max_color >= 2 {
        let bidirected = bidirected_path_witness(forest, order, coloring)?;
        let len = 2 * coloring.max_color as usize - 2;
        verify_bidirected_witness(forest, order, &bidirected, len)?;
    }
    Ok(())
}

/// Estimated expected number of First-Fit colors for one forest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub trials: u64,
    pub base_seed: u64,
    pub n: usize,
    pub color_histogram: BTreeMap<u32, u64>,
    pub mean: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    /// Trials whose coloring and witnesses were verified.
    pub checked_trials: u64,
    /// Seconds; kept out of serialized results so reruns are byte-identical.
    #[serde(skip)]
    pub wall_time: f64,
}

impl ExperimentResult {
    fn from_histogram(
        n: usize,
        base_seed: u64,
        histogram: BTreeMap<u32, u64>,
        checked_trials: u64,
        wall_time: f64,
    ) -> Self {
        let trials = histogram.values().sum();
        let (mean, std_error) = mean_and_std_error(histogram.iter().map(|(&c, &k)| (c, k)));
        ExperimentResult {
            trials,
            base_seed,
            n,
            color_histogram: histogram,
            mean,
            std_error,
            ci95: (mean - Z95 * std_error, mean + Z95 * std_error),
            checked_trials,
            wall_time,
        }
    }

    /// Empirical probability that a run used at least `colors` colors.
    pub fn tail_probability(&self, colors: u32) -> Proportion {
        let hits = self.color_histogram.range(colors..).map(|(_, &c)| c).sum();
        Proportion::new(hits, self.trials)
    }

    /// Mean divided by the chromatic number of the forest.
    pub fn performance_ratio(&self, chromatic_number: u32) -> f64 {
        if chromatic_number == 0 {
            0.0
        } else {
            self.mean / chromatic_number as f64
        }
    }
}

/// Integer counts merged across workers.
#[derive(Debug, Default)]
struct Tally {
    histogram: Vec<u64>,
    secondary: Vec<u64>,
    checked: u64,
    extra: u64,
    failure: Option<(u64, RunCheckError)>,
}

fn bump(histogram: &mut Vec<u64>, value: u32) {
    let i = value as usize;
    if histogram.len() <= i {
        histogram.resize(i + 1, 0);
    }
    histogram[i] += 1;
}

fn add_into(into: &mut Vec<u64>, from: &[u64]) {
    if into.len() < from.len() {
        into.resize(from.len(), 0);
    }
    for (a, b) in into.iter_mut().zip(from) {
        *a += b;
    }
}

fn to_map(histogram: &[u64]) -> BTreeMap<u32, u64> {
    histogram
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, &c)| (v as u32, c))
        .collect()
}

impl Tally {
    fn fail(&mut self, trial: u64, err: RunCheckError) {
        // Keep the earliest failing trial so the report is schedule-invariant.
        if self.failure.as_ref().map_or(true, |(t, _)| trial < *t) {
            self.failure = Some((trial, err));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        add_into(&mut self.histogram, &other.histogram);
        add_into(&mut self.secondary, &other.secondary);
        self.checked += other.checked;
        self.extra += other.extra;
        if let Some((t, e)) = other.failure {
            self.fail(t, e);
        }
        self
    }

    fn into_result(self) -> Result<Tally, ExperimentError> {
        match self.failure {
            Some((trial, source)) => Err(ExperimentError::CheckFailed { trial, source }),
            None => Ok(self),
        }
    }
}

fn min_chunk(n: usize) -> usize {
    (4096 / n.max(1)).clamp(1, 1024)
}

/// Estimates the expected number of colors First-Fit uses on `forest` under
/// uniformly random orders.
pub fn estimate_expected_colors(
    forest: &Forest,
    trials: u64,
    base_seed: u64,
    check: CheckMode,
) -> Result<ExperimentResult, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let start = Instant::now();
    let n = forest.n();
    let tally = (0..trials as usize)
        .into_par_iter()
        .map(|t| t as u64)
        .with_min_len(min_chunk(n))
        .fold(
            || {
                (
                    Tally::default(),
                    Permutation::identity(0),
                    Coloring::default(),
                )
            },
            |(mut tally, mut order, mut coloring), trial| {
                let mut rng = rng_from_seed(derive_trial_seed(SeedSpec {
                    base: base_seed,
                    index: trial,
                }));
                order.reshuffle(n, &mut rng);
                first_fit_color_into(forest, &order, &mut coloring)
                    .expect("order covers the forest");
                bump(&mut tally.histogram, coloring.max_color);
                if check.should_check(n, trial) {
                    match check_run(forest, &Ranks::from(&order), &coloring) {
                        Ok(()) => tally.checked += 1,
                        Err(e) => tally.fail(trial, e),
                    }
                }
                (tally, order, coloring)
            },
        )
        .map(|(tally, _, _)| tally)
        .reduce(Tally::default, Tally::merge)
        .into_result()?;
    Ok(ExperimentResult::from_histogram(
        n,
        base_seed,
        to_map(&tally.histogram),
        tally.checked,
        start.elapsed().as_secs_f64(),
    ))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Calls `visit` once for every order of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&Permutation)) {
    let mut order = Permutation::identity(n);
    visit(&order);
    let mut counters = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(counters[i], i);
            }
            visit(&order);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Number of orders (out of `n!`) producing each max color.
pub fn exact_color_histogram(
    forest: &Forest,
    cap: usize,
) -> Result<BTreeMap<u32, u64>, ExperimentError> {
    let n = forest.n();
    if n > cap || n > 20 {
        return Err(ExperimentError::CapExceeded { n, cap });
    }
    let mut histogram = Vec::new();
    let mut coloring = Coloring::default();
    for_each_permutation(n, |order| {
        first_fit_color_into(forest, order, &mut coloring).expect("order covers the forest");
        bump(&mut histogram, coloring.max_color);
    });
    Ok(to_map(&histogram))
}

/// Exact expected number of First-Fit colors, averaging over all `n!`
/// orders.
pub fn exact_expected_colors(forest: &Forest, cap: usize) -> Result<Ratio<u64>, ExperimentError> {
    let histogram = exact_color_histogram(forest, cap)?;
    let total: u64 = histogram.iter().map(|(&c, &k)| c as u64 * k).sum();
    Ok(Ratio::new(total, factorial(forest.n())))
}

/// Largest First-Fit color count over orders, with an order attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstCase {
    pub max_colors: u32,
    pub order: Permutation,
    /// True when `max_colors` is proven optimal; false when the search budget
    /// ran out first, making `max_colors` only a lower bound.
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Largest color count First-Fit can be forced to use on a forest:
/// `min(max degree + 1, floor(log2 n) + 1)`.
fn forest_color_ceiling(forest: &Forest) -> u32 {
    let n = forest.n();
    if n == 0 {
        return 0;
    }
    let log_bound = usize::BITS - n.leading_zeros();
    (forest.max_degree() as u32 + 1).min(log_bound)
}

/// Searches all arrival sequences depth-first for the worst First-Fit order.
///
/// Forests with at most [`DEFAULT_ENUMERATION_CAP`] vertices are searched
/// exhaustively when `budget` is `None`; larger ones need a node budget.
pub fn worst_case_colors(
    forest: &Forest,
    budget: Option<u64>,
) -> Result<WorstCase, ExperimentError> {
    let n = forest.n();
    if budget.is_none() && n > DEFAULT_ENUMERATION_CAP {
        return Err(ExperimentError::CapExceeded {
            n,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let budget = budget.unwrap_or(u64::MAX);
    let ceiling = forest_color_ceiling(forest);

    let mut colors = vec![0u32; n];
    let mut sequence: Vec<Vertex> = Vec::with_capacity(n);
    let mut running_max: Vec<u32> = Vec::with_capacity(n + 1);
    let mut next_candidate: Vec<usize> = Vec::with_capacity(n + 1);
    running_max.push(0);
    next_candidate.push(0);

    let mut best = 0u32;
    let mut best_order = Permutation::identity(n);
    let mut nodes = 0u64;
    let mut complete = true;

    while best < ceiling {
        let depth = sequence.len();
        let start = next_candidate[depth];
        let next = (start..n).find(|&v| colors[v] == 0);
        let Some(v) = next else {
            // Every extension tried: backtrack.
            if depth == 0 {
                break;
            }
            let last = sequence.pop().expect("depth > 0");
            colors[last as usize] = 0;
            running_max.pop();
            next_candidate.pop();
            continue;
        };
        if nodes == budget {
            complete = false;
            break;
        }
        nodes += 1;
        next_candidate[depth] = v + 1;
        let mut used: Vec<u32> = forest
            .neighbors(v as Vertex)
            .iter()
            .map(|&u| colors[u as usize])
            .filter(|&c| c > 0)
            .collect();
        used.sort_unstable();
        used.dedup();
        let c = used
            .iter()
            .zip(1u32..)
            .find(|&(&u, want)| u != want)
            .map_or(used.len() as u32 + 1, |(_, want)| want);
        colors[v] = c;
        sequence.push(v as Vertex);
        let max = running_max[depth].max(c);
        running_max.push(max);
        next_candidate.push(0);
        if max > best {
            // Appending the remaining vertices cannot lower the max.
            best = max;
            let mut order = sequence.clone();
            order.extend((0..n as Vertex).filter(|&u| colors[u as usize] == 0));
            best_order = Permutation::new(order).expect("sequence plus rest is a permutation");
        }
    }
    Ok(WorstCase {
        max_colors: best,
        order: best_order,
        exhaustive: complete || best == ceiling,
        nodes,
    })
}

/// Maximum over forests on `n` vertices of the exact expected First-Fit
/// ratio, with a forest attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallRff {
    pub n: usize,
    pub ratio: Ratio<u64>,
    pub maximizer: Forest,
    /// Number of forests examined (one per isomorphism class).
    pub classes: usize,
}

/// All forests on `n` vertices up to isomorphism, as canonical edge lists.
pub fn forests_up_to_isomorphism(n: usize) -> Result<Vec<Forest>, ExperimentError> {
    if n > SMALL_RFF_CAP {
        return Err(ExperimentError::CapExceeded {
            n,
            cap: SMALL_RFF_CAP,
        });
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex)
        .flat_map(|u| (u + 1..n as Vertex).map(move |v| (u, v)))
        .collect();
    let mut relabelings = Vec::with_capacity(factorial(n) as usize);
    for_each_permutation(n, |p| relabelings.push(p.as_slice().to_vec()));

    let mut classes = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        if mask.count_ones() as usize >= n.max(1) {
            continue;
        }
        let edges: Vec<_> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        if Forest::new(n, &edges).is_err() {
            continue;
        }
        let canonical = relabelings
            .iter()
            .map(|relabel| {
                let mut mapped: Vec<_> = edges
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (relabel[u as usize], relabel[v as usize]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                mapped.sort_unstable();
                mapped
            })
            .min()
            .unwrap_or_default();
        classes.insert(canonical);
    }
    Ok(classes
        .into_iter()
        .map(|edges| Forest::new(n, &edges).expect("canonical relabeling is a forest"))
        .collect())
}

/// Exact maximum expected First-Fit ratio over forests on `n` vertices.
pub fn small_rff(n: usize) -> Result<SmallRff, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::InvalidArgument("small_rff needs n >= 1"));
    }
    let forests = forests_up_to_isomorphism(n)?;
    let classes = forests.len();
    let mut best: Option<(Ratio<u64>, Forest)> = None;
    for forest in forests {
        let expected = exact_expected_colors(&forest, SMALL_RFF_CAP)?;
        let ratio = expected / forest.chromatic_number() as u64;
        if best.as_ref().map_or(true, |(b, _)| ratio > *b) {
            best = Some((ratio, forest));
        }
    }
    let (ratio, maximizer) = best.expect("at least the edgeless forest exists");
    Ok(SmallRff {
        n,
        ratio,
        maximizer,
        classes,
    })
}

/// Which levels of the tree family a root-color experiment colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelSelection {
    /// Every `T(i)` for `i = 1..=k`.
    #[default]
    All,
    /// Only `T(k)`.
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootColorOptions {
    pub vertex_cap: u64,
    pub check: CheckMode,
    pub levels: LevelSelection,
}

impl Default for RootColorOptions {
    fn default() -> Self {
        RootColorOptions {
            vertex_cap: ffrand_core::lower_bound::DEFAULT_VERTEX_CAP,
            check: CheckMode::Auto,
            levels: LevelSelection::All,
        }
    }
}

/// Outcome of coloring a standalone `T(i)` many times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: u32,
    pub n: u64,
    /// `i * gamma / k`.
    pub epsilon: f64,
    pub root_color_histogram: BTreeMap<u32, u64>,
    pub max_color_histogram: BTreeMap<u32, u64>,
    /// Root colored below `level`.
    pub p_b: Proportion,
    /// Root colored above `level`; always zero for a correct engine.
    pub root_above_level: u64,
    pub checked_trials: u64,
}

/// Root colors of the lower-bound trees under position-model orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootColorReport {
    pub k: u32,
    pub gamma: f64,
    pub c: f64,
    pub r: u64,
    pub r_overridden: bool,
    pub trials: u64,
    pub base_seed: u64,
    pub levels: Vec<LevelReport>,
    /// Empirical distribution of the root color of `T(k)`.
    pub root_color_probabilities: BTreeMap<u32, f64>,
    /// Root of `T(k)` colored below `k`.
    pub p_b_k: Proportion,
    /// First-Fit used exactly `k` colors on `T(k)`.
    pub p_chi_eq_k: Proportion,
    pub root_above_level: u64,
    pub checked_trials: u64,
    #[serde(skip)]
    pub wall_time: f64,
}

fn level_seed(base_seed: u64, level: u32) -> u64 {
    derive_trial_seed(SeedSpec {
        base: base_seed,
        index: level as u64,
    })
}

/// Colors `T(i)` (for the selected levels) under `trials` position-model
/// orders each and reports how often the root falls short of its level and
/// how often `T(k)` needs all `k` colors.
pub fn root_color_experiment(
    params: &LowerBoundParams,
    trials: u64,
    base_seed: u64,
    options: &RootColorOptions,
) -> Result<RootColorReport, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let start = Instant::now();
    let k = params.k;
    // Fail on the largest tree before spending time on the small ones.
    let top_size = params.tree_size()?;
    if top_size > options.vertex_cap {
        return Err(LowerBoundError::ExceedsCap {
            size: top_size,
            cap: options.vertex_cap,
        }
        .into());
    }
    let first = match options.levels {
        LevelSelection::All => 1,
        LevelSelection::Top => k,
    };
    let mut levels = Vec::new();
    for level in first..=k {
        let tree = build_lb_tree(level, params.r, options.vertex_cap)?;
        let n = tree.n();
        let seed = level_seed(base_seed, level);
        let tally = (0..trials as usize)
            .into_par_iter()
            .map(|t| t as u64)
            .with_min_len(min_chunk(n))
            .fold(
                || {
                    (
                        Tally::default(),
                        PositionAssignment::new(Vec::new()).expect("empty"),
                        Coloring::default(),
                        Vec::new(),
                    )
                },
                |(mut tally, mut positions, mut coloring, mut stack), trial| {
                    let mut rng = rng_from_seed(derive_trial_seed(SeedSpec {
                        base: seed,
                        index: trial,
                    }));
                    positions.resample_n(n, &mut rng);
                    first_fit_by_positions_into(
                        &tree.forest,
                        &positions,
                        &mut coloring,
                        &mut stack,
                    )
                    .expect("positions cover the tree");
                    let root_color = coloring.color(tree.root);
                    bump(&mut tally.histogram, root_color);
                    bump(&mut tally.secondary, coloring.max_color);
                    if root_color > level {
                        tally.extra += 1;
                    }
                    if options.check.should_check(n, trial) {
                        match check_run(&tree.forest, &positions, &coloring) {
                            Ok(()) => tally.checked += 1,
                            Err(e) => tally.fail(trial, e),
                        }
                    }
                    (tally, positions, coloring, stack)
                },
            )
            .map(|(tally, ..)| tally)
            .reduce(Tally::default, Tally::merge)
            .into_result()?;
        let below: u64 = tally.histogram.iter().take(level as usize).sum();
        levels.push(LevelReport {
            level,
            n: n as u64,
            epsilon: params.epsilon(level),
            root_color_histogram: to_map(&tally.histogram),
            max_color_histogram: to_map(&tally.secondary),
            p_b: Proportion::new(below, trials),
            root_above_level: tally.extra,
            checked_trials: tally.checked,
        });
    }
    let top = levels.last().expect("level k is always run");
    let root_color_probabilities = top
        .root_color_histogram
        .iter()
        .map(|(&c, &count)| (c, count as f64 / trials as f64))
        .collect();
    let exactly_k = top.max_color_histogram.get(&k).copied().unwrap_or(0);
    Ok(RootColorReport {
        k,
        gamma: params.gamma,
        c: params.c,
        r: params.r,
        r_overridden: params.r_overridden,
        trials,
        base_seed,
        root_color_probabilities,
        p_b_k: top.p_b,
        p_chi_eq_k: Proportion::new(exactly_k, trials),
        root_above_level: levels.iter().map(|l| l.root_above_level).sum(),
        checked_trials: levels.iter().map(|l| l.checked_trials).sum(),
        levels,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
