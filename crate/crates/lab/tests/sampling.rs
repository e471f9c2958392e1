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

//! Distributional checks on the samplers and the Monte Carlo harness.

use std::collections::{BTreeMap, HashSet};

use ffrand_core::bounds::union_bound_tail;
use ffrand_core::forest::{generate, FamilySpec, Vertex};
use ffrand_core::ordering::{
    derive_trial_seed, order_from_positions, sample_positions, uniform_permutation, SeedSpec,
};
use ffrand_lab::corpus::small_corpus;
use ffrand_lab::experiments::{estimate_expected_colors, exact_expected_colors, CheckMode};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Upper-tail p-value of Pearson's statistic against a uniform law on
/// `categories` outcomes.
fn uniform_p_value<K: Ord>(counts: &BTreeMap<K, u64>, categories: usize) -> f64 {
    assert_eq!(counts.len(), categories, "some outcome never appeared");
    let total: u64 = counts.values().sum();
    let expected = total as f64 / categories as f64;
    let stat: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    ChiSquared::new((categories - 1) as f64).unwrap().sf(stat)
}

fn prufer_counts(n: usize, samples: u64) -> BTreeMap<Vec<(Vertex, Vertex)>, u64> {
    let mut counts = BTreeMap::new();
    for seed in 0..samples {
        let tree = generate(&FamilySpec::Prufer { n }, seed).unwrap();
        *counts.entry(tree.edges().collect::<Vec<_>>()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn prufer_trees_are_uniform() {
    // Cayley: n^(n-2) labeled trees.
    let p3 = uniform_p_value(&prufer_counts(3, 10_000), 3);
    assert!(p3 > 1e-3, "n=3 p={p3}");
    let p4 = uniform_p_value(&prufer_counts(4, 100_000), 16);
    assert!(p4 > 1e-3, "n=4 p={p4}");
}

#[test]
fn both_order_samplers_are_uniform_on_four_vertices() {
    let mut shuffled = BTreeMap::new();
    let mut positioned = BTreeMap::new();
    for seed in 0..100_000u64 {
        *shuffled
            .entry(uniform_permutation(4, seed).into_inner())
            .or_insert(0u64) += 1;
        let order = order_from_positions(&sample_positions(4, seed));
        *positioned.entry(order.into_inner()).or_insert(0u64) += 1;
    }
    let a = uniform_p_value(&shuffled, 24);
    let b = uniform_p_value(&positioned, 24);
    assert!(a > 1e-3 && b > 1e-3, "shuffle p={a}, positions p={b}");
}

#[test]
fn trial_seeds_do_not_repeat() {
    for base in [0, 42, u64::MAX] {
        let seeds: HashSet<u64> = (0..1_000_000)
            .map(|index| derive_trial_seed(SeedSpec { base, index }))
            .collect();
        assert_eq!(seeds.len(), 1_000_000);
    }
}

#[test]
fn random_trees_respect_union_bound() {
    for (n, seed) in [(100usize, 7u64), (1000, 8)] {
        let tree = generate(&FamilySpec::Prufer { n }, seed).unwrap();
        let result = estimate_expected_colors(&tree, 20_000, seed, CheckMode::Never).unwrap();
        for i in 2..=12u64 {
            let bound = union_bound_tail(n as u64, i).unwrap();
            if bound >= 1.0 {
                continue;
            }
            let tail = result.tail_probability(i as u32);
            assert!(
                tail.estimate <= bound + 3.0 * tail.std_error,
                "n={n} i={i}: {} > {bound}",
                tail.estimate
            );
        }
    }
}

#[test]
fn monte_carlo_matches_enumeration() {
    for (name, forest) in small_corpus() {
        if forest.n() > 7 {
            continue;
        }
        let exact = exact_expected_colors(&forest, 7).unwrap();
        let exact = *exact.numer() as f64 / *exact.denom() as f64;
        let result = estimate_expected_colors(&forest, 20_000, 99, CheckMode::Always).unwrap();
        let tolerance = 4.0 * result.std_error;
        assert!(
            (result.mean - exact).abs() <= tolerance.max(1e-12),
            "{name}: {} vs {exact}",
            result.mean
        );
    }
}
