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

//! A fixed set of small forests (at most 8 vertices) with known structure,
//! used to cross-check Monte Carlo estimates against exact enumeration.

use ffrand_core::forest::{generate, FamilySpec, Forest};

pub fn small_corpus() -> Vec<(&'static str, Forest)> {
    use FamilySpec::*;
    let specs: Vec<(&'static str, FamilySpec, u64)> = vec![
        ("empty", Path { n: 0 }, 0),
        ("single", Path { n: 1 }, 0),
        (
            "edgeless-5",
            Explicit {
                n: 5,
                edges: vec![],
            },
            0,
        ),
        ("path-2", Path { n: 2 }, 0),
        ("path-3", Path { n: 3 }, 0),
        ("path-4", Path { n: 4 }, 0),
        ("path-5", Path { n: 5 }, 0),
        ("path-8", Path { n: 8 }, 0),
        ("star-4", Star { n: 4 }, 0),
        ("star-8", Star { n: 8 }, 0),
        (
            "path-2+path-3",
            Union(vec![Path { n: 2 }, Path { n: 3 }]),
            0,
        ),
        (
            "spider-7",
            Explicit {
                n: 7,
                edges: vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)],
            },
            0,
        ),
        (
            "caterpillar-8",
            Explicit {
                n: 8,
                edges: vec![(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (2, 6), (3, 7)],
            },
            0,
        ),
        ("prufer-6a", Prufer { n: 6 }, 1),
        ("prufer-6b", Prufer { n: 6 }, 2),
        ("prufer-8", Prufer { n: 8 }, 3),
        (
            "star-3+prufer-5",
            Union(vec![Star { n: 3 }, Prufer { n: 5 }]),
            4,
        ),
    ];
    specs
        .into_iter()
        .map(|(name, spec, seed)| (name, generate(&spec, seed).expect("corpus spec is valid")))
        .collect()
}
