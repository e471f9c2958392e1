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

//! First-Fit coloring of forests in the random arrival model.
//!
//! This crate is `no_std` (it needs `alloc`) and contains only the pure
//! algorithmic pieces:
//!
//! * [`forest`]: validated forests, generators and order-induced orientations.
//! * [`ordering`]: presentation orders, both shuffled and position-induced,
//!   plus per-trial seed derivation.
//! * [`first_fit`]: the First-Fit engine and the directed / bidirected path
//!   witnesses that certify how many colors a run used.
//! * [`lower_bound`]: the recursive tree family on which First-Fit is forced
//!   to use many colors with high probability.
//! * [`bounds`]: closed-form evaluators for the expected-color bounds.
//!
//! File formats, experiments and the command line live in `ffrand-lab`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod first_fit;
pub mod forest;
pub mod lower_bound;
pub mod ordering;

pub use first_fit::{Coloring, Precedence};
pub use forest::{Forest, Vertex};
pub use ordering::{Permutation, PositionAssignment, SeedSpec};
