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

//! Summary statistics for Monte Carlo runs.

use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Sample mean and standard error of the mean from a histogram of integer
/// outcomes.
pub fn mean_and_std_error<I>(histogram: I) -> (f64, f64)
where
    I: IntoIterator<Item = (u32, u64)> + Clone,
{
    let trials: u64 = histogram.clone().into_iter().map(|(_, c)| c).sum();
    if trials == 0 {
        return (0.0, 0.0);
    }
    let t = trials as f64;
    let mean = histogram
        .clone()
        .into_iter()
        .map(|(x, c)| x as f64 * c as f64)
        .sum::<f64>()
        / t;
    if trials < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = histogram
        .into_iter()
        .map(|(x, c)| {
            let d = x as f64 - mean;
            d * d * c as f64
        })
        .sum();
    let variance = ss / (t - 1.0);
    (mean, (variance / t).sqrt())
}

/// An estimated event probability with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    /// Binomial standard error `sqrt(p (1 - p) / n)`.
    pub std_error: f64,
    pub wilson95: (f64, f64),
}

impl Proportion {
    pub fn new(successes: u64, trials: u64) -> Self {
        assert!(successes <= trials);
        if trials == 0 {
            return Proportion {
                successes,
                trials,
                estimate: 0.0,
                std_error: 0.0,
                wilson95: (0.0, 1.0),
            };
        }
        let n = trials as f64;
        let p = successes as f64 / n;
        Proportion {
            successes,
            trials,
            estimate: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            wilson95: wilson_interval(successes, trials, Z95),
        }
    }
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}
