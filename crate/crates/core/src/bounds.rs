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

//! Closed-form evaluators for the expected-color bounds on forests.
//!
//! Real-valued quantities that involve factorials are computed in the log
//! domain; the inequality `(2k)! / 4^k >= n^2` and the path-orientation
//! probabilities are exact.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Pow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("n = {n} is outside the domain of {what}")]
    Domain { n: u64, what: &'static str },
    #[error("argument must be at least {min}, got {got}")]
    TooSmall { min: u64, got: u64 },
}

fn ln(x: f64) -> f64 {
    libm::log(x)
}

/// `(ln n, ln ln n, ln ln ln n)`, requiring `ln ln n > 0`.
fn iterated_logs(n: u64, what: &'static str) -> Result<(f64, f64, f64), BoundsError> {
    let l1 = ln(n as f64);
    if !(l1 > 1.0) {
        return Err(BoundsError::Domain { n, what });
    }
    let l2 = ln(l1);
    Ok((l1, l2, ln(l2)))
}

/// `(ln ln ln n + 1) / (ln ln n - ln ln ln n - 1)`, for `n >= 5`.
///
/// The denominator vanishes at `n = e^e` and is positive for every integer
/// `n >= 5`; it is tiny near `n = 15`, where the value is huge.
pub fn alpha(n: u64) -> Result<f64, BoundsError> {
    if n < 5 {
        return Err(BoundsError::Domain { n, what: "alpha" });
    }
    let (_, l2, l3) = iterated_logs(n, "alpha")?;
    let denominator = l2 - l3 - 1.0;
    if !(denominator > 0.0) {
        return Err(BoundsError::Domain { n, what: "alpha" });
    }
    Ok((l3 + 1.0) / denominator)
}

/// Upper bound on the expected First-Fit ratio over forests on `n` vertices:
/// `(1 + alpha) ln n / (2 ln ln n) + 3/2` for `n >= 5`.
///
/// For `n <= 3` the ratio is exactly 1. For `n = 4` only `< 2` is asserted,
/// so 2 is returned.
pub fn upper_bound_rff(n: u64) -> Result<f64, BoundsError> {
    match n {
        0 => Err(BoundsError::Domain {
            n,
            what: "upper bound",
        }),
        1..=3 => Ok(1.0),
        4 => Ok(2.0),
        _ => {
            let a = alpha(n)?;
            let (l1, l2, _) = iterated_logs(n, "upper bound")?;
            Ok((1.0 + a) * l1 / (2.0 * l2) + 1.5)
        }
    }
}

/// `k = ceil((1 + alpha) ln n / ln ln n)`, the color count beyond which the
/// expected excess is at most one.
pub fn color_count_bound_k(n: u64) -> Result<u64, BoundsError> {
    let a = alpha(n)?;
    let (l1, l2, _) = iterated_logs(n, "k")?;
    Ok(libm::ceil((1.0 + a) * l1 / l2) as u64)
}

/// `ln(m!)`.
pub fn ln_factorial(m: u64) -> f64 {
    if m <= 256 {
        (2..=m).map(|i| ln(i as f64)).sum()
    } else {
        libm::lgamma(m as f64 + 1.0)
    }
}

/// `n^2 4^k / (2k)!`.
pub fn tail_term(n: u64, k: u64) -> f64 {
    let ln_value = 2.0 * ln(n as f64) + k as f64 * ln(4.0) - ln_factorial(2 * k);
    libm::exp(ln_value)
}

/// Exact check of `(2k)! / 4^k >= n^2`.
pub fn factorial_dominates(n: u64, k: u64) -> bool {
    let factorial = (1..=2 * k).fold(BigUint::one(), |acc, i| acc * i);
    let rhs = BigUint::from(n).pow(2u32) * BigUint::from(4u32).pow(k);
    factorial >= rhs
}

/// Probability that a fixed path on `m` vertices is bidirected under a
/// uniformly random order: `2^(m-1) / m!`.
///
/// A path is bidirected exactly when its unique latest vertex splits it into
/// two arms along which arrival increases toward that vertex; each of the
/// other `m - 1` vertices independently lands left or right of it.
pub fn bidirected_prob(m: u64) -> Result<Ratio<BigUint>, BoundsError> {
    if m < 1 {
        return Err(BoundsError::TooSmall { min: 1, got: m });
    }
    let numerator = BigUint::from(2u32).pow(m - 1);
    let denominator = (1..=m).fold(BigUint::one(), |acc, i| acc * i);
    Ok(Ratio::new(numerator, denominator))
}

/// `ln(2^(m-1) / m!)`.
pub fn ln_bidirected_prob(m: u64) -> Result<f64, BoundsError> {
    if m < 1 {
        return Err(BoundsError::TooSmall { min: 1, got: m });
    }
    Ok((m - 1) as f64 * ln(2.0) - ln_factorial(m))
}

/// Union bound on the probability that First-Fit uses at least `i` colors on
/// some forest with `n` vertices: `(n^2 / 2) 2^(2i-3) / (2i-2)!`.
pub fn union_bound_tail(n: u64, i: u64) -> Result<f64, BoundsError> {
    if i < 2 {
        return Err(BoundsError::TooSmall { min: 2, got: i });
    }
    let ln_pairs = 2.0 * ln(n as f64) - ln(2.0);
    Ok(libm::exp(ln_pairs + ln_bidirected_prob(2 * i - 2)?))
}

/// `ln n / (ln ln n + 4 ln ln ln n) * (1 - 1 / (ln ln n - 2 ln ln ln n))`.
///
/// Reported raw: the correction factor is negative below roughly `3.6e14`.
pub fn lower_bound_g(n: u64) -> Result<f64, BoundsError> {
    let (l1, l2, l3) = iterated_logs(n, "g")?;
    let first = l2 + 4.0 * l3;
    let second = l2 - 2.0 * l3;
    if !(first > 0.0 && second > 0.0) {
        return Err(BoundsError::Domain { n, what: "g" });
    }
    Ok(l1 / first * (1.0 - 1.0 / second))
}

/// `1 - 1 / (ln ln n - 2 ln ln ln n)`, the correction factor inside `g`.
pub fn g_correction_factor(n: u64) -> Result<f64, BoundsError> {
    let (_, l2, l3) = iterated_logs(n, "g")?;
    let second = l2 - 2.0 * l3;
    if !(second > 0.0) {
        return Err(BoundsError::Domain { n, what: "g" });
    }
    Ok(1.0 - 1.0 / second)
}

/// Smallest `n` past `e^(e^2)` (where `ln ln n - 2 ln ln ln n` starts
/// increasing) at which the correction factor of `g` is positive.
pub fn g_positive_threshold() -> u64 {
    let positive = |n: u64| g_correction_factor(n).is_ok_and(|f| f > 0.0);
    let (mut lo, mut hi) = (1_619u64, u64::MAX);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if positive(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// One row of the bounds table; `None` where `n` is outside a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub alpha: Option<f64>,
    pub k_star: Option<u64>,
    pub upper_rff: Option<f64>,
    /// `n^2 4^k / (2k)!` at `k = k_star`.
    pub tail: Option<f64>,
    pub lower_g: Option<f64>,
}

pub fn bound_report(n: u64) -> BoundReport {
    let k_star = color_count_bound_k(n).ok();
    BoundReport {
        n,
        alpha: alpha(n).ok(),
        k_star,
        upper_rff: upper_bound_rff(n).ok(),
        tail: k_star.map(|k| tail_term(n, k)),
        lower_g: lower_bound_g(n).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_domain() {
        assert!(alpha(4).is_err());
        assert!(alpha(15).unwrap() > 1e5);
        assert!(alpha(16).unwrap() > 0.0);
    }

    #[test]
    fn small_upper_bounds() {
        assert_eq!(upper_bound_rff(3), Ok(1.0));
        assert_eq!(upper_bound_rff(4), Ok(2.0));
        assert!(upper_bound_rff(0).is_err());
    }

    #[test]
    fn k_at_one_million() {
        assert_eq!(color_count_bound_k(1_000_000), Ok(21));
        assert!(factorial_dominates(1_000_000, 21));
        assert!(tail_term(1_000_000, 21) <= 1.0);
    }

    #[test]
    fn tail_term_direct() {
        assert!((tail_term(10, 2) - 100.0 * 16.0 / 24.0).abs() < 1e-10);
        for k in 1..40 {
            assert!(tail_term(1000, k + 1) < tail_term(1000, k));
        }
    }

    #[test]
    fn bidirected_small() {
        let r = |a: u32, b: u32| Ratio::new(BigUint::from(a), BigUint::from(b));
        assert_eq!(bidirected_prob(1).unwrap(), r(1, 1));
        assert_eq!(bidirected_prob(2).unwrap(), r(1, 1));
        assert_eq!(bidirected_prob(3).unwrap(), r(2, 3));
        assert_eq!(bidirected_prob(4).unwrap(), r(1, 3));
        assert!(bidirected_prob(0).is_err());
        let ln4 = ln_bidirected_prob(4).unwrap();
        assert!((ln4 - ln(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn union_bound_values() {
        assert!((union_bound_tail(2, 2).unwrap() - 2.0).abs() < 1e-12);
        assert!(union_bound_tail(10, 1).is_err());
        for i in 3..30 {
            assert!(union_bound_tail(1000, i + 1).unwrap() < union_bound_tail(1000, i).unwrap());
        }
    }

    #[test]
    fn g_domain_and_sign() {
        assert!(lower_bound_g(2).is_err());
        assert!(lower_bound_g(5).is_err());
        assert!(lower_bound_g(1_000_000_000).unwrap() < 0.0);
        let t = g_positive_threshold();
        assert!(g_correction_factor(t).unwrap() > 0.0);
        assert!(g_correction_factor(t - 1).unwrap() <= 0.0);
    }
}
