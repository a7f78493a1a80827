//! Binomial proportion estimates.

use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// A hit count out of a number of trials, with its 95% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Proportion {
    pub fn new(hits: u64, trials: u64) -> Self {
        assert!(
            trials > 0 && hits <= trials,
            "need 0 <= hits <= trials, trials > 0"
        );
        let (lower, upper) = wilson_interval(hits, trials, Z95);
        Proportion {
            hits,
            trials,
            estimate: hits as f64 / trials as f64,
            lower,
            upper,
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }
}

/// Wilson score interval for `hits / trials` at normal quantile `z`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lower = if hits == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let upper = if hits == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // 10 / 100 at z = 1.96: the textbook interval is [0.0552, 0.1744].
        let (lo, hi) = wilson_interval(10, 100, 1.96);
        assert!((lo - 0.05523).abs() < 1e-4, "{lo}");
        assert!((hi - 0.17437).abs() < 1e-4, "{hi}");
    }

    #[test]
    fn degenerate_counts_stay_in_unit_interval() {
        let zero = Proportion::new(0, 50);
        assert_eq!(zero.lower, 0.0);
        assert!(zero.upper > 0.0 && zero.upper < 0.1);
        let all = Proportion::new(50, 50);
        assert_eq!(all.upper, 1.0);
        assert!(all.lower > 0.9);
    }
}
