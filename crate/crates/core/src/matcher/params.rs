use serde::{Deserialize, Serialize};

use super::MatcherError;

/// Absorbs rounding in products such as `(1 - 2/9) * 9` before taking a
/// ceiling, so thresholds that are integers in exact arithmetic stay put.
const CEIL_SLACK: f64 = 1e-9;

/// `⌈x⌉` clamped at zero, tolerant to floating error just above an integer.
pub fn ceil_count(x: f64) -> usize {
    let c = (x - CEIL_SLACK).ceil();
    if c <= 0.0 {
        0
    } else {
        c as usize
    }
}

/// Constants of the connected-matching argument derived from `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub gamma: f64,
    /// `10 * gamma^(1/6)`.
    pub delta: f64,
    /// `290 * gamma^(1/6)`: fraction of vertices a cover may miss asymptotically.
    pub coverage_bound: f64,
    /// Slack above `5/9` in the minimum-degree perfect matching condition.
    pub eta_pm: f64,
}

impl Params {
    pub fn new(gamma: f64) -> Result<Self, MatcherError> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(MatcherError::InvalidGamma(gamma));
        }
        let root = gamma.powf(1.0 / 6.0);
        Ok(Self {
            gamma,
            delta: 10.0 * root,
            coverage_bound: 290.0 * root,
            eta_pm: 5.0 / 36.0,
        })
    }

    pub fn thresholds(&self, t: usize) -> Thresholds {
        let dt = self.delta * t as f64;
        Thresholds {
            t,
            six_delta_t: 6.0 * dt,
            two_delta_t: 2.0 * dt,
            eight_delta_t: 8.0 * dt,
            twelve_delta_t: 12.0 * dt,
            three_delta_t_plus_2: 3.0 * dt + 2.0,
            six_delta_t_dissolve: 6.0 * dt,
            link_floor: (1.0 - self.delta) * t as f64,
        }
    }
}

/// Set-size thresholds evaluated at the current vertex count `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub t: usize,
    /// Size of `R` (or `B`) needed before a dominant component is selected.
    pub six_delta_t: f64,
    /// Vertices of `R` allowed outside the dominant red component.
    pub two_delta_t: f64,
    /// Residual size assumed when entering the dissolution branch.
    pub eight_delta_t: f64,
    /// Residual size below which the pipeline stops early.
    pub twelve_delta_t: f64,
    /// Uncovered vertices after the extra blue perfect matching.
    pub three_delta_t_plus_2: f64,
    /// Uncovered vertices left by dissolving the blue matching.
    pub six_delta_t_dissolve: f64,
    /// `(1 - delta) t`: minimum link size of an active pair after cleanup.
    pub link_floor: f64,
}

impl Thresholds {
    /// True when the largest threshold already reaches `t`, so every
    /// structural statement that depends on them is empty.
    pub fn is_vacuous(&self) -> bool {
        self.twelve_delta_t >= self.t as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_matches_formula() {
        for gamma in [1e-3, 1e-6, 1e-12, 0.5] {
            let p = Params::new(gamma).unwrap();
            assert!((p.delta - 10.0 * gamma.powf(1.0 / 6.0)).abs() < 1e-12);
            assert!((p.coverage_bound - 29.0 * p.delta).abs() < 1e-12);
            assert_eq!(p.eta_pm, 5.0 / 36.0);
        }
        assert!((Params::new(1e-6).unwrap().delta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_range_is_open_interval() {
        for bad in [0.0, 1.0, -1.0, f64::NAN] {
            assert!(Params::new(bad).is_err());
        }
    }

    #[test]
    fn thresholds_are_nonnegative_and_scale_with_t() {
        let p = Params::new(1e-9).unwrap();
        let th = p.thresholds(40);
        for v in [
            th.six_delta_t,
            th.two_delta_t,
            th.eight_delta_t,
            th.twelve_delta_t,
            th.three_delta_t_plus_2,
            th.six_delta_t_dissolve,
        ] {
            assert!(v >= 0.0);
        }
        assert!((th.twelve_delta_t - 12.0 * p.delta * 40.0).abs() < 1e-9);
        assert!(Params::new(1e-6).unwrap().thresholds(12).is_vacuous());
    }

    #[test]
    fn ceil_count_absorbs_rounding() {
        assert_eq!(ceil_count((1.0 - 2.0 / 9.0) * 9.0), 7);
        assert_eq!(ceil_count(6.2), 7);
        assert_eq!(ceil_count(-3.0), 0);
        assert_eq!(ceil_count(0.0), 0);
    }
}
