use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TAIL_EPS: f64 = 1e-12;

/// `q_n = e^{−π/√(3n)}`, which puts the mean of `N` near `n`. Accepts a real
/// `n` so the map can be inverted exactly.
pub fn tuned_q(n: f64) -> f64 {
    (-PI / (3.0 * n).sqrt()).exp()
}

/// The single-partition analogue `e^{−π/√(6n)}`.
pub fn partition_tuned_q(n: f64) -> f64 {
    (-PI / (6.0 * n).sqrt()).exp()
}

/// Parameters of the truncated Boltzmann measure.
///
/// Multiplicities are sampled for `k ≤ k_max` only. `k_max` is the least
/// `K` with `Σ_{k>K} 2q^k/(1 − q^k) < tail_eps`; since that sum bounds the
/// expected number of omitted parts, the truncated measure is within
/// `tail_eps` of `Q_q` in total variation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoltzmannParams {
    pub n: u64,
    pub q: f64,
    pub tail_eps: f64,
    pub k_max: u64,
}

impl BoltzmannParams {
    pub fn new(n: u64, tail_eps: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        Self::with_q(n, tuned_q(n as f64), tail_eps)
    }

    /// Explicit `q`, bypassing the tuning. `n` is kept as the target size.
    pub fn with_q(n: u64, q: f64, tail_eps: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("q = {q} must lie in (0, 1)")));
        }
        if !(tail_eps > 0.0 && tail_eps < 1.0) {
            return Err(Error::Domain(format!(
                "tail_eps = {tail_eps} must lie in (0, 1)"
            )));
        }
        Ok(Self {
            n,
            q,
            tail_eps,
            k_max: least_k_max(q, tail_eps),
        })
    }

    /// `Σ_{k>K} 2q^k/(1 − q^k)`, the quantity `k_max` is chosen against.
    pub fn tail_mass(&self, k: u64) -> f64 {
        tail_sum(self.q, k)
    }
}

pub(crate) fn tail_term(q: f64, k: u64) -> f64 {
    let qk = q.powf(k as f64);
    2.0 * qk / (1.0 - qk)
}

/// Upper bound `2q^{K+1} / ((1 − q^{K+1})(1 − q))` on the tail from `K`.
fn tail_bound(q: f64, k: u64) -> f64 {
    let qk1 = q.powf(k as f64 + 1.0);
    2.0 * qk1 / ((1.0 - qk1) * (1.0 - q))
}

/// Index beyond which the tail bound is negligible next to `eps`.
fn far_index(q: f64, eps: f64) -> u64 {
    let target = 1e-8 * eps * (1.0 - q) / 4.0;
    let k = (target.ln() / q.ln()).ceil().max(1.0) as u64;
    debug_assert!(tail_bound(q, k) < 1e-7 * eps);
    k
}

fn tail_sum(q: f64, k: u64) -> f64 {
    let hi = far_index(q, tail_term(q, k + 1).max(f64::MIN_POSITIVE)).max(k + 1);
    let mut acc = tail_bound(q, hi);
    for j in (k + 1..=hi).rev() {
        acc += tail_term(q, j);
    }
    acc
}

fn least_k_max(q: f64, eps: f64) -> u64 {
    let hi = far_index(q, eps);
    // T(hi) is replaced by its upper bound, so the answer is never too small
    let mut tail = tail_bound(q, hi);
    let mut k = hi;
    while k > 0 {
        let with_k = tail + tail_term(q, k);
        if with_k >= eps {
            return k;
        }
        tail = with_k;
        k -= 1;
    }
    0
}

/// Boltzmann parameters for a single partition of size about `n`.
pub fn partition_params(n: u64, tail_eps: f64) -> Result<BoltzmannParams> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    BoltzmannParams::with_q(n, partition_tuned_q(n as f64), tail_eps)
}

/// Mean and variance of `N` under the truncated measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeMoments {
    /// `Σ_{k≤k_max} 2k q^k / (1 − q^k)`
    pub mean: f64,
    /// `Σ_{k≤k_max} 2k² q^k / (1 − q^k)²`
    pub variance: f64,
    /// Upper bound on the mean contribution of `k > k_max`.
    pub mean_tail: f64,
    /// Upper bound on the variance contribution of `k > k_max`.
    pub variance_tail: f64,
}

/// Moments of `N` summed to `k_max`, with analytic bounds on the omitted
/// terms of the untruncated sums.
pub fn size_moments(params: &BoltzmannParams) -> SizeMoments {
    let q = params.q;
    let mut mean = 0.0;
    let mut variance = 0.0;
    for k in 1..=params.k_max {
        let kf = k as f64;
        let qk = q.powf(kf);
        let g = qk / (1.0 - qk);
        mean += 2.0 * kf * g;
        variance += 2.0 * kf * kf * g / (1.0 - qk);
    }
    // Beyond K the terms k^a q^k / (1 − q^k)^b shrink by at least
    // r = ((K+2)/(K+1))^a q / (1 − q^{K+1})^b each step.
    let k1 = params.k_max as f64 + 1.0;
    let qk1 = q.powf(k1);
    let geometric = |a: i32, b: i32| {
        let first = 2.0 * k1.powi(a) * qk1 / (1.0 - qk1).powi(b);
        let r = ((k1 + 1.0) / k1).powi(a) * q / (1.0 - qk1).powi(b);
        if r < 1.0 {
            first / (1.0 - r)
        } else {
            f64::INFINITY
        }
    };
    SizeMoments {
        mean,
        variance,
        mean_tail: geometric(1, 1),
        variance_tail: geometric(2, 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_for_n_equal_one() {
        let p = BoltzmannParams::new(1, DEFAULT_TAIL_EPS).unwrap();
        assert!((p.q - 0.163_033_534_821_580_5).abs() < 1e-15);
    }

    #[test]
    fn inversion_gives_one_half() {
        let ln2 = std::f64::consts::LN_2;
        let n = PI * PI / (3.0 * ln2 * ln2);
        assert!((tuned_q(n) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn k_max_is_minimal() {
        for &(n, eps) in &[(1u64, 1e-12), (50, 1e-6), (500, 1e-12), (1_000_000, 1e-12)] {
            let p = BoltzmannParams::new(n, eps).unwrap();
            assert!(p.tail_mass(p.k_max) < eps, "n={n}");
            assert!(p.tail_mass(p.k_max - 1) >= eps, "n={n}");
        }
    }

    #[test]
    fn k_max_at_one_million() {
        let p = BoltzmannParams::new(1_000_000, 1e-12).unwrap();
        // tail ≈ 2q^K/(1−q) = ε, i.e. K ≈ (√(3n)/π) ln(2/((1−q)ε))
        let approx = (3e6f64).sqrt() / PI * (2.0 / ((1.0 - p.q) * 1e-12)).ln();
        assert!(
            (p.k_max as f64 - approx).abs() < 0.01 * approx,
            "{} vs {approx}",
            p.k_max
        );
        assert!((10_000..40_000).contains(&p.k_max));
    }

    #[test]
    fn moments_at_q_one_half() {
        let p = BoltzmannParams::with_q(7, 0.5, 1e-15).unwrap();
        let m = size_moments(&p);
        // 200-term partial sum reference
        assert!((m.mean - 5.488_067_777_518_974).abs() < 1e-12);
        assert!(m.variance >= m.mean);
        assert!(m.mean_tail < 1e-12 && m.variance_tail < 1e-11);
    }

    #[test]
    fn corollary_scales_at_ten_thousand() {
        let n = 10_000u64;
        let m = size_moments(&BoltzmannParams::new(n, DEFAULT_TAIL_EPS).unwrap());
        let nf = n as f64;
        assert!((nf - m.mean).abs() / nf.powf(0.75) < 2.0);
        let ratio = m.variance * PI / (12f64.sqrt() * nf.powf(1.5));
        assert!((0.8..=1.2).contains(&ratio), "{ratio}");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BoltzmannParams::new(0, 1e-12).is_err());
        assert!(BoltzmannParams::new(5, 0.0).is_err());
        assert!(BoltzmannParams::with_q(5, 1.0, 1e-12).is_err());
    }
}
