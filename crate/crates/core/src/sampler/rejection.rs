use rand::Rng;
use serde::{Deserialize, Serialize};

use super::boltzmann::{frequencies_to_partitions, BoltzmannSampler, FrequencyVector};
use super::params::BoltzmannParams;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Limits on rejection sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RejectionBudget {
    /// Largest `n` accepted at all.
    pub max_n: u64,
    /// Trials per accepted sample; `None` means `⌈100 (48n³)^{1/4}⌉`,
    /// about a hundred times the expected wait.
    pub max_trials: Option<u64>,
}

impl Default for RejectionBudget {
    fn default() -> Self {
        Self {
            max_n: 10_000,
            max_trials: None,
        }
    }
}

impl RejectionBudget {
    pub fn trials_for(&self, n: u64) -> u64 {
        self.max_trials
            .unwrap_or_else(|| (100.0 * (48.0 * (n as f64).powi(3)).powf(0.25)).ceil() as u64)
    }
}

/// A uniformly random pair with `|λ⁻| + |λ⁺| = n`, and the number of
/// Boltzmann draws it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformPair {
    pub minus: Partition,
    pub plus: Partition,
    pub trials: u64,
}

/// Rejection sampler for the uniform measure on pairs of total size `n`:
/// draw from `Q_{q_n}` until `N = n`.
#[derive(Debug, Clone)]
pub struct UniformSampler {
    inner: BoltzmannSampler,
    max_trials: u64,
}

impl UniformSampler {
    /// Fails with `BudgetExceeded { trials: 0 }` when `n` is beyond
    /// `budget.max_n`.
    pub fn new(n: u64, tail_eps: f64, budget: &RejectionBudget) -> Result<Self> {
        if n > budget.max_n {
            return Err(Error::BudgetExceeded { n, trials: 0 });
        }
        let params = BoltzmannParams::new(n, tail_eps)?;
        Ok(Self {
            inner: BoltzmannSampler::new(params),
            max_trials: budget.trials_for(n),
        })
    }

    pub fn n(&self) -> u64 {
        self.inner.params().n
    }

    pub fn sample_frequencies<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(FrequencyVector, u64)> {
        let n = self.n();
        for trial in 1..=self.max_trials {
            // early exit once the size passes n; the accepted draws are
            // exactly those with N = n
            if let Some(f) = self.inner.sample_capped(rng, n) {
                if f.size() == n {
                    return Ok((f, trial));
                }
            }
        }
        Err(Error::BudgetExceeded {
            n,
            trials: self.max_trials,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<UniformPair> {
        let (f, trials) = self.sample_frequencies(rng)?;
        let (minus, plus) = frequencies_to_partitions(&f);
        Ok(UniformPair {
            minus,
            plus,
            trials,
        })
    }
}

/// One exact-uniform draw with default truncation.
pub fn sample_uniform_pair<R: Rng + ?Sized>(
    n: u64,
    rng: &mut R,
    budget: &RejectionBudget,
) -> Result<UniformPair> {
    UniformSampler::new(n, super::DEFAULT_TAIL_EPS, budget)?.sample(rng)
}

/// JSON-lines record of one sample. `trials` is 1 for Boltzmann draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub n: u64,
    pub trials: u64,
    pub minus: Partition,
    pub plus: Partition,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::RngSeed;

    #[test]
    fn sizes_always_match() {
        let sampler = UniformSampler::new(40, 1e-12, &RejectionBudget::default()).unwrap();
        let mut rng = RngSeed::new(3, 0).rng();
        for _ in 0..200 {
            let s = sampler.sample(&mut rng).unwrap();
            assert_eq!(s.minus.size() + s.plus.size(), 40);
            assert!(s.trials >= 1);
        }
    }

    #[test]
    fn n_equals_one_is_a_fair_coin() {
        let sampler = UniformSampler::new(1, 1e-12, &RejectionBudget::default()).unwrap();
        let mut rng = RngSeed::new(11, 0).rng();
        let m = 20_000;
        let mut plus_side = 0;
        for _ in 0..m {
            let s = sampler.sample(&mut rng).unwrap();
            assert_eq!(s.minus.size() + s.plus.size(), 1);
            if s.plus.size() == 1 {
                plus_side += 1;
            }
        }
        let p = plus_side as f64 / m as f64;
        let se = (0.25 / m as f64).sqrt();
        assert!((p - 0.5).abs() < 4.0 * se, "{p}");
    }

    #[test]
    fn budget_errors() {
        let budget = RejectionBudget {
            max_n: 100,
            max_trials: Some(1),
        };
        assert_eq!(
            UniformSampler::new(101, 1e-12, &budget).unwrap_err(),
            Error::BudgetExceeded { n: 101, trials: 0 }
        );
        // one trial at n = 100 almost never lands exactly
        let sampler = UniformSampler::new(100, 1e-12, &budget).unwrap();
        let mut rng = RngSeed::new(0, 0).rng();
        let failures = (0..50)
            .filter(|_| sampler.sample(&mut rng).is_err())
            .count();
        assert!(failures > 40);
    }

    #[test]
    fn default_budget_scale() {
        assert_eq!(RejectionBudget::default().trials_for(1), 264);
    }
}
