use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::params::BoltzmannParams;
use crate::partition::Partition;

/// Sparse part multiplicities of a pair `(λ⁻, λ⁺)`: `k → (X_k⁺, X_k⁻)`.
/// Entries with both counts zero are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrequencyVector {
    entries: BTreeMap<u64, (u64, u64)>,
}

impl FrequencyVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds to the multiplicities of part `k`.
    pub fn add(&mut self, k: u64, plus: u64, minus: u64) {
        assert!(k > 0, "parts are positive");
        if plus == 0 && minus == 0 {
            return;
        }
        let e = self.entries.entry(k).or_default();
        e.0 += plus;
        e.1 += minus;
    }

    pub fn from_partitions(minus: &Partition, plus: &Partition) -> Self {
        let mut f = Self::new();
        for (k, c) in plus.frequencies() {
            f.add(k, c, 0);
        }
        for (k, c) in minus.frequencies() {
            f.add(k, 0, c);
        }
        f
    }

    pub fn entries(&self) -> &BTreeMap<u64, (u64, u64)> {
        &self.entries
    }

    pub fn get(&self, k: u64) -> (u64, u64) {
        self.entries.get(&k).copied().unwrap_or((0, 0))
    }

    /// `N = Σ k (X_k⁺ + X_k⁻)`
    pub fn size(&self) -> u64 {
        self.entries.iter().map(|(k, (p, m))| k * (p + m)).sum()
    }

    /// ℓ(λ⁺)
    pub fn len_plus(&self) -> u64 {
        self.entries.values().map(|e| e.0).sum()
    }

    /// ℓ(λ⁻)
    pub fn len_minus(&self) -> u64 {
        self.entries.values().map(|e| e.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Expands multiplicities into `(λ⁻, λ⁺)`.
pub fn frequencies_to_partitions(f: &FrequencyVector) -> (Partition, Partition) {
    let plus = f.entries.iter().map(|(&k, &(p, _))| (k, p));
    let minus = f.entries.iter().map(|(&k, &(_, m))| (k, m));
    (
        Partition::from_frequencies(minus).expect("positive keys"),
        Partition::from_frequencies(plus).expect("positive keys"),
    )
}

/// Precomputed tables for repeated draws from one parameter set.
#[derive(Debug, Clone)]
pub struct BoltzmannSampler {
    params: BoltzmannParams,
    // q^k and k·ln q for k = 1..=k_max
    q_pow: Vec<f64>,
    log_q_pow: Vec<f64>,
}

impl BoltzmannSampler {
    pub fn new(params: BoltzmannParams) -> Self {
        let ln_q = params.q.ln();
        let log_q_pow: Vec<f64> = (1..=params.k_max).map(|k| k as f64 * ln_q).collect();
        let q_pow = log_q_pow.iter().map(|l| l.exp()).collect();
        Self {
            params,
            q_pow,
            log_q_pow,
        }
    }

    pub fn params(&self) -> &BoltzmannParams {
        &self.params
    }

    /// `P(X = j) = q^{kj}(1 − q^k)` by inversion: `j = ⌊ln U / (k ln q)⌋`
    /// with `U` uniform on (0, 1]. `U > q^k` is exactly the event `j = 0`.
    #[inline]
    fn geometric<R: Rng + ?Sized>(&self, idx: usize, rng: &mut R) -> u64 {
        let u = 1.0 - rng.random::<f64>();
        if u > self.q_pow[idx] {
            0
        } else {
            (u.ln() / self.log_q_pow[idx]).floor() as u64
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FrequencyVector {
        let mut f = FrequencyVector::new();
        for idx in 0..self.q_pow.len() {
            let plus = self.geometric(idx, rng);
            let minus = self.geometric(idx, rng);
            if plus != 0 || minus != 0 {
                f.entries.insert(idx as u64 + 1, (plus, minus));
            }
        }
        f
    }

    /// The total size `N` of one pair draw, without building the pair.
    /// Consumes the same random numbers as [`Self::sample`].
    pub fn sample_size<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let mut size = 0;
        for idx in 0..self.q_pow.len() {
            let j = self.geometric(idx, rng) + self.geometric(idx, rng);
            size += (idx as u64 + 1) * j;
        }
        size
    }

    /// Draws a pair but gives up as soon as the running size exceeds `cap`.
    /// Returns `None` in that case; the draws consumed are the same as a full
    /// sample up to the abort point.
    pub(crate) fn sample_capped<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        cap: u64,
    ) -> Option<FrequencyVector> {
        let mut f = FrequencyVector::new();
        let mut size = 0u64;
        for idx in 0..self.q_pow.len() {
            let plus = self.geometric(idx, rng);
            let minus = self.geometric(idx, rng);
            if plus != 0 || minus != 0 {
                let k = idx as u64 + 1;
                size = size.saturating_add(k.saturating_mul(plus + minus));
                if size > cap {
                    return None;
                }
                f.entries.insert(k, (plus, minus));
            }
        }
        Some(f)
    }

    /// One side only: a single partition under the one-sided measure.
    pub fn sample_one_side<R: Rng + ?Sized>(&self, rng: &mut R) -> Partition {
        let freqs: Vec<(u64, u64)> = (0..self.q_pow.len())
            .map(|idx| (idx as u64 + 1, self.geometric(idx, rng)))
            .collect();
        Partition::from_frequencies(freqs).expect("positive keys")
    }
}

/// One draw from the truncated Boltzmann measure on pairs.
pub fn sample_boltzmann<R: Rng + ?Sized>(params: &BoltzmannParams, rng: &mut R) -> FrequencyVector {
    BoltzmannSampler::new(*params).sample(rng)
}

/// One partition from the one-sided Boltzmann measure with `params.q`.
pub fn sample_partition<R: Rng + ?Sized>(params: &BoltzmannParams, rng: &mut R) -> Partition {
    BoltzmannSampler::new(*params).sample_one_side(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::RngSeed;

    #[test]
    fn expansion_example() {
        let mut f = FrequencyVector::new();
        f.add(2, 1, 0);
        f.add(1, 2, 3);
        let (minus, plus) = frequencies_to_partitions(&f);
        assert_eq!(plus.parts(), &[2, 1, 1]);
        assert_eq!(minus.parts(), &[1, 1, 1]);
        assert_eq!(f.size(), 7);
        assert_eq!((f.len_plus(), f.len_minus()), (3, 3));
    }

    #[test]
    fn empty_map() {
        let (m, p) = frequencies_to_partitions(&FrequencyVector::new());
        assert!(m.is_empty() && p.is_empty());
    }

    #[test]
    fn degenerate_q_gives_empty_pairs() {
        let params = BoltzmannParams::with_q(1, 1e-9, 1e-12).unwrap();
        let mut rng = RngSeed::new(1, 0).rng();
        let empties = (0..1000)
            .filter(|_| sample_boltzmann(&params, &mut rng).is_empty())
            .count();
        assert!(empties >= 999);
    }

    #[test]
    fn same_seed_same_draws() {
        let params = BoltzmannParams::new(500, 1e-12).unwrap();
        let a: Vec<_> = {
            let mut rng = RngSeed::new(9, 4).rng();
            (0..5)
                .map(|_| sample_boltzmann(&params, &mut rng))
                .collect()
        };
        let b: Vec<_> = {
            let mut rng = RngSeed::new(9, 4).rng();
            (0..5)
                .map(|_| sample_boltzmann(&params, &mut rng))
                .collect()
        };
        assert_eq!(a, b);
        let c = sample_boltzmann(&params, &mut RngSeed::new(9, 5).rng());
        assert_ne!(a[0], c);
    }

    #[test]
    fn json_is_a_frequency_map() {
        let mut f = FrequencyVector::new();
        f.add(3, 1, 2);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"3":[1,2]}"#);
    }
}
