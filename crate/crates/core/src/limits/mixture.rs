//! Weights of the decomposition of a uniform pair of partitions by the
//! size of one side.

use num_bigint::BigUint;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exact::{big_ratio, BigCount, CountTable};

/// `w_k = p(k) p(n−k) / p₂(n)` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureWeights {
    pub n: u64,
    pub numerators: Vec<BigCount>,
    pub denominator: BigCount,
    pub weights: Vec<f64>,
    /// `(3/(4π²))^{1/4} n^{3/4}`
    pub sigma_hat: f64,
}

pub fn mixture_weights(n: u64, table: &CountTable) -> Result<MixtureWeights> {
    let nu = n as usize;
    if table.p.len() <= nu || table.p2.len() <= nu {
        return Err(Error::InvalidInput(format!(
            "count table has no p and p₂ columns up to {n}"
        )));
    }
    let denominator = table.p2(nu).clone();
    let numerators: Vec<BigUint> = (0..=nu).map(|k| table.p(k) * table.p(nu - k)).collect();
    let weights = numerators
        .iter()
        .map(|a| big_ratio(a, &denominator))
        .collect();
    Ok(MixtureWeights {
        n,
        numerators: numerators.into_iter().map(BigCount).collect(),
        denominator: BigCount(denominator),
        weights,
        sigma_hat: (3.0 / (4.0 * PI * PI)).powf(0.25) * (n as f64).powf(0.75),
    })
}

impl MixtureWeights {
    /// Whether the numerators add up to the denominator exactly.
    pub fn sums_to_one_exactly(&self) -> bool {
        let total: BigUint = self.numerators.iter().map(|c| &c.0).sum();
        total == self.denominator.0
    }

    fn offset(&self, k: usize) -> f64 {
        k as f64 - 0.5 * self.n as f64
    }

    /// Largest relative deviation of `w_k` from the Gaussian density
    /// `exp(−z²/(2σ̂²)) / (√(2π) σ̂)`, `z = k − n/2`, over `|z| ≤ z_max`.
    pub fn gaussian_deviation(&self, z_max: f64) -> f64 {
        let s = self.sigma_hat;
        let norm = (2.0 * PI).sqrt() * s;
        self.weights
            .iter()
            .enumerate()
            .filter(|&(k, _)| self.offset(k).abs() <= z_max)
            .map(|(k, &w)| {
                let z = self.offset(k);
                let log_ratio = w.ln() + norm.ln() + z * z / (2.0 * s * s);
                log_ratio.exp_m1().abs()
            })
            .fold(0.0, f64::max)
    }

    /// Exact mass of `{k : |k − n/2| > r}`, rounded once to `f64`.
    pub fn tail_mass(&self, r: f64) -> f64 {
        let tail: BigUint = self
            .numerators
            .iter()
            .enumerate()
            .filter(|&(k, _)| self.offset(k).abs() > r)
            .map(|(_, c)| &c.0)
            .sum();
        big_ratio(&tail, &self.denominator.0)
    }

    /// `k,w` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,w\n");
        for (k, w) in self.weights.iter().enumerate() {
            out.push_str(&format!("{k},{w:e}\n"));
        }
        out
    }
}
