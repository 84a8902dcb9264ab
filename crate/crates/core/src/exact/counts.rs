use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bignum::{big_ratio, BigCount};
use super::series::SeriesPoly;
use crate::error::{Error, Result};

/// Default truncation degree for count tables.
pub const DEFAULT_N_MAX: usize = 2000;

/// Largest table the library will build. `V(n)` costs O(n²) bigint
/// additions, so this keeps a single table under a few seconds.
pub const TABLE_LIMIT: usize = 10_000;

/// Exact values of `p(n)`, `p₂(n)` and `V(n)` for `0 ≤ n ≤ n_max`.
///
/// Columns are filled in stages; an unfilled column is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountTable {
    pub n_max: usize,
    pub p: Vec<BigCount>,
    pub p2: Vec<BigCount>,
    pub v: Vec<BigCount>,
}

fn check_limit(n_max: usize) -> Result<()> {
    if n_max > TABLE_LIMIT {
        return Err(Error::ResourceLimit {
            requested: n_max,
            limit: TABLE_LIMIT,
        });
    }
    Ok(())
}

fn wrap(v: Vec<BigUint>) -> Vec<BigCount> {
    v.into_iter().map(BigCount).collect()
}

impl CountTable {
    /// Partition numbers from the coefficients of `∏ (1 − q^k)^{-1}`.
    pub fn partition_counts(n_max: usize) -> Result<Self> {
        check_limit(n_max)?;
        Ok(Self {
            n_max,
            p: wrap(SeriesPoly::partitions(n_max).into_coeffs()),
            p2: Vec::new(),
            v: Vec::new(),
        })
    }

    /// Fills `p₂(n) = Σ_k p(k) p(n − k)`.
    pub fn pair_counts(mut self) -> Self {
        let p: Vec<&BigUint> = self.p.iter().map(BigCount::value).collect();
        self.p2 = (0..=self.n_max)
            .map(|n| {
                // symmetric convolution: pair up k and n-k
                let mut acc = BigUint::zero();
                for k in 0..n.div_ceil(2) {
                    acc += p[k] * p[n - k];
                }
                acc <<= 1;
                if n % 2 == 0 {
                    acc += p[n / 2] * p[n / 2];
                }
                BigCount(acc)
            })
            .collect();
        self
    }

    /// Fills `V(n) = Σ_{c≥0} [q^n] q^c ∏_{k>c} (1 − q^k)^{-2}`.
    ///
    /// Sweeps `c` downward from `n_max`, keeping `F_c = ∏_{k>c}(1 − q^k)^{-2}`
    /// and obtaining `F_{c−1}` by two divisions by `1 − q^c`.
    pub fn concave_counts(mut self) -> Self {
        let n_max = self.n_max;
        let mut f = SeriesPoly::one(n_max);
        let mut v = SeriesPoly::zero(n_max);
        for c in (0..=n_max).rev() {
            if c < n_max {
                f.divide_by_one_minus_q_pow(c + 1);
                f.divide_by_one_minus_q_pow(c + 1);
            }
            v.add_shifted(&f, c);
        }
        self.v = wrap(v.into_coeffs());
        self
    }

    /// All three columns.
    pub fn full(n_max: usize) -> Result<Self> {
        Ok(Self::partition_counts(n_max)?
            .pair_counts()
            .concave_counts())
    }

    pub fn p(&self, n: usize) -> &BigUint {
        self.p[n].value()
    }

    pub fn p2(&self, n: usize) -> &BigUint {
        self.p2[n].value()
    }

    pub fn v(&self, n: usize) -> &BigUint {
        self.v[n].value()
    }
}

/// `ℙ_n(c = 0) = p₂(n) / V(n)`, exact up to the final rounding.
pub fn central_part_zero_probability(table: &CountTable, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "concave compositions are defined for n ≥ 1".into(),
        ));
    }
    if n >= table.p2.len() || n >= table.v.len() {
        return Err(Error::InvalidInput(format!(
            "table does not cover n = {n} (p2 and v columns must be filled)"
        )));
    }
    Ok(big_ratio(table.p2(n), table.v(n)))
}
