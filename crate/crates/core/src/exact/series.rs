use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A power series with non-negative integer coefficients, truncated
/// after `q^n_max`. All arithmetic is exact modulo `q^(n_max+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<BigUint>,
}

impl SeriesPoly {
    pub fn zero(n_max: usize) -> Self {
        Self {
            coeffs: vec![BigUint::zero(); n_max + 1],
        }
    }

    pub fn one(n_max: usize) -> Self {
        let mut s = Self::zero(n_max);
        s.coeffs[0] = BigUint::one();
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>, n_max: usize) -> Self {
        coeffs.resize(n_max + 1, BigUint::zero());
        Self { coeffs }
    }

    /// `∏_{k≥1} (1 − q^k)^{-1}`, the partition generating function.
    pub fn partitions(n_max: usize) -> Self {
        let mut s = Self::one(n_max);
        for k in 1..=n_max {
            s.divide_by_one_minus_q_pow(k);
        }
        s
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigUint {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigUint> {
        self.coeffs
    }

    /// Multiplies in place by `(1 − q^k)^{-1} = Σ_j q^{jk}`: a running sum
    /// with stride `k`.
    pub fn divide_by_one_minus_q_pow(&mut self, k: usize) {
        assert!(k > 0, "(1 - q^0) is not invertible");
        for i in k..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] += &lo[i - k];
        }
    }

    /// `self += q^shift · other`, truncated.
    pub fn add_shifted(&mut self, other: &SeriesPoly, shift: usize) {
        let len = self.coeffs.len();
        for (i, c) in other.coeffs.iter().enumerate() {
            let j = i + shift;
            if j >= len {
                break;
            }
            if !c.is_zero() {
                self.coeffs[j] += c;
            }
        }
    }

    /// Truncated Cauchy product. The result keeps the smaller truncation.
    pub fn mul(&self, other: &SeriesPoly) -> SeriesPoly {
        let n_max = self.n_max().min(other.n_max());
        let mut out = Self::zero(n_max);
        for (i, a) in self.coeffs.iter().enumerate().take(n_max + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n_max + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(s: &SeriesPoly) -> Vec<u64> {
        s.coeffs()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn geometric_division() {
        let mut s = SeriesPoly::one(6);
        s.divide_by_one_minus_q_pow(2);
        assert_eq!(small(&s), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn partition_series_head() {
        assert_eq!(
            small(&SeriesPoly::partitions(10)),
            vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        );
    }

    #[test]
    fn product_truncates() {
        let a = SeriesPoly::from_coeffs(vec![1u32.into(), 1u32.into()], 3);
        let sq = a.mul(&a).mul(&a).mul(&a);
        assert_eq!(small(&sq), vec![1, 4, 6, 4]);
    }

    #[test]
    fn shifted_add() {
        let mut a = SeriesPoly::one(3);
        a.add_shifted(&SeriesPoly::partitions(3), 2);
        assert_eq!(small(&a), vec![1, 0, 1, 1]);
    }
}
