use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use concave_core::exact::{
    central_part_zero_probability, enumerate_concave, partition_pairs, partitions_of, CountTable,
};
use concave_core::sampler::{tuned_q, BoltzmannParams};

/// Euler's pentagonal recurrence, signed arithmetic.
fn pentagonal(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::one();
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * &p[n - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                acc += sign * &p[n - g2];
            }
        }
        p[n] = acc;
    }
    p
}

#[test]
fn partition_numbers_match_pentagonal_recurrence() {
    let t = CountTable::partition_counts(2000).unwrap();
    for (n, want) in pentagonal(2000).iter().enumerate() {
        assert_eq!(&BigInt::from(t.p(n).clone()), want, "p({n})");
    }
}

#[test]
fn concave_counts_match_enumeration() {
    let t = CountTable::full(12).unwrap();
    for n in 1..=12u64 {
        let listed = enumerate_concave(n).unwrap();
        assert_eq!(BigUint::from(listed.len()), *t.v(n as usize), "V({n})");
        assert!(listed.iter().all(|c| c.total() == n));
    }
    let small: Vec<String> = (1..=5).map(|n| t.v(n).to_string()).collect();
    assert_eq!(small, ["3", "6", "13", "23", "44"]);
}

#[test]
fn pair_counts_are_a_convolution() {
    let t = CountTable::full(500).unwrap();
    for n in 0..=500 {
        let conv: BigUint = (0..=n).map(|k| t.p(k) * t.p(n - k)).sum();
        assert_eq!(&conv, t.p2(n), "p2({n})");
        assert!(t.v(n) >= t.p2(n));
    }
}

#[test]
fn listed_pairs_and_partitions_agree_with_table() {
    let t = CountTable::full(15).unwrap();
    for n in 0..=15u64 {
        assert_eq!(BigUint::from(partitions_of(n).len()), *t.p(n as usize));
        assert_eq!(BigUint::from(partition_pairs(n).len()), *t.p2(n as usize));
    }
}

#[test]
fn central_part_is_usually_zero() {
    let t = CountTable::full(1500).unwrap();
    let mut prev = 0.0;
    for n in [100, 500, 1500] {
        let pr = central_part_zero_probability(&t, n).unwrap();
        assert!(pr > prev && pr < 1.0);
        prev = pr;
    }
    assert!(prev > 0.9);
}

/// `Σ_n p₂(n) qⁿ · ∏(1−q^k)² = 1`, summed from n = 0.
#[test]
fn measure_identity() {
    let q = tuned_q(50.0);
    let t = CountTable::full(3000).unwrap();
    let ln_norm = 2.0 * concave_core::exact::log_qpochhammer(q, q, 1e-16).unwrap();
    let total: f64 = (0..=3000)
        .map(|n| {
            let ln_p2 = concave_core::exact::big_ln(t.p2(n));
            (ln_p2 + n as f64 * q.ln() + ln_norm).exp()
        })
        .sum();
    assert!((total - 1.0).abs() < 1e-10, "{total}");
    // the truncated sampler loses less than its tail budget
    let params = BoltzmannParams::new(50, 1e-12).unwrap();
    assert!(params.tail_mass(params.k_max) < 1e-12);
}
