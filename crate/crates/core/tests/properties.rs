use proptest::prelude::*;

use concave_core::exact::{log_qpochhammer, qpochhammer};
use concave_core::limits::{build_profile, Side};
use concave_core::sampler::{frequencies_to_partitions, FrequencyVector};
use concave_core::stats::{ks_distance, summarize, EmpiricalCDF};
use concave_core::{ConcaveComposition, Partition};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u64..40, 0..25).prop_map(|v| Partition::from_unsorted(v).unwrap())
}

fn composition() -> impl Strategy<Value = ConcaveComposition> {
    (
        0u64..5,
        prop::collection::vec(0u64..30, 0..20),
        prop::collection::vec(0u64..30, 0..20),
    )
        .prop_map(|(c, m, p)| {
            let lift =
                |v: Vec<u64>| Partition::from_unsorted(v.into_iter().map(|x| x + c + 1).collect());
            ConcaveComposition::new(lift(m).unwrap(), c, lift(p).unwrap()).unwrap()
        })
}

proptest! {
    #[test]
    fn frequencies_round_trip(minus in partition(), plus in partition()) {
        let f = FrequencyVector::from_partitions(&minus, &plus);
        let (m2, p2) = frequencies_to_partitions(&f);
        prop_assert_eq!(&m2, &minus);
        prop_assert_eq!(&p2, &plus);
        prop_assert_eq!(f.size(), minus.size() + plus.size());
        prop_assert_eq!(f.len_minus(), minus.len() as u64);
    }

    #[test]
    fn frequency_list_rebuilds_partition(p in partition()) {
        prop_assert_eq!(Partition::from_frequencies(p.frequencies()).unwrap(), p);
    }

    #[test]
    fn conjugation_preserves_half_perimeter(p in partition()) {
        let c = p.conjugate();
        prop_assert_eq!(c.size(), p.size());
        prop_assert_eq!(p.len() as u64 + p.largest_part(), c.len() as u64 + c.largest_part());
        prop_assert_eq!(c.conjugate(), p);
    }

    #[test]
    fn sequence_round_trip(c in composition()) {
        let seq = c.to_sequence();
        prop_assert_eq!(ConcaveComposition::from_sequence(&seq).unwrap(), c.clone());
        let s = summarize(&c);
        prop_assert_eq!(s.total(), c.total());
        prop_assert_eq!(s.length as usize, seq.len());
    }

    #[test]
    fn profile_area_and_outward_growth(c in composition()) {
        prop_assume!(c.total() > 0);
        let p = build_profile(&c);
        prop_assert_eq!(p.area_doubled(), 2 * c.total() as u128);
        // heights weakly increase away from the centre cell
        for w in p.steps().windows(2) {
            if w[0].left2 >= -1 {
                prop_assert!(w[1].height >= w[0].height);
            }
            if w[1].right2 <= 1 {
                prop_assert!(w[0].height >= w[1].height);
            }
        }
        // boundary ticks are monotone in the height
        let mut prev = (0.0, 0.0);
        for i in 0..40 {
            let y = i as f64 * 0.25;
            let (bm, bp) = (p.boundary_x(Side::Minus, y), p.boundary_x(Side::Plus, y));
            prop_assert!(bp >= prev.1 && bm <= prev.0);
            prev = (bm, bp);
        }
    }

    #[test]
    fn ks_is_invariant_under_monotone_maps(xs in prop::collection::vec(-5.0f64..5.0, 1..200)) {
        let cdf = |x: f64| 1.0 / (1.0 + (-x).exp());
        let e = EmpiricalCDF::new(xs.clone()).unwrap();
        let mapped = EmpiricalCDF::new(xs.iter().map(|x| x.exp()).collect()).unwrap();
        let d1 = ks_distance(&e, cdf, 1.0).statistic;
        let d2 = ks_distance(&mapped, |y: f64| cdf(y.ln()), 1.0).statistic;
        prop_assert!((d1 - d2).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&d1));
    }

    #[test]
    fn qpochhammer_matches_direct_product(z in 0.0f64..0.99, q in 0.0f64..0.95) {
        let mut direct = 1.0;
        let mut zq = z;
        for _ in 0..2000 {
            direct *= 1.0 - zq;
            zq *= q;
        }
        let v = qpochhammer(z, q, 1e-14).unwrap();
        prop_assert!((v - direct).abs() < 1e-12 * direct.max(1e-300) + 1e-15);
        prop_assert!(log_qpochhammer(z, q, 1e-14).unwrap() <= 0.0);
    }
}
