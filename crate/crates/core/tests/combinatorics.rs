use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use mzv_core::combinatorics::{
    bernoulli, binomial, compositions_enum, nonpositive_limit, stuffle_count,
    stuffle_count_closed_a, stuffle_count_closed_b, stuffle_count_recursive, tau_brute_force,
    tau_factorizations, LimitOrder,
};

#[test]
fn stuffle_routes_agree_and_are_symmetric() {
    for m in 0..=10u64 {
        for n in 0..=10u64 {
            let a = stuffle_count_closed_a(m, n);
            assert_eq!(a, stuffle_count_closed_b(m, n));
            assert_eq!(a, stuffle_count_recursive(m, n));
            assert_eq!(a, stuffle_count(n, m));
        }
    }
    // small values by hand: f(1,1) = |{(s,t), (t,s), (s+t)}|
    assert_eq!(stuffle_count(1, 1), BigInt::from(3));
    assert_eq!(stuffle_count(2, 1), BigInt::from(5));
}

#[test]
fn composition_counts() {
    for k in 1..=5usize {
        for n in 0..=7usize {
            let all = compositions_enum(k, n);
            assert_eq!(BigInt::from(all.len()), binomial((n + k - 1) as u64, (k - 1) as u64));
            assert!(all.iter().all(|c| c.len() == k && c.iter().sum::<usize>() == n));
        }
    }
    assert_eq!(compositions_enum(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
}

#[test]
fn tau_small_values() {
    // 12 = 1·12 = 2·6 = 3·4
    assert_eq!(tau_factorizations(12, 2), BigInt::from(3));
    assert_eq!(tau_brute_force(12, 2), 3);
    // 1·2·6, 1·3·4
    assert_eq!(tau_factorizations(12, 3), BigInt::from(2));
    assert_eq!(tau_factorizations(1, 1), BigInt::from(1));
    assert_eq!(tau_factorizations(1, 2), BigInt::from(0));
}

#[test]
fn depth_one_limits_are_riemann_values() {
    for n in 0..=6u32 {
        // with B_1 = -1/2 the Bernoulli expression needs ζ(0) = -1/2 separately
        let classical = if n == 0 {
            BigRational::new((-1).into(), 2.into())
        } else {
            -bernoulli(n + 1) / BigRational::from_integer(BigInt::from(n + 1))
        };
        assert_eq!(nonpositive_limit(n, 1, LimitOrder::S1First), classical, "n={n}");
        assert_eq!(nonpositive_limit(n, 1, LimitOrder::SkFirst), classical, "n={n}");
    }
    // ζ(-1) = -1/12, ζ(-3) = 1/120
    assert_eq!(nonpositive_limit(1, 1, LimitOrder::SkFirst), BigRational::new((-1).into(), 12.into()));
    assert_eq!(nonpositive_limit(3, 1, LimitOrder::S1First), BigRational::new(1.into(), 120.into()));
}

proptest! {
    #[test]
    fn tau_formula_matches_search(m in 1u64..5000, k in 1u32..=5) {
        prop_assert_eq!(tau_factorizations(m, k), BigInt::from(tau_brute_force(m, k)));
    }

    #[test]
    fn stuffle_closed_forms_agree(m in 0u64..30, n in 0u64..30) {
        prop_assert_eq!(stuffle_count_closed_a(m, n), stuffle_count_closed_b(m, n));
    }
}
