use num_bigint::BigUint;
use proptest::prelude::*;
use psrange::primes::{floor_pow, pi_c, psi_difference_sum, RationalExponent};

fn c(p: u32, q: u32) -> RationalExponent {
    RationalExponent::new(p, q).unwrap()
}

// Counts cross-checked against an independent enumeration with exact
// integer roots and a separate primality test.
#[test]
fn frozen_counts() {
    for (x, count) in [(10_000u64, 279u64), (100_000, 1519), (1_000_000, 8057)] {
        let r = pi_c(x, c(6, 5)).unwrap();
        assert_eq!(r.count, count, "x = {x}");
        assert!((0.85..=1.25).contains(&r.ratio), "x = {x}: {}", r.ratio);
    }
}

// Reference value from a 40-digit evaluation of the same sum.
#[test]
fn psi_sum_at_one_million() {
    let r = psi_difference_sum(1_000_000, c(6, 5)).unwrap();
    let oracle = 978.153_940_728_690_366;
    assert!((r.value - oracle).abs() < 1e-9, "{}", r.value);
    assert!((r.normalized - 0.009_781_539_407_286_904).abs() < 1e-14);
    assert!(r.normalized.abs() < 0.05);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn floor_pow_brackets_the_root(n in 1u64..=1_000_000_000, p in 1u32..=7, q in 1u32..=7) {
        let r = floor_pow(n, p, q);
        let np = BigUint::from(n).pow(p);
        prop_assert!(r.pow(q) <= np);
        prop_assert!((&r + 1u32).pow(q) > np);
    }

    #[test]
    fn sequence_strictly_increases(n in 1u64..=1_000_000_000, p in 2u32..=9) {
        let q = p - 1;
        prop_assert!(floor_pow(n + 1, p, q) > floor_pow(n, p, q));
    }
}
