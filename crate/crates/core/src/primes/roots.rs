//! Exact `floor(n^{p/q})` and `ceil(n^{p/q})`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// `floor(n^{p/q})`: the unique `r` with `r^q <= n^p < (r+1)^q`.
pub fn floor_pow(n: u64, p: u32, q: u32) -> BigUint {
    assert!(p >= 1 && q >= 1, "exponents must be positive");
    if let Some(r) = floor_pow_small(n, p, q) {
        return BigUint::from(r);
    }
    BigUint::from(n).pow(p).nth_root(q)
}

/// `ceil(n^{p/q})`.
pub fn ceil_pow(n: u64, p: u32, q: u32) -> BigUint {
    let r = floor_pow(n, p, q);
    if r.pow(q) == BigUint::from(n).pow(p) {
        r
    } else {
        r + BigUint::one()
    }
}

/// `floor_pow` when the result fits in a `u64`.
pub fn floor_pow_u64(n: u64, p: u32, q: u32) -> Option<u64> {
    floor_pow_small(n, p, q).or_else(|| floor_pow(n, p, q).to_u64())
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// Fast path: `n^p` fits in `u128`. A floating-point estimate is corrected
/// with exact integer comparisons.
fn floor_pow_small(n: u64, p: u32, q: u32) -> Option<u64> {
    let target = checked_pow(u128::from(n), p)?;
    if q == 1 {
        return u64::try_from(target).ok();
    }
    let estimate = ((n as f64).ln() * f64::from(p) / f64::from(q)).exp();
    if !(estimate < 1.8e19) {
        return None;
    }
    let mut r = estimate as u128;
    // r^q <= target
    while checked_pow(r, q).is_none_or(|v| v > target) {
        r -= 1;
    }
    // (r+1)^q > target
    while checked_pow(r + 1, q).is_some_and(|v| v <= target) {
        r += 1;
    }
    u64::try_from(r).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert_eq!(floor_pow(5, 3, 2), BigUint::from(11u32));
        assert_eq!(floor_pow(2, 3, 2), BigUint::from(2u32));
        assert_eq!(floor_pow(10, 5, 4), BigUint::from(17u32));
        assert_eq!(floor_pow(0, 3, 2), BigUint::from(0u32));
        assert_eq!(floor_pow(1, 7, 3), BigUint::from(1u32));
        assert_eq!(floor_pow(4, 3, 2), BigUint::from(8u32));
    }

    #[test]
    fn ceil_values() {
        assert_eq!(ceil_pow(4, 3, 2), BigUint::from(8u32));
        assert_eq!(ceil_pow(5, 3, 2), BigUint::from(12u32));
        assert_eq!(ceil_pow(8, 2, 3), BigUint::from(4u32));
        assert_eq!(ceil_pow(9, 2, 3), BigUint::from(5u32));
    }

    #[test]
    fn large_values_use_big_path() {
        let n = 999_999_937u64;
        let r = floor_pow(n, 7, 2);
        let np = BigUint::from(n).pow(7);
        assert!(r.pow(2) <= np && (&r + 1u32).pow(2) > np);
        assert!(floor_pow_u64(n, 7, 2).is_none());
    }

    #[test]
    fn fast_path_agrees_with_big_roots() {
        for n in (1..2000u64).chain([u32::MAX as u64, 1 << 40, u64::MAX / 3]) {
            for p in 1..=4 {
                for q in 1..=5 {
                    if let Some(fast) = floor_pow_small(n, p, q) {
                        let slow = BigUint::from(n).pow(p).nth_root(q);
                        assert_eq!(BigUint::from(fast), slow, "n={n} p={p} q={q}");
                    }
                }
            }
        }
    }
}
