//! Counting quadruples `(m, m~, n, n~)` with `m, m~ in (M, 2M]`,
//! `n, n~ in (N, 2N]` and `|(m~/m)^alpha - (n~/n)^beta| < delta`.

use crate::error::{Error, Result};

fn check_args(m: u64, n: u64, alpha: f64, beta: f64, delta: f64) -> Result<()> {
    if alpha == 0.0 || beta == 0.0 || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "spacing count needs finite non-zero exponents, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("M and N must be at least 1".into()));
    }
    Ok(())
}

/// All `(r~/r)^exponent` for `r, r~ in (base, 2 base]`, row-major in `(r, r~)`.
fn ratio_powers(base: u64, exponent: f64) -> Vec<f64> {
    let range = base + 1..=2 * base;
    range
        .clone()
        .flat_map(|r| range.clone().map(move |rt| (rt as f64 / r as f64).powf(exponent)))
        .collect()
}

#[inline]
fn close(x: f64, y: f64, delta: f64) -> bool {
    (x - y).abs() < delta
}

pub fn spacing_count_naive(m: u64, n: u64, alpha: f64, beta: f64, delta: f64) -> Result<u64> {
    check_args(m, n, alpha, beta, delta)?;
    let xs = ratio_powers(m, alpha);
    let ys = ratio_powers(n, beta);
    let mut count = 0u64;
    for &x in &xs {
        for &y in &ys {
            if close(x, y, delta) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Sort both ratio lists and sweep a window over the second one.
///
/// The window edges are moved with the same floating-point predicate the
/// naive count uses; `fl(x - y)` is monotone in `y`, so the matching `y`
/// form a contiguous run and both counts agree exactly.
pub fn spacing_count_sorted(m: u64, n: u64, alpha: f64, beta: f64, delta: f64) -> Result<u64> {
    check_args(m, n, alpha, beta, delta)?;
    let mut xs = ratio_powers(m, alpha);
    let mut ys = ratio_powers(n, beta);
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let mut lo = 0usize;
    let mut hi = 0usize;
    let mut count = 0u64;
    for &x in &xs {
        while lo < ys.len() && ys[lo] < x && !close(x, ys[lo], delta) {
            lo += 1;
        }
        if hi < lo {
            hi = lo;
        }
        while hi < ys.len() && (ys[hi] <= x || close(x, ys[hi], delta)) {
            hi += 1;
        }
        count += (hi - lo) as u64;
    }
    Ok(count)
}

/// Sort-merge count; see [`spacing_count_naive`] for the reference.
pub fn spacing_count(m: u64, n: u64, alpha: f64, beta: f64, delta: f64) -> Result<u64> {
    spacing_count_sorted(m, n, alpha, beta, delta)
}

/// Count divided by `MN log(2MN) + delta M^2 N^2`.
pub fn spacing_bound_ratio(m: u64, n: u64, alpha: f64, beta: f64, delta: f64) -> Result<f64> {
    let count = spacing_count(m, n, alpha, beta, delta)?;
    let mn = (m * n) as f64;
    Ok(count as f64 / (mn * (2.0 * mn).ln() + delta * mn * mn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_point() {
        for delta in [1e-9, 0.01, 0.5, 3.0] {
            assert_eq!(spacing_count_naive(1, 1, 1.0, 1.0, delta).unwrap(), 1);
            assert_eq!(spacing_count_sorted(1, 1, 1.0, 1.0, delta).unwrap(), 1);
        }
    }

    #[test]
    fn two_by_two() {
        // ratios {1, 1, 4/3, 3/4} on both sides: 2*2 + 1 + 1
        assert_eq!(spacing_count_naive(2, 2, 1.0, 1.0, 0.01).unwrap(), 6);
        assert_eq!(spacing_count_sorted(2, 2, 1.0, 1.0, 0.01).unwrap(), 6);
    }

    #[test]
    fn bound_ratio_values() {
        let r = spacing_bound_ratio(1, 1, 1.0, 1.0, 0.5).unwrap();
        assert!((r - 1.0 / (2f64.ln() + 0.5)).abs() < 1e-12);
        assert!((r - 0.836).abs() < 5e-3);
        let r = spacing_bound_ratio(2, 2, 1.0, 1.0, 0.01).unwrap();
        assert!((r - 6.0 / (4.0 * 8f64.ln() + 0.16)).abs() < 1e-12);
        assert!((r - 0.70).abs() < 1e-2);
        assert!(spacing_bound_ratio(32, 32, 1.0, -1.0, 0.01).unwrap() <= 8.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(spacing_count(2, 2, 0.0, 1.0, 0.1).is_err());
        assert!(spacing_count(2, 2, 1.0, 0.0, 0.1).is_err());
        assert!(spacing_count(2, 2, 1.0, 1.0, 0.0).is_err());
        assert!(spacing_count(0, 2, 1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn eight_by_eight_agree() {
        for (a, b) in [(1.0, 1.0), (0.5, 1.0), (1.0, -1.0), (-0.5, 0.5)] {
            assert_eq!(
                spacing_count_naive(8, 8, a, b, 0.001).unwrap(),
                spacing_count_sorted(8, 8, a, b, 0.001).unwrap()
            );
        }
    }

    fn exponent() -> impl Strategy<Value = f64> {
        prop_oneof![Just(1.0), Just(-1.0), Just(0.5), Just(-0.5), Just(2.0), 0.1f64..3.0]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn implementations_agree(m in 1u64..12, n in 1u64..12, a in exponent(), b in exponent(), delta in 1e-4f64..0.5) {
            prop_assert_eq!(
                spacing_count_naive(m, n, a, b, delta).unwrap(),
                spacing_count_sorted(m, n, a, b, delta).unwrap()
            );
        }

        #[test]
        fn symmetric_under_side_swap(m in 1u64..10, n in 1u64..10, a in exponent(), b in exponent(), delta in 1e-4f64..0.5) {
            prop_assert_eq!(
                spacing_count(m, n, a, b, delta).unwrap(),
                spacing_count(n, m, b, a, delta).unwrap()
            );
        }

        #[test]
        fn monotone_in_delta(m in 1u64..10, n in 1u64..10, a in exponent(), b in exponent(), d1 in 1e-4f64..0.5, d2 in 1e-4f64..0.5) {
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            prop_assert!(spacing_count(m, n, a, b, lo).unwrap() <= spacing_count(m, n, a, b, hi).unwrap());
        }
    }
}
