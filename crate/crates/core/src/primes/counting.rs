use rayon::prelude::*;
use serde::Serialize;

use super::{ceil_pow, floor_pow_u64, is_prime, RationalExponent};
use crate::error::{Error, Result};
use num_traits::ToPrimitive;

pub const DEFAULT_SEGMENT_WIDTH: u64 = 1 << 20;

/// Largest default `n` range for one count.
pub const DEFAULT_COUNT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub segment_width: u64,
    pub parallel: bool,
    pub budget: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            segment_width: DEFAULT_SEGMENT_WIDTH,
            parallel: true,
            budget: DEFAULT_COUNT_BUDGET,
        }
    }
}

impl CountOptions {
    pub fn serial() -> Self {
        CountOptions { parallel: false, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeCountReport {
    pub x: u64,
    pub c: RationalExponent,
    pub count: u64,
    /// `x^{1/c} / log x`
    pub main_term: f64,
    pub ratio: f64,
    /// Largest `n` with `floor(n^c) <= x`.
    pub n_max: u64,
}

fn sequence_value(n: u64, c: RationalExponent) -> Result<u64> {
    floor_pow_u64(n, c.p(), c.q())
        .ok_or_else(|| Error::Internal(format!("floor({n}^{c}) does not fit in 64 bits")))
}

/// Primes among `floor(n^c)` for `n` in `[start, end]`, checking that the
/// sequence is strictly increasing from `floor((start-1)^c)` on.
fn count_segment(start: u64, end: u64, c: RationalExponent) -> Result<u64> {
    let mut prev = if start > 1 { Some(sequence_value(start - 1, c)?) } else { None };
    let mut count = 0;
    for n in start..=end {
        let v = sequence_value(n, c)?;
        if prev.is_some_and(|p| p >= v) {
            return Err(Error::Internal(format!("floor(n^{c}) repeats a value at n = {n}")));
        }
        prev = Some(v);
        if is_prime(v) {
            count += 1;
        }
    }
    Ok(count)
}

/// `pi_c(x)`: the number of primes `p <= x` of the form `floor(n^c)`.
pub fn pi_c(x: u64, c: RationalExponent) -> Result<PrimeCountReport> {
    pi_c_with(x, c, CountOptions::default())
}

pub fn pi_c_with(x: u64, c: RationalExponent, opts: CountOptions) -> Result<PrimeCountReport> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!("x must be at least 2, got {x}")));
    }
    if opts.segment_width == 0 {
        return Err(Error::InvalidArgument("segment width must be positive".into()));
    }
    // floor(n^c) <= x  <=>  n < (x+1)^{1/c}
    let n_max = ceil_pow(x.checked_add(1).ok_or_else(|| Error::InvalidArgument("x too large".into()))?, c.q(), c.p())
        .to_u64()
        .ok_or_else(|| Error::Internal("n range does not fit in 64 bits".into()))?
        - 1;
    if n_max > opts.budget {
        return Err(Error::BudgetExceeded {
            required: u128::from(n_max),
            budget: u128::from(opts.budget),
        });
    }

    let segments: Vec<(u64, u64)> = (0..n_max.div_ceil(opts.segment_width))
        .map(|i| {
            let start = i * opts.segment_width + 1;
            (start, (start + opts.segment_width - 1).min(n_max))
        })
        .collect();
    let counts: Vec<Result<u64>> = if opts.parallel {
        segments.par_iter().map(|&(s, e)| count_segment(s, e, c)).collect()
    } else {
        segments.iter().map(|&(s, e)| count_segment(s, e, c)).collect()
    };
    let count = counts.into_iter().sum::<Result<u64>>()?;

    let xf = x as f64;
    let main_term = xf.powf(c.gamma_f64()) / xf.ln();
    Ok(PrimeCountReport {
        x,
        c,
        count,
        main_term,
        ratio: count as f64 / main_term,
        n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::floor_pow;

    fn c(p: u32, q: u32) -> RationalExponent {
        RationalExponent::new(p, q).unwrap()
    }

    #[test]
    fn hand_counts() {
        // values 1,2,5,8,11,14,18,22,27,31; primes 2,5,11,31
        let r = pi_c(31, c(3, 2)).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.n_max, 10);
        let r = pi_c(2, c(3, 2)).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.n_max, 2);
        assert_eq!(pi_c(30, c(3, 2)).unwrap().count, 3);
    }

    #[test]
    fn n_max_is_exact() {
        for x in [10u64, 31, 124, 125, 126, 1000, 4096] {
            for cc in [c(3, 2), c(6, 5), c(7, 6), c(2, 1)] {
                let n = pi_c(x, cc).unwrap().n_max;
                assert!(floor_pow(n, cc.p(), cc.q()) <= x.into());
                assert!(floor_pow(n + 1, cc.p(), cc.q()) > x.into());
            }
        }
    }

    #[test]
    fn matches_direct_enumeration() {
        for cc in [c(3, 2), c(6, 5), c(11, 10)] {
            let x = 20_000u64;
            let direct = (1..)
                .map(|n| floor_pow_u64(n, cc.p(), cc.q()).unwrap())
                .take_while(|&v| v <= x)
                .filter(|&v| is_prime(v))
                .count() as u64;
            assert_eq!(pi_c(x, cc).unwrap().count, direct);
        }
    }

    #[test]
    fn segmentation_does_not_matter() {
        let cc = c(6, 5);
        let reference = pi_c_with(200_000, cc, CountOptions::serial()).unwrap();
        for width in [1u64, 7, 1000, 1 << 20] {
            for parallel in [false, true] {
                let opts = CountOptions { segment_width: width, parallel, ..Default::default() };
                assert_eq!(pi_c_with(200_000, cc, opts).unwrap(), reference);
            }
        }
    }

    #[test]
    fn budget_and_arguments() {
        let opts = CountOptions { budget: 10, ..Default::default() };
        assert!(matches!(pi_c_with(1000, c(3, 2), opts), Err(Error::BudgetExceeded { .. })));
        assert!(pi_c(1, c(3, 2)).is_err());
    }

    #[test]
    fn count_is_monotone() {
        let cc = c(7, 6);
        let mut last = 0;
        for x in (3..3000).step_by(37) {
            let n = pi_c(x, cc).unwrap().count;
            assert!(n >= last);
            last = n;
        }
    }
}
