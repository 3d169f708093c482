use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{floor_pow, RationalExponent};
use super::sieve::von_mangoldt_segment;
use crate::error::{Error, Result};

/// Largest default number of `n` in `(x/2, x]`.
pub const DEFAULT_PSI_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsiSumReport {
    pub x: u64,
    pub c: RationalExponent,
    pub value: f64,
    /// `value / x^gamma`
    pub normalized: f64,
}

/// `psi(-n^gamma)` with `psi(t) = {t} - 1/2`.
///
/// The fractional part of `n^gamma = (n^q)^{1/p}` is taken from the exact
/// floor `r` as `r((1 + d/r^p)^{1/p} - 1)` with `d = n^q - r^p`, which keeps
/// full relative precision however large `n` is.
pub fn psi_of_negative_power(n: u64, c: RationalExponent) -> f64 {
    assert!(n >= 1, "n must be positive");
    let (p, q) = (c.p(), c.q());
    let r = floor_pow(n, q, p);
    let rp = r.pow(p);
    let d: BigUint = BigUint::from(n).pow(q) - &rp;
    if d == BigUint::ZERO {
        return -0.5;
    }
    let ratio = ratio_f64(&d, &rp);
    let frac = r.to_f64().unwrap_or(f64::INFINITY) * (ratio.ln_1p() / f64::from(p)).exp_m1();
    // {-y} = 1 - {y} for non-integer y
    0.5 - frac.clamp(0.0, 1.0)
}

fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    // shift both down so the quotient survives conversion
    let shift = b.bits().saturating_sub(1000);
    let a = a >> shift;
    let b = b >> shift;
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

/// `sum_{x/2 < n <= x} Lambda(n) (psi(-n^gamma) - psi(-(n+1)^gamma))`.
pub fn psi_difference_sum(x: u64, c: RationalExponent) -> Result<PsiSumReport> {
    psi_difference_sum_with(x, c, DEFAULT_PSI_BUDGET)
}

pub fn psi_difference_sum_with(x: u64, c: RationalExponent, budget: u64) -> Result<PsiSumReport> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!("x must be at least 2, got {x}")));
    }
    let lo = x / 2 + 1;
    let len = x - lo + 1;
    if len > budget {
        return Err(Error::BudgetExceeded { required: u128::from(len), budget: u128::from(budget) });
    }
    let lambda = von_mangoldt_segment(lo, x);
    let value = weighted_difference_sum(lo, &lambda, c);
    Ok(PsiSumReport {
        x,
        c,
        value,
        normalized: value / (x as f64).powf(c.gamma_f64()),
    })
}

/// The sum over `n = lo, lo+1, ...` with the given weights.
fn weighted_difference_sum(lo: u64, lambda: &[f64], c: RationalExponent) -> f64 {
    let mut sum = crate::expsum::CompensatedSum::default();
    let mut psi_n = psi_of_negative_power(lo, c);
    for (i, &w) in lambda.iter().enumerate() {
        let psi_next = psi_of_negative_power(lo + i as u64 + 1, c);
        if w != 0.0 {
            sum.add(w * (psi_n - psi_next));
        }
        psi_n = psi_next;
    }
    sum.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u32, q: u32) -> RationalExponent {
        RationalExponent::new(p, q).unwrap()
    }

    fn naive_psi_neg(n: u64, gamma: f64) -> f64 {
        let t = -(n as f64).powf(gamma);
        t - t.floor() - 0.5
    }

    #[test]
    fn psi_matches_plain_float_for_small_n() {
        for cc in [c(3, 2), c(6, 5), c(7, 6)] {
            for n in 1..5000u64 {
                let exact = psi_of_negative_power(n, cc);
                let naive = naive_psi_neg(n, cc.gamma_f64());
                // both are -1/2 at perfect powers, where the float may land on either side
                if (exact + 0.5).abs() > 1e-9 {
                    assert!((exact - naive).abs() < 1e-9, "n = {n}: {exact} vs {naive}");
                }
            }
        }
        assert_eq!(psi_of_negative_power(8, c(3, 2)), -0.5); // 8^{2/3} = 4
        assert_eq!(psi_of_negative_power(1, c(6, 5)), -0.5);
    }

    #[test]
    fn large_n_keeps_precision() {
        // n = m^5 + 1: n^{1/5} = m + 1/(5 m^4) + ...
        let m = 3000u64;
        let n = m.pow(5) + 1;
        let cc = c(5, 1);
        let expected = 0.5 - 1.0 / (5.0 * (m as f64).powi(4));
        let got = psi_of_negative_power(n, cc);
        assert!((got - expected).abs() < 1e-15, "{got} vs {expected}");
    }

    #[test]
    fn x_ten_by_hand() {
        let cc = c(3, 2);
        let g = cc.gamma_f64();
        let diff = |n: u64| naive_psi_neg(n, g) - naive_psi_neg(n + 1, g);
        let expected = 7f64.ln() * diff(7) + 2f64.ln() * diff(8) + 3f64.ln() * diff(9);
        let r = psi_difference_sum(10, cc).unwrap();
        assert!((r.value - expected).abs() < 1e-12, "{} vs {expected}", r.value);
        assert!((r.normalized - expected / 10f64.powf(g)).abs() < 1e-12);
    }

    #[test]
    fn zero_weights_give_zero() {
        assert_eq!(weighted_difference_sum(1000, &[0.0; 500], c(6, 5)), 0.0);
    }

    #[test]
    fn budget_is_enforced() {
        let err = psi_difference_sum_with(1000, c(6, 5), 10).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { required: 500, budget: 10 });
    }
}
