//! Direct evaluation of
//! `T = sum_{h~H} sum_{m~M} sum_{n~N} a_h b_m e(X h^a m^b n^g / (H^a M^b N^g))`
//! and comparison with the twelve-term bound.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::summation::CompensatedComplex;
use super::unit_phase;
use crate::bounds::{twelve_term_bound, wu_terms, MonomialTerm};
use crate::error::{Error, Result};
use crate::exponent::ExponentPair;

/// Default cap on `H * M * N`.
pub const DEFAULT_TERM_BUDGET: u128 = 1_000_000_000;

/// Tolerance for the hypotheses on `(alpha, beta, gamma)`.
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-9;

/// Distances to the excluded set below this are reported as near misses.
pub const NEAR_VIOLATION_MARGIN: f64 = 1e-6;

/// Largest `k` tried when minimising Wu's bound over `K = 2^k`.
pub const WU_MAX_K: i64 = 12;

#[derive(Clone, Debug, Serialize)]
pub struct TrilinearSpec {
    pub x: f64,
    pub h: u64,
    pub m: u64,
    pub n: u64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// `a_h` for `h = H+1 ..= 2H`.
    #[serde(skip)]
    pub a: Vec<Complex64>,
    /// `b_m` for `m = M+1 ..= 2M`.
    #[serde(skip)]
    pub b: Vec<Complex64>,
}

/// `n` points `e(u)` with `u` uniform on `[0, 1)`.
fn unit_coefficients(rng: &mut ChaCha8Rng, n: u64) -> Vec<Complex64> {
    (0..n).map(|_| unit_phase(rng.gen::<f64>())).collect()
}

impl TrilinearSpec {
    /// Unit-modulus coefficients from ChaCha8 seeded with `seed`; all `a_h`
    /// are drawn before the `b_m`.
    #[allow(clippy::too_many_arguments)]
    pub fn random(x: f64, h: u64, m: u64, n: u64, alpha: f64, beta: f64, gamma: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = unit_coefficients(&mut rng, h);
        let b = unit_coefficients(&mut rng, m);
        TrilinearSpec { x, h, m, n, alpha, beta, gamma, a, b }
    }

    /// All coefficients equal to one.
    pub fn ones(x: f64, h: u64, m: u64, n: u64, alpha: f64, beta: f64, gamma: f64) -> Self {
        TrilinearSpec {
            x,
            h,
            m,
            n,
            alpha,
            beta,
            gamma,
            a: vec![Complex64::new(1.0, 0.0); h as usize],
            b: vec![Complex64::new(1.0, 0.0); m as usize],
        }
    }

    pub fn term_count(&self) -> u128 {
        u128::from(self.h) * u128::from(self.m) * u128::from(self.n)
    }

    fn validate(&self) -> Result<()> {
        if self.h == 0 || self.m == 0 || self.n == 0 {
            return Err(Error::InvalidArgument("H, M, N must be at least 1".into()));
        }
        if self.a.len() as u64 != self.h || self.b.len() as u64 != self.m {
            return Err(Error::InvalidArgument(format!(
                "need {} coefficients a_h and {} coefficients b_m, got {} and {}",
                self.h,
                self.m,
                self.a.len(),
                self.b.len()
            )));
        }
        let too_big = |z: &Complex64| z.norm() > 1.0 + 1e-12;
        if self.a.iter().any(too_big) || self.b.iter().any(too_big) {
            return Err(Error::InvalidArgument("coefficients must satisfy |a_h|, |b_m| <= 1".into()));
        }
        if !self.x.is_finite() {
            return Err(Error::InvalidArgument("X must be finite".into()));
        }
        Ok(())
    }

    /// `(alpha, beta, gamma)` must satisfy `alpha beta gamma (1 - alpha) != 0`
    /// and `(gamma - 1)/(1 - alpha)` must not be a positive integer.
    /// Returns whether a condition only just held.
    pub fn check_hypotheses(&self) -> Result<bool> {
        let product = self.alpha * self.beta * self.gamma * (1.0 - self.alpha);
        if product.abs() <= HYPOTHESIS_TOLERANCE {
            return Err(Error::Hypothesis(format!(
                "alpha*beta*gamma*(1-alpha) = {product} is zero"
            )));
        }
        let ratio = (self.gamma - 1.0) / (1.0 - self.alpha);
        let nearest = ratio.round();
        let dist = (ratio - nearest).abs();
        if nearest >= 1.0 && dist <= HYPOTHESIS_TOLERANCE {
            return Err(Error::Hypothesis(format!(
                "(gamma-1)/(1-alpha) = {ratio} is the natural number {nearest}"
            )));
        }
        Ok(nearest >= 1.0 && dist <= NEAR_VIOLATION_MARGIN)
    }
}

fn normalized_powers(base: u64, exponent: f64) -> Vec<f64> {
    let b = base as f64;
    (base + 1..=2 * base)
        .map(|k| (k as f64 / b).powf(exponent))
        .collect()
}

/// The triple sum with compensated accumulation. Each `h` is one segment;
/// segments are merged in index order, so the result does not depend on
/// the number of worker threads.
pub fn trilinear_sum(spec: &TrilinearSpec) -> Result<Complex64> {
    trilinear_sum_with_budget(spec, DEFAULT_TERM_BUDGET)
}

pub fn trilinear_sum_with_budget(spec: &TrilinearSpec, budget: u128) -> Result<Complex64> {
    spec.validate()?;
    let required = spec.term_count();
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let hp = normalized_powers(spec.h, spec.alpha);
    let mp = normalized_powers(spec.m, spec.beta);
    let np = normalized_powers(spec.n, spec.gamma);
    let segments: Vec<CompensatedComplex> = hp
        .par_iter()
        .zip(spec.a.par_iter())
        .map(|(&hw, &a)| {
            let mut seg = CompensatedComplex::new();
            if a == Complex64::new(0.0, 0.0) {
                return seg;
            }
            let xh = spec.x * hw;
            for (&mw, &b) in mp.iter().zip(&spec.b) {
                if b == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let xhm = xh * mw;
                let mut inner = CompensatedComplex::new();
                for &nw in &np {
                    inner.add(unit_phase(xhm * nw));
                }
                seg.add(inner.value() * b * a);
            }
            seg
        })
        .collect();
    let mut total = CompensatedComplex::new();
    for s in &segments {
        total.merge(s);
    }
    Ok(total.value())
}

#[derive(Clone, Debug, Serialize)]
pub struct WuComparison {
    pub k: i64,
    pub envelope: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeReport {
    pub t_abs: f64,
    /// Twelve-term bound times `log(2 + XHMN)`, implied constant 1.
    pub envelope: f64,
    pub ratio: f64,
    pub log_factor: f64,
    /// Present when `X <= min{H^2, H^2 N / M}`.
    pub wu: Option<WuComparison>,
    pub near_violation: bool,
}

fn envelope_value(terms: &[MonomialTerm], spec: &TrilinearSpec) -> f64 {
    let (x, h, m, n) = (spec.x, spec.h as f64, spec.m as f64, spec.n as f64);
    terms.iter().map(|t| t.evaluate(x, h, m, n)).sum()
}

pub fn envelope_ratio(spec: &TrilinearSpec, pair: &ExponentPair) -> Result<EnvelopeReport> {
    envelope_ratio_with_budget(spec, pair, DEFAULT_TERM_BUDGET)
}

pub fn envelope_ratio_with_budget(spec: &TrilinearSpec, pair: &ExponentPair, budget: u128) -> Result<EnvelopeReport> {
    if !(spec.x > 0.0) {
        return Err(Error::InvalidArgument(format!("X must be positive, got {}", spec.x)));
    }
    let near_violation = spec.check_hypotheses()?;
    let t_abs = trilinear_sum_with_budget(spec, budget)?.norm();
    let (x, h, m, n) = (spec.x, spec.h as f64, spec.m as f64, spec.n as f64);
    let log_factor = (2.0 + x * h * m * n).ln();
    let envelope = envelope_value(&twelve_term_bound(pair)?, spec) * log_factor;

    let wu = if x <= (h * h).min(h * h * n / m) {
        let mut best: Option<WuComparison> = None;
        for k in 2..=WU_MAX_K {
            let env = envelope_value(&wu_terms(k)?, spec) * log_factor;
            if best.as_ref().is_none_or(|b| env < b.envelope) {
                best = Some(WuComparison { k, envelope: env, ratio: t_abs / env });
            }
        }
        best
    } else {
        None
    };

    Ok(EnvelopeReport {
        t_abs,
        envelope,
        ratio: t_abs / envelope,
        log_factor,
        wu,
        near_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::reference_pair;

    fn sample() -> TrilinearSpec {
        TrilinearSpec::random(1e3, 16, 16, 16, 0.5, 1.0, 0.75, 42)
    }

    #[test]
    fn zero_coefficients() {
        let mut spec = sample();
        spec.a.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        assert_eq!(trilinear_sum(&spec).unwrap(), Complex64::new(0.0, 0.0));
        let r = envelope_ratio(&spec, &reference_pair().pair).unwrap();
        assert_eq!(r.ratio, 0.0);
    }

    #[test]
    fn zero_frequency_counts_terms() {
        let spec = TrilinearSpec::ones(0.0, 5, 7, 9, 0.5, 1.0, 0.75);
        let t = trilinear_sum(&spec).unwrap();
        assert_eq!(t, Complex64::new(315.0, 0.0));
    }

    #[test]
    fn single_term() {
        let spec = TrilinearSpec::ones(1.0, 1, 1, 1, 1.0, 1.0, 1.0);
        let t = trilinear_sum(&spec).unwrap();
        assert!((t - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn trivial_bound_and_conjugation() {
        let spec = sample();
        let t = trilinear_sum(&spec).unwrap();
        assert!(t.norm() <= spec.term_count() as f64);
        let mut conj = spec.clone();
        conj.x = -conj.x;
        conj.a.iter_mut().for_each(|a| *a = a.conj());
        conj.b.iter_mut().for_each(|b| *b = b.conj());
        let tc = trilinear_sum(&conj).unwrap();
        assert!((tc - t.conj()).norm() <= 1e-10 * t.norm());
    }

    #[test]
    fn coefficient_scaling() {
        let spec = sample();
        let base = trilinear_sum(&spec).unwrap().norm();
        let c = Complex64::new(0.3, -0.4);
        let mut scaled = spec.clone();
        scaled.a.iter_mut().for_each(|a| *a *= c);
        let s = trilinear_sum(&scaled).unwrap().norm();
        assert!((s - 0.5 * base).abs() <= 1e-10 * base);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = sample();
        let err = trilinear_sum_with_budget(&spec, 1000).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { required: 4096, budget: 1000 });
    }

    #[test]
    fn coefficient_checks() {
        let mut spec = sample();
        spec.b[3] = Complex64::new(1.5, 0.0);
        assert!(trilinear_sum(&spec).is_err());
        let mut short = sample();
        short.a.pop();
        assert!(trilinear_sum(&short).is_err());
    }

    #[test]
    fn seeded_coefficients_are_reproducible() {
        let a = TrilinearSpec::random(10.0, 4, 3, 2, 0.5, 1.0, 0.75, 7);
        let b = TrilinearSpec::random(10.0, 4, 3, 2, 0.5, 1.0, 0.75, 7);
        assert_eq!(a.a, b.a);
        assert_eq!(a.b, b.b);
        assert!(a.a.iter().chain(&a.b).all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn hypotheses() {
        let mut spec = sample();
        assert_eq!(spec.check_hypotheses(), Ok(false));
        spec.alpha = 1.0;
        assert!(matches!(spec.check_hypotheses(), Err(Error::Hypothesis(_))));
        spec.alpha = 0.5;
        spec.gamma = 1.5; // (1.5 - 1)/(0.5) = 1
        assert!(matches!(spec.check_hypotheses(), Err(Error::Hypothesis(_))));
        spec.gamma = 1.5 + 1e-7;
        assert_eq!(spec.check_hypotheses(), Ok(true));
        spec.gamma = 0.0;
        assert!(envelope_ratio(&spec, &reference_pair().pair).is_err());
    }

    #[test]
    fn sample_ratio_regression() {
        let r = envelope_ratio(&sample(), &reference_pair().pair).unwrap();
        // frozen from the first run
        assert!((r.t_abs - 105.270432845397821).abs() < 1e-9 * 105.27);
        assert!((r.ratio - 5.21838815063827141e-4).abs() < 1e-9 * 5.22e-4);
    }

    #[test]
    fn wu_comparison_respects_restriction() {
        // X = 100 <= min(H^2, H^2 N / M) = 256
        let small = TrilinearSpec::random(100.0, 16, 16, 16, 0.5, 1.0, 0.75, 1);
        let r = envelope_ratio(&small, &reference_pair().pair).unwrap();
        assert!(r.wu.is_some());
        let large = TrilinearSpec::random(1e4, 16, 16, 16, 0.5, 1.0, 0.75, 1);
        let r = envelope_ratio(&large, &reference_pair().pair).unwrap();
        assert!(r.wu.is_none());
    }
}
