//! Kusmin-Landau: if `f'` is monotone and `||f'|| >= lambda > 0` on an
//! interval, then `|sum e(f(n))| <= cot(pi lambda / 2) < 1 / lambda`.

use serde::Serialize;

use super::summation::CompensatedComplex;
use super::unit_phase;

/// Phase `f(n) = amplitude * n^theta` summed over `n0 <= n <= n1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KlCase {
    pub amplitude: f64,
    pub theta: f64,
    pub n0: u64,
    pub n1: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KlOutcome {
    Checked {
        sum_abs: f64,
        lambda: f64,
        bound: f64,
        pass: bool,
    },
    Skipped {
        reason: String,
    },
}

impl KlOutcome {
    pub fn passed(&self) -> Option<bool> {
        match self {
            KlOutcome::Checked { pass, .. } => Some(*pass),
            KlOutcome::Skipped { .. } => None,
        }
    }
}

impl KlCase {
    pub fn derivative(&self, t: f64) -> f64 {
        if self.theta == 1.0 {
            self.amplitude
        } else {
            self.amplitude * self.theta * t.powf(self.theta - 1.0)
        }
    }

    /// `min ||f'||` over `[n0, n1]`, or 0 if `f'` reaches an integer there.
    /// For a monotone derivative the range is spanned by the endpoints.
    pub fn lambda(&self) -> f64 {
        let d0 = self.derivative(self.n0 as f64);
        let d1 = self.derivative(self.n1 as f64);
        let (lo, hi) = if d0 <= d1 { (d0, d1) } else { (d1, d0) };
        let cell = lo.floor();
        if hi >= cell + 1.0 || lo == cell {
            return 0.0;
        }
        (lo - cell).min(cell + 1.0 - hi)
    }
}

pub fn kusmin_landau_check(case: &KlCase) -> KlOutcome {
    if case.n0 == 0 || case.n1 < case.n0 {
        return KlOutcome::Skipped {
            reason: format!("interval [{}, {}] must be non-empty and positive", case.n0, case.n1),
        };
    }
    let lambda = case.lambda();
    if lambda <= 0.0 {
        return KlOutcome::Skipped {
            reason: format!(
                "f' = {}*{}*t^{} meets an integer on [{}, {}]",
                case.amplitude,
                case.theta,
                case.theta - 1.0,
                case.n0,
                case.n1
            ),
        };
    }
    let mut acc = CompensatedComplex::new();
    for n in case.n0..=case.n1 {
        acc.add(unit_phase(case.amplitude * (n as f64).powf(case.theta)));
    }
    let sum_abs = acc.value().norm();
    let bound = 1.0 / lambda;
    KlOutcome::Checked {
        sum_abs,
        lambda,
        bound,
        pass: sum_abs <= bound,
    }
}

/// Smallest lambda admitted into [`default_suite`].
pub const SUITE_MIN_LAMBDA: f64 = 1e-3;

/// Fifty monomial phases with `lambda >= 1e-3`, drawn in a fixed order from
/// a grid of exponents, amplitudes and intervals.
pub fn default_suite() -> Vec<KlCase> {
    const THETAS: [f64; 9] = [0.3, 0.5, 0.75, 0.9, 1.0, 1.25, 1.5, 2.0, 2.5];
    const AMPLITUDES: [f64; 7] = [0.4, 0.05, 1.7, 0.013, 3.3, 0.0007, 0.21];
    const INTERVALS: [(u64, u64); 6] = [(1, 100), (10, 200), (50, 500), (100, 1000), (1000, 5000), (3, 40)];
    let mut out = Vec::with_capacity(50);
    for &(n0, n1) in &INTERVALS {
        for &theta in &THETAS {
            for &amplitude in &AMPLITUDES {
                let case = KlCase { amplitude, theta, n0, n1 };
                if case.lambda() >= SUITE_MIN_LAMBDA && out.len() < 50 {
                    out.push(case);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn checked(case: KlCase) -> (f64, f64, bool) {
        match kusmin_landau_check(&case) {
            KlOutcome::Checked { sum_abs, bound, pass, .. } => (sum_abs, bound, pass),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn one_third_steps() {
        // 99 terms cancel in threes, e(100/3) survives
        let (s, b, pass) = checked(KlCase { amplitude: 1.0 / 3.0, theta: 1.0, n0: 1, n1: 100 });
        assert!((s - 1.0).abs() < 1e-12);
        assert!((b - 3.0).abs() < 1e-12);
        assert!(pass);
    }

    #[test]
    fn alternating_signs() {
        let (s, b, pass) = checked(KlCase { amplitude: 0.5, theta: 1.0, n0: 1, n1: 10 });
        assert!(s < 1e-12);
        assert!((b - 2.0).abs() < 1e-12);
        assert!(pass);
    }

    #[test]
    fn fractional_power() {
        let case = KlCase { amplitude: 0.4, theta: 0.9, n0: 10, n1: 200 };
        let lambda = case.lambda();
        // f' = 0.36 t^{-0.1} runs from 0.2860 down to 0.2099
        let expected = 0.36 * 200f64.powf(-0.1);
        assert!((lambda - expected).abs() < 1e-15);
        let (s, b, pass) = checked(case);
        assert!(pass, "{s} > {b}");
    }

    #[test]
    fn skips_when_derivative_hits_integer() {
        let case = KlCase { amplitude: 1.0, theta: 2.0, n0: 1, n1: 10 };
        assert!(matches!(kusmin_landau_check(&case), KlOutcome::Skipped { .. }));
        let integer_slope = KlCase { amplitude: 2.0, theta: 1.0, n0: 1, n1: 10 };
        assert_eq!(integer_slope.lambda(), 0.0);
    }

    #[test]
    fn suite_shape() {
        let suite = default_suite();
        assert_eq!(suite.len(), 50);
        assert!(suite.iter().all(|c| c.lambda() >= SUITE_MIN_LAMBDA));
        let thetas: std::collections::BTreeSet<u64> = suite.iter().map(|c| c.theta.to_bits()).collect();
        assert!(thetas.len() >= 4, "suite should vary the exponent");
    }
}
