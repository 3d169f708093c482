//! Trigonometric approximation of the sawtooth with a non-negative error
//! majorant, built from the Beurling-Selberg extremal functions.
//!
//! With `J = H + 1` and
//! `phi(t) = pi t (1 - |t|) cot(pi t) + |t|` for `0 < |t| < 1`,
//! the approximant is
//! `psi*(t) = -sum_{1 <= |h| <= H} phi(h/J) e(ht) / (2 pi i h)`
//! and the error satisfies
//! `|psi(t) - psi*(t)| <= (1 / 2J) sum_{|h| <= H} (1 - |h|/J) e(ht)`,
//! the right side being a scaled Fejer kernel.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::sawtooth;

/// Coefficients `a_h` (`0 < |h| <= H`) and `b_h` (`|h| <= H`).
#[derive(Clone, Debug)]
pub struct VaalerApprox {
    pub h_max: u32,
    /// `a_h` for `h = 1..=H`; `a_{-h}` is the conjugate.
    a_pos: Vec<Complex64>,
    /// `b_h` for `h = 0..=H`; `b_{-h} = b_h`.
    b_pos: Vec<f64>,
}

/// `|a_h| <= A_CONST / |h|`
pub const A_CONST: f64 = 1.0 / TAU;
/// `b_h <= B_CONST / H`
pub const B_CONST: f64 = 0.5;

fn extremal_weight(t: f64) -> f64 {
    let t = t.abs();
    PI * t * (1.0 - t) / (PI * t).tan() + t
}

pub fn vaaler_coefficients(h_max: u32) -> VaalerApprox {
    assert!(h_max >= 1, "H must be at least 1");
    let j = f64::from(h_max) + 1.0;
    let a_pos = (1..=h_max)
        .map(|h| {
            let h = f64::from(h);
            // -1 / (2 pi i h) = i / (2 pi h)
            Complex64::new(0.0, extremal_weight(h / j) / (TAU * h))
        })
        .collect();
    let b_pos = (0..=h_max)
        .map(|h| (1.0 - f64::from(h) / j) / (2.0 * j))
        .collect();
    VaalerApprox { h_max, a_pos, b_pos }
}

impl VaalerApprox {
    pub fn a(&self, h: i64) -> Complex64 {
        assert!(h != 0 && h.unsigned_abs() <= u64::from(self.h_max), "a_h needs 0 < |h| <= H");
        let c = self.a_pos[h.unsigned_abs() as usize - 1];
        if h > 0 {
            c
        } else {
            c.conj()
        }
    }

    pub fn b(&self, h: i64) -> f64 {
        assert!(h.unsigned_abs() <= u64::from(self.h_max), "b_h needs |h| <= H");
        self.b_pos[h.unsigned_abs() as usize]
    }

    /// `sum_{0 < |h| <= H} a_h e(th)`, real by conjugate symmetry.
    pub fn approximant(&self, t: f64) -> f64 {
        self.a_pos
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let angle = TAU * (t * (i as f64 + 1.0)).rem_euclid(1.0);
                2.0 * (a.re * angle.cos() - a.im * angle.sin())
            })
            .sum()
    }

    /// `sum_{|h| <= H} b_h e(th)`.
    pub fn majorant(&self, t: f64) -> f64 {
        let tail: f64 = self.b_pos[1..]
            .iter()
            .enumerate()
            .map(|(i, b)| 2.0 * b * (TAU * (t * (i as f64 + 1.0)).rem_euclid(1.0)).cos())
            .sum();
        self.b_pos[0] + tail
    }

    /// `|psi(t) - approximant(t)| - majorant(t)`; non-positive when the
    /// inequality holds at `t`.
    pub fn violation(&self, t: f64) -> f64 {
        (sawtooth(t) - self.approximant(t)).abs() - self.majorant(t)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VaalerCheck {
    pub h: u32,
    pub grid_size: usize,
    pub max_violation: f64,
    pub min_majorant: f64,
    pub max_majorant: f64,
    pub pass: bool,
}

pub const VAALER_TOLERANCE: f64 = 1e-12;

/// Checks the inequality on the midpoints `t = (k + 1/2) / grid_size`.
pub fn verify_vaaler(h_max: u32, grid_size: usize) -> VaalerCheck {
    assert!(grid_size >= 100, "grid_size must be at least 100");
    let approx = vaaler_coefficients(h_max);
    let mut max_violation = f64::NEG_INFINITY;
    let mut min_majorant = f64::INFINITY;
    let mut max_majorant = f64::NEG_INFINITY;
    for k in 0..grid_size {
        let t = (k as f64 + 0.5) / grid_size as f64;
        let maj = approx.majorant(t);
        let v = (sawtooth(t) - approx.approximant(t)).abs() - maj;
        max_violation = max_violation.max(v);
        min_majorant = min_majorant.min(maj);
        max_majorant = max_majorant.max(maj);
    }
    VaalerCheck {
        h: h_max,
        grid_size,
        max_violation,
        min_majorant,
        max_majorant,
        pass: max_violation <= VAALER_TOLERANCE,
    }
}
