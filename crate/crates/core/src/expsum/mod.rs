//! Numerical bench for the analytic inequalities behind the bound: the
//! sawtooth approximation, Kusmin-Landau, the spacing count, and direct
//! evaluation of the trilinear sum against its bound.

pub mod kusmin_landau;
pub mod spacing;
pub mod summation;
pub mod trilinear;
pub mod vaaler;

use std::f64::consts::TAU;

use num_complex::Complex64;

pub use kusmin_landau::{default_suite, kusmin_landau_check, KlCase, KlOutcome};
pub use spacing::{spacing_bound_ratio, spacing_count, spacing_count_naive, spacing_count_sorted};
pub use summation::{CompensatedComplex, CompensatedSum};
pub use trilinear::{envelope_ratio, trilinear_sum, EnvelopeReport, TrilinearSpec};
pub use vaaler::{vaaler_coefficients, verify_vaaler, VaalerApprox, VaalerCheck};

/// `psi(t) = {t} - 1/2`, in `[-1/2, 1/2)`.
pub fn sawtooth(t: f64) -> f64 {
    let frac = t - t.floor();
    // t - floor(t) can round up to 1.0 for tiny negative t
    let frac = if frac >= 1.0 { 0.0 } else { frac };
    frac - 0.5
}

/// Distance to the nearest integer.
pub fn dist_to_int(t: f64) -> f64 {
    (t - t.round()).abs()
}

/// `e(t) = exp(2 pi i t)`, reducing `t` mod 1 before scaling by `2 pi`.
pub fn unit_phase(t: f64) -> Complex64 {
    let frac = t - t.floor();
    let angle = TAU * frac;
    Complex64::new(angle.cos(), angle.sin())
}
