//! Exact exponent-pair calculus, symbolic bounds for trilinear exponential
//! sums, the admissible range for primes of the form `floor(n^c)`, and a
//! numerical bench for the analytic inequalities underneath.

pub mod admissibility;
pub mod bounds;
pub mod error;
pub mod exponent;
pub mod expsum;
pub mod primes;
pub mod rational;

pub use error::{Error, Result};
pub use exponent::{ExponentPair, ProcessWord};
pub use rational::Rational;
