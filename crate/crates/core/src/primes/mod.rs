//! Primes in the sequence `floor(n^c)` for rational `c = p/q > 1`.

mod counting;
mod membership;
mod primality;
mod psi_sum;
mod roots;
pub mod sieve;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use counting::{pi_c, pi_c_with, CountOptions, PrimeCountReport, DEFAULT_COUNT_BUDGET, DEFAULT_SEGMENT_WIDTH};
pub use membership::membership;
pub use primality::is_prime;
pub use psi_sum::{psi_difference_sum, psi_difference_sum_with, psi_of_negative_power, PsiSumReport, DEFAULT_PSI_BUDGET};
pub use roots::{ceil_pow, floor_pow, floor_pow_u64};

/// `c = p/q` in lowest terms with `p > q >= 1`; `gamma = 1/c = q/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    p: u32,
    q: u32,
}

impl RationalExponent {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 || p <= q {
            return Err(Error::InvalidArgument(format!(
                "exponent c = {p}/{q} must satisfy p > q >= 1"
            )));
        }
        let g = p.gcd(&q);
        Ok(RationalExponent { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn as_f64(&self) -> f64 {
        f64::from(self.p) / f64::from(self.q)
    }

    pub fn gamma_f64(&self) -> f64 {
        f64::from(self.q) / f64::from(self.p)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::ratio(i64::from(self.p), i64::from(self.q))
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r: Rational = s.parse()?;
        let p = u32::try_from(r.numer()).map_err(|_| Error::InvalidArgument(format!("exponent {s} out of range")))?;
        let q = u32::try_from(r.denom()).map_err(|_| Error::InvalidArgument(format!("exponent {s} out of range")))?;
        RationalExponent::new(p, q)
    }
}

impl Serialize for RationalExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
