//! Symbolic bound terms for the trilinear sum and their substitution into
//! powers of `x`.
//!
//! A [`MonomialTerm`] is `X^a H^b M^c N^d` with exact exponents. Substituting
//! sizes `X = x^{..}`, `H = x^{..}`, ... given as affine forms in `(gamma, mu)`
//! yields the exponent of `x` as an [`AffineExponent`].

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::ExponentPair;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialTerm {
    pub label: String,
    #[serde(rename = "e_X")]
    pub e_x: Rational,
    #[serde(rename = "e_H")]
    pub e_h: Rational,
    #[serde(rename = "e_M")]
    pub e_m: Rational,
    #[serde(rename = "e_N")]
    pub e_n: Rational,
}

impl MonomialTerm {
    pub fn new(label: impl Into<String>, e_x: Rational, e_h: Rational, e_m: Rational, e_n: Rational) -> Self {
        MonomialTerm {
            label: label.into(),
            e_x,
            e_h,
            e_m,
            e_n,
        }
    }

    fn simple(label: &str, e: [(i64, i64); 4]) -> Self {
        let [x, h, m, n] = e.map(|(p, q)| Rational::ratio(p, q));
        MonomialTerm::new(label, x, h, m, n)
    }

    pub fn exponents(&self) -> [&Rational; 4] {
        [&self.e_x, &self.e_h, &self.e_m, &self.e_n]
    }

    /// Exponent-wise sum, i.e. the monomial `self * other`.
    pub fn product(&self, other: &MonomialTerm) -> MonomialTerm {
        MonomialTerm::new(
            format!("{}*{}", self.label, other.label),
            &self.e_x + &other.e_x,
            &self.e_h + &other.e_h,
            &self.e_m + &other.e_m,
            &self.e_n + &other.e_n,
        )
    }

    /// Numerical value `X^a H^b M^c N^d` for positive sizes.
    pub fn evaluate(&self, x: f64, h: f64, m: f64, n: f64) -> f64 {
        let log = self.e_x.to_f64() * x.ln()
            + self.e_h.to_f64() * h.ln()
            + self.e_m.to_f64() * m.ln()
            + self.e_n.to_f64() * n.ln();
        log.exp()
    }
}

/// `const_part + gamma_coeff * gamma + mu_coeff * mu`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct AffineExponent {
    #[serde(rename = "const")]
    pub const_part: Rational,
    pub gamma_coeff: Rational,
    pub mu_coeff: Rational,
}

impl AffineExponent {
    pub fn new(const_part: Rational, gamma_coeff: Rational, mu_coeff: Rational) -> Self {
        AffineExponent {
            const_part,
            gamma_coeff,
            mu_coeff,
        }
    }

    pub fn ratios(c: (i64, i64), g: (i64, i64), m: (i64, i64)) -> Self {
        AffineExponent::new(
            Rational::ratio(c.0, c.1),
            Rational::ratio(g.0, g.1),
            Rational::ratio(m.0, m.1),
        )
    }

    pub fn constant(c: Rational) -> Self {
        AffineExponent::new(c, Rational::zero(), Rational::zero())
    }

    pub fn eval(&self, gamma: &Rational, mu: &Rational) -> Rational {
        &self.const_part + &self.gamma_coeff * gamma + &self.mu_coeff * mu
    }

    pub fn scale(&self, k: &Rational) -> AffineExponent {
        AffineExponent::new(&self.const_part * k, &self.gamma_coeff * k, &self.mu_coeff * k)
    }
}

impl std::ops::Add for AffineExponent {
    type Output = AffineExponent;
    fn add(self, rhs: AffineExponent) -> AffineExponent {
        AffineExponent::new(
            self.const_part + rhs.const_part,
            self.gamma_coeff + rhs.gamma_coeff,
            self.mu_coeff + rhs.mu_coeff,
        )
    }
}

/// Sizes of `X, H, M, N` as powers of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionMap {
    pub x: AffineExponent,
    pub h: AffineExponent,
    pub m: AffineExponent,
    pub n: AffineExponent,
}

impl SubstitutionMap {
    /// The type I' specialisation: the roles of `H` and `M` swap, so
    /// `X = x`, `H = M_0 = x^mu`, `M = H_0 = x^{1 - gamma}`, `N = x^{1 - mu}`.
    pub fn type_one_prime() -> Self {
        SubstitutionMap {
            x: AffineExponent::ratios((1, 1), (0, 1), (0, 1)),
            h: AffineExponent::ratios((0, 1), (0, 1), (1, 1)),
            m: AffineExponent::ratios((1, 1), (-1, 1), (0, 1)),
            n: AffineExponent::ratios((1, 1), (0, 1), (-1, 1)),
        }
    }

    /// Every variable mapped to `x^0`.
    pub fn zero() -> Self {
        SubstitutionMap {
            x: AffineExponent::default(),
            h: AffineExponent::default(),
            m: AffineExponent::default(),
            n: AffineExponent::default(),
        }
    }
}

pub fn substitute(term: &MonomialTerm, map: &SubstitutionMap) -> AffineExponent {
    map.x.scale(&term.e_x) + map.h.scale(&term.e_h) + map.m.scale(&term.e_m) + map.n.scale(&term.e_n)
}

/// The twelve summands `T1..T12` of the trilinear-sum bound, in display order.
pub fn twelve_term_bound(pair: &ExponentPair) -> Result<Vec<MonomialTerm>> {
    pair.ensure_valid()?;
    let k = &pair.kappa;
    let l = &pair.lambda;
    let r = Rational::integer;
    let q = Rational::ratio;

    let s = r(2) + k + l; // 2 + kappa + lambda
    let t = r(1) + k + l; // 1 + kappa + lambda
    let two_s = &s * r(2);
    let four_s = &s * r(4);
    let two_t = &t * r(2);
    let four_t = &t * r(4);

    let t1 = MonomialTerm::new(
        "T1",
        (r(1) + k * r(2)) / &two_s,
        (k + l + r(1)) / &s,
        (k + l + r(4)) / &two_s,
        (r(2) - k + l * r(3)) / &two_s,
    );
    let t2 = MonomialTerm::new(
        "T2",
        (k * r(3) + l + r(1)) / &four_t,
        q(1, 2),
        r(1),
        (r(1) + l - k) / &two_t,
    );
    let t3 = MonomialTerm::new(
        "T3",
        (k - l + r(1)) / &four_t,
        q(1, 2),
        r(1),
        (k + l * r(3) + r(1)) / &two_t,
    );
    let t4 = MonomialTerm::new(
        "T4",
        (k * r(5) + l + r(2)) / &four_s,
        q(1, 2),
        (k * r(3) + l * r(3) + r(8)) / &four_s,
        (r(4) + l * r(5) - k * r(3)) / &four_s,
    );
    let t9 = MonomialTerm::new(
        "T9",
        (r(1) + k * r(2)) / r(4),
        q(1, 2),
        (r(4) - k - l) / r(4),
        (r(2) + l - k * r(3)) / r(4),
    );

    Ok(vec![
        t1,
        t2,
        t3,
        t4,
        MonomialTerm::simple("T5", [(1, 4), (1, 2), (13, 12), (1, 12)]),
        MonomialTerm::simple("T6", [(0, 1), (1, 1), (2, 3), (2, 3)]),
        MonomialTerm::simple("T7", [(-1, 4), (1, 2), (13, 12), (13, 12)]),
        MonomialTerm::simple("T8", [(1, 4), (1, 2), (11, 12), (5, 12)]),
        t9,
        MonomialTerm::simple("T10", [(1, 4), (1, 2), (1, 2), (1, 1)]),
        MonomialTerm::simple("T11", [(0, 1), (1, 2), (1, 1), (1, 1)]),
        MonomialTerm::simple("T12", [(-1, 2), (1, 1), (1, 1), (1, 1)]),
    ])
}

/// The three terms `L1..L3` of the `X <= MN` regime. They are absorbed by
/// `T5..T12` in the full bound and do not enter the E-term derivation.
pub fn small_x_terms() -> Vec<MonomialTerm> {
    vec![
        MonomialTerm::simple("L1", [(0, 1), (1, 1), (1, 2), (1, 2)]),
        MonomialTerm::simple("L2", [(-1, 2), (1, 1), (1, 1), (1, 1)]),
        MonomialTerm::simple("L3", [(0, 1), (1, 2), (1, 1), (1, 1)]),
    ]
}

/// Condition under which [`wu_terms`] applies.
pub const WU_RESTRICTION: &str = "X <= min{H^2, H^2 M^-1 N}";

/// Wu's seven-term bound with `K = 2^k`.
pub fn wu_terms(k: i64) -> Result<Vec<MonomialTerm>> {
    if k < 2 {
        return Err(Error::InvalidWuK(k));
    }
    let k_big = BigInt::from(k);
    let big_k = BigInt::from(1u8) << (k as usize);
    let frac = |num: BigInt, den: &BigInt| {
        Rational::from_big(num, den.clone()).expect("denominator 6K - 2k - 8 is positive for k >= 2")
    };
    let d = &big_k * 6 - &k_big * 2 - 8;
    let w1 = MonomialTerm::new(
        "W1",
        frac(big_k.clone(), &d),
        frac(&big_k * 4 - &k_big * 2 - 4, &d),
        frac(&big_k * 5 - &k_big - 8, &d),
        frac(&big_k * 5 - &k_big * 3 - 8, &d),
    );
    Ok(vec![
        w1,
        MonomialTerm::simple("W2", [(1, 4), (1, 2), (1, 2), (1, 1)]),
        MonomialTerm::simple("W3", [(1, 4), (1, 2), (1, 1), (1, 2)]),
        MonomialTerm::simple("W4", [(0, 1), (1, 1), (1, 1), (0, 1)]),
        MonomialTerm::simple("W5", [(0, 1), (1, 1), (1, 2), (1, 2)]),
        MonomialTerm::simple("W6", [(0, 1), (1, 2), (1, 1), (1, 1)]),
        MonomialTerm::simple("W7", [(-1, 2), (1, 1), (1, 1), (1, 1)]),
    ])
}

/// A substituted bound term `E_i`, the image of `T_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ETerm {
    pub label: String,
    pub source: String,
    #[serde(flatten)]
    pub exponent: AffineExponent,
    /// Another term is at least as large at every point of the analysis
    /// region, so this term's constraint is implied by that one's.
    pub dominated: bool,
}

/// Corners of the `(gamma, mu)` region where the type I' analysis lives:
/// `6/7 <= gamma <= 13/15` and `2/3 <= mu <= 5 - 5 gamma`.
pub fn analysis_region_vertices() -> [(Rational, Rational); 3] {
    [
        (Rational::ratio(6, 7), Rational::ratio(2, 3)),
        (Rational::ratio(6, 7), Rational::ratio(5, 7)),
        (Rational::ratio(13, 15), Rational::ratio(2, 3)),
    ]
}

/// `a` is dominated by `b` when `b >= a` at every vertex of the region
/// (hence everywhere in it, both being affine). Exact ties go to the later
/// term being dominated.
fn dominated_by(a: &AffineExponent, a_idx: usize, b: &AffineExponent, b_idx: usize) -> bool {
    let vertices = analysis_region_vertices();
    let mut all_ge = true;
    let mut some_gt = false;
    for (g, m) in &vertices {
        let va = a.eval(g, m);
        let vb = b.eval(g, m);
        if vb < va {
            all_ge = false;
            break;
        }
        if vb > va {
            some_gt = true;
        }
    }
    all_ge && (some_gt || b_idx < a_idx)
}

/// Substitutes all twelve terms under [`SubstitutionMap::type_one_prime`]
/// and flags the dominated ones.
pub fn derive_e_terms(pair: &ExponentPair) -> Result<Vec<ETerm>> {
    let map = SubstitutionMap::type_one_prime();
    let exps: Vec<(String, AffineExponent)> = twelve_term_bound(pair)?
        .into_iter()
        .map(|t| {
            let e = substitute(&t, &map);
            (t.label, e)
        })
        .collect();
    let out = exps
        .iter()
        .enumerate()
        .map(|(i, (source, e))| {
            let dominated = exps
                .iter()
                .enumerate()
                .any(|(j, (_, other))| j != i && dominated_by(e, i, other, j));
            ETerm {
                label: format!("E{}", i + 1),
                source: source.clone(),
                exponent: e.clone(),
                dominated,
            }
        })
        .collect();
    Ok(out)
}
