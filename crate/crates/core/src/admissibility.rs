//! Linear constraints on `gamma = 1/c` and the admissible range they cut out.
//!
//! Every E-term `x^{a + b gamma} M^{m}` with `M = x^mu` must stay below `x`
//! for every `mu` in the window `[mu_low(gamma), mu_high(gamma)]`. The worst
//! `mu` is an endpoint fixed by the sign of `m`, which leaves one linear
//! inequality in `gamma` per term.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{derive_e_terms, AffineExponent, ETerm};
use crate::error::{Error, Result};
use crate::exponent::{ExponentPair, ProcessWord};
use crate::rational::Rational;

/// `constant + slope * gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaAffine {
    pub constant: Rational,
    pub slope: Rational,
}

impl GammaAffine {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        GammaAffine { constant, slope }
    }

    pub fn ratios(constant: (i64, i64), slope: (i64, i64)) -> Self {
        GammaAffine::new(Rational::ratio(constant.0, constant.1), Rational::ratio(slope.0, slope.1))
    }

    pub fn eval(&self, gamma: &Rational) -> Rational {
        &self.constant + &self.slope * gamma
    }
}

impl fmt::Display for GammaAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*gamma", self.constant, self.slope)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `gamma > threshold`
    Greater,
    /// `gamma < threshold`
    Less,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaConstraint {
    pub threshold: Rational,
    pub direction: Direction,
    pub source_label: String,
}

impl GammaConstraint {
    pub fn holds_at(&self, gamma: &Rational) -> bool {
        match self.direction {
            Direction::Greater => gamma > &self.threshold,
            Direction::Less => gamma < &self.threshold,
        }
    }
}

impl fmt::Display for GammaConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.direction {
            Direction::Greater => ">",
            Direction::Less => "<",
        };
        write!(f, "{}: gamma {} {}", self.source_label, op, self.threshold)
    }
}

/// Result of solving one linear inequality in `gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintOutcome {
    Bound(GammaConstraint),
    AlwaysSatisfied { source_label: String },
    NeverSatisfiable { source_label: String },
}

/// Solves `lhs(gamma) < rhs(gamma)` for `gamma`.
pub fn solve_linear(lhs: &GammaAffine, rhs: &GammaAffine, label: &str) -> ConstraintOutcome {
    // (lhs - rhs).constant + (lhs - rhs).slope * gamma < 0
    let constant = &lhs.constant - &rhs.constant;
    let slope = &lhs.slope - &rhs.slope;
    if slope.is_zero() {
        return if constant.is_negative() {
            ConstraintOutcome::AlwaysSatisfied { source_label: label.to_string() }
        } else {
            ConstraintOutcome::NeverSatisfiable { source_label: label.to_string() }
        };
    }
    let threshold = -(&constant) / &slope;
    let direction = if slope.is_negative() { Direction::Greater } else { Direction::Less };
    ConstraintOutcome::Bound(GammaConstraint {
        threshold,
        direction,
        source_label: label.to_string(),
    })
}

/// Range of `mu = log M / log x` over which a term must be controlled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuWindow {
    pub low: GammaAffine,
    pub high: GammaAffine,
}

impl MuWindow {
    /// `x^{2/3} << M << x^{5 - 5 gamma}`.
    pub fn type_one_prime() -> Self {
        MuWindow {
            low: GammaAffine::ratios((2, 3), (0, 1)),
            high: GammaAffine::ratios((5, 1), (-5, 1)),
        }
    }
}

/// Turns an E-term into a constraint on `gamma`, requiring its exponent to
/// be at most 1 across the whole window.
pub fn threshold_from_e(term: &AffineExponent, window: &MuWindow, label: &str) -> ConstraintOutcome {
    let m = &term.mu_coeff;
    let worst_mu = if m.is_positive() {
        Some(&window.high)
    } else if m.is_negative() {
        Some(&window.low)
    } else {
        None
    };
    let lhs = match worst_mu {
        Some(mu) => GammaAffine::new(&term.const_part + m * &mu.constant, &term.gamma_coeff + m * &mu.slope),
        None => GammaAffine::new(term.const_part.clone(), term.gamma_coeff.clone()),
    };
    // Boundaries are treated as strict: the epsilon losses push every
    // closed inequality to an open one.
    solve_linear(&lhs, &GammaAffine::ratios((1, 1), (0, 1)), label)
}

/// Direction of a condition on `mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MuSide {
    /// `M << x^{bound}`
    Upper,
    /// `M >> x^{bound}`
    Lower,
}

/// The condition on `M` that keeps a term below `x`, before comparing with
/// the window. `None` when the term does not involve `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuCondition {
    pub source_label: String,
    pub side: MuSide,
    pub bound: GammaAffine,
}

pub fn mu_condition(term: &AffineExponent, label: &str) -> Option<MuCondition> {
    let m = &term.mu_coeff;
    if m.is_zero() {
        return None;
    }
    // const + g*gamma + m*mu <= 1  <=>  m*mu <= 1 - const - g*gamma
    let bound = GammaAffine::new(
        (Rational::one() - &term.const_part) / m,
        -(&term.gamma_coeff) / m,
    );
    let side = if m.is_positive() { MuSide::Upper } else { MuSide::Lower };
    Some(MuCondition { source_label: label.to_string(), side, bound })
}

/// Type II range: `2(1 - gamma) < 5 gamma - 4`.
pub fn type2_constraint() -> GammaConstraint {
    let lhs = GammaAffine::ratios((2, 1), (-2, 1));
    let rhs = GammaAffine::ratios((-4, 1), (5, 1));
    expect_bound(solve_linear(&lhs, &rhs, "typeII"))
}

/// Type I range: `1 - gamma/2 < 3 gamma - 2`.
pub fn type1_constraint() -> GammaConstraint {
    let lhs = GammaAffine::ratios((1, 1), (-1, 2));
    let rhs = GammaAffine::ratios((-2, 1), (3, 1));
    expect_bound(solve_linear(&lhs, &rhs, "typeI"))
}

/// The type I range comes from `x^{3/2 - 3 gamma / 4} M^{1/4} <= x`, i.e.
/// `M <= x^{3 gamma - 2}`.
pub fn type1_m_ceiling() -> MuCondition {
    let term = AffineExponent::ratios((3, 2), (-3, 4), (1, 4));
    mu_condition(&term, "typeI").expect("term involves M")
}

fn expect_bound(outcome: ConstraintOutcome) -> GammaConstraint {
    match outcome {
        ConstraintOutcome::Bound(c) => c,
        other => unreachable!("fixed constraint degenerated: {other:?}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeReport {
    pub pair: ExponentPair,
    pub gamma_min: Rational,
    pub c_max: Rational,
    pub binding_source: String,
    pub all_constraints: Vec<GammaConstraint>,
    /// Labels of terms whose inequality holds for every `gamma`.
    pub always_satisfied: Vec<String>,
}

impl RangeReport {
    /// Recomputes `gamma_min` from a subset of the constraints.
    pub fn gamma_min_without(&self, skip_label: &str) -> Option<Rational> {
        self.all_constraints
            .iter()
            .filter(|c| c.direction == Direction::Greater && c.source_label != skip_label)
            .map(|c| c.threshold.clone())
            .max()
    }
}

/// Constraints from every E-term under the standard window, in label order.
pub fn e_term_outcomes(terms: &[ETerm]) -> Vec<ConstraintOutcome> {
    let window = MuWindow::type_one_prime();
    terms
        .iter()
        .map(|t| threshold_from_e(&t.exponent, &window, &t.label))
        .collect()
}

/// Full admissible range for one exponent pair.
pub fn combine(pair: &ExponentPair) -> Result<RangeReport> {
    let terms = derive_e_terms(pair)?;
    let mut constraints = Vec::new();
    let mut always = Vec::new();
    for outcome in e_term_outcomes(&terms) {
        match outcome {
            ConstraintOutcome::Bound(c) => constraints.push(c),
            ConstraintOutcome::AlwaysSatisfied { source_label } => always.push(source_label),
            ConstraintOutcome::NeverSatisfiable { source_label } => {
                return Err(Error::Unsatisfiable { label: source_label })
            }
        }
    }
    constraints.push(type2_constraint());
    constraints.push(type1_constraint());

    let lower = constraints
        .iter()
        .filter(|c| c.direction == Direction::Greater)
        .fold(None::<&GammaConstraint>, |best, c| match best {
            Some(b) if b.threshold >= c.threshold => Some(b),
            _ => Some(c),
        })
        .ok_or_else(|| Error::Internal("no lower constraint on gamma".into()))?;
    let gamma_min = lower.threshold.clone();
    let binding_source = lower.source_label.clone();

    if let Some(upper) = constraints
        .iter()
        .filter(|c| c.direction == Direction::Less)
        .min_by(|a, b| a.threshold.cmp(&b.threshold))
    {
        if upper.threshold <= gamma_min {
            return Err(Error::EmptyRange {
                gamma_min: gamma_min.to_string(),
                lower: binding_source,
                gamma_max: upper.threshold.to_string(),
                upper: upper.source_label.clone(),
            });
        }
    }

    let c_max = gamma_min
        .recip()
        .ok_or_else(|| Error::Internal("gamma_min is zero".into()))?;
    Ok(RangeReport {
        pair: pair.clone(),
        gamma_min,
        c_max,
        binding_source,
        all_constraints: constraints,
        always_satisfied: always,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub word: String,
    pub pair: ExponentPair,
    pub report: RangeReport,
    pub candidates: usize,
}

/// Exhaustive search over A/B words up to `max_len` for the smallest
/// `gamma_min`. Ties go to the shorter, then lexicographically smaller word.
pub fn search_pairs(max_len: usize) -> Result<SearchResult> {
    let words = ProcessWord::enumerate(max_len);
    let evaluated: Vec<Option<(ProcessWord, ExponentPair, RangeReport)>> = words
        .par_iter()
        .map(|w| {
            let pair = w.evaluate().ok()?;
            let report = combine(&pair).ok()?;
            Some((w.clone(), pair, report))
        })
        .collect();
    let candidates = evaluated.len();
    // Enumeration order is (length, lexicographic), so keeping the first
    // strict improvement implements the tie-break.
    let mut best: Option<(ProcessWord, ExponentPair, RangeReport)> = None;
    for item in evaluated.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some((_, _, b)) => item.2.gamma_min < b.gamma_min,
        };
        if better {
            best = Some(item);
        }
    }
    let (word, pair, report) =
        best.ok_or_else(|| Error::Internal("no admissible word found".into()))?;
    Ok(SearchResult { word: word.to_string(), pair, report, candidates })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HistoricalKind {
    /// Range where the asymptotic formula for the prime count holds.
    Asymptotic,
    /// Range where only the lower bound of the right order is known.
    LowerBound,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistoricalEntry {
    pub authors: String,
    pub kind: HistoricalKind,
    pub c_max: Rational,
    pub decimal: String,
}

const ASYMPTOTIC_RESULTS: [(&str, i64, i64); 8] = [
    ("Piatetski-Shapiro", 12, 11),
    ("Kolesnik", 10, 9),
    ("Graham; Leitmann", 69, 62),
    ("Heath-Brown", 755, 662),
    ("Kolesnik", 39, 34),
    ("Liu and Rivat", 15, 13),
    ("Rivat", 6121, 5302),
    ("Rivat and Sargos", 2817, 2426),
];

const LOWER_BOUND_RESULTS: [(&str, i64, i64); 5] = [
    ("Rivat", 7, 6),
    ("Baker, Harman and Rivat; Jia", 20, 17),
    ("Jia", 13, 11),
    ("Kumchev", 45, 38),
    ("Rivat and Wu", 243, 205),
];

fn entry(authors: &str, kind: HistoricalKind, c_max: Rational) -> HistoricalEntry {
    HistoricalEntry {
        authors: authors.to_string(),
        kind,
        decimal: c_max.decimal(4),
        c_max,
    }
}

/// Published thresholds next to the computed `c_max`, ascending.
pub fn historical_compare(report: &RangeReport) -> Vec<HistoricalEntry> {
    let mut rows: Vec<HistoricalEntry> = ASYMPTOTIC_RESULTS
        .iter()
        .map(|&(a, p, q)| entry(a, HistoricalKind::Asymptotic, Rational::ratio(p, q)))
        .chain(
            LOWER_BOUND_RESULTS
                .iter()
                .map(|&(a, p, q)| entry(a, HistoricalKind::LowerBound, Rational::ratio(p, q))),
        )
        .collect();
    rows.push(entry("computed", HistoricalKind::Computed, report.c_max.clone()));
    // Stable sort keeps published rows ahead of an equal computed value.
    rows.sort_by(|a, b| a.c_max.cmp(&b.c_max));
    rows
}
