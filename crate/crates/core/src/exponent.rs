//! Exponent pairs and the van der Corput A/B processes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A pair `(kappa, lambda)` of exact rationals.
///
/// Construction does not enforce the exponent-pair region so that invalid
/// candidates can be represented and reported; use [`ExponentPair::validated`]
/// or [`ExponentPair::is_valid`] where the region matters.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentPair {
    pub kappa: Rational,
    pub lambda: Rational,
}

impl ExponentPair {
    pub fn new(kappa: Rational, lambda: Rational) -> Self {
        ExponentPair { kappa, lambda }
    }

    pub fn validated(kappa: Rational, lambda: Rational) -> Result<Self> {
        let pair = ExponentPair { kappa, lambda };
        pair.ensure_valid()?;
        Ok(pair)
    }

    /// The trivial pair `(0, 1)`.
    pub fn trivial() -> Self {
        ExponentPair::new(Rational::zero(), Rational::one())
    }

    /// `0 <= kappa <= 1/2 <= lambda <= 1`.
    pub fn is_valid(&self) -> bool {
        let half = Rational::half();
        !self.kappa.is_negative()
            && self.kappa <= half
            && half <= self.lambda
            && self.lambda <= Rational::one()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPair {
                kappa: self.kappa.to_string(),
                lambda: self.lambda.to_string(),
            })
        }
    }

    /// A-process: `(k, l) -> (k / (2k + 2), (k + l + 1) / (2k + 2))`.
    pub fn apply_a(&self) -> Result<Self> {
        self.ensure_valid()?;
        let denom = &self.kappa * Rational::integer(2) + Rational::integer(2);
        let kappa = &self.kappa / &denom;
        let lambda = (&self.kappa + &self.lambda + Rational::one()) / &denom;
        Ok(ExponentPair::new(kappa, lambda))
    }

    /// B-process: `(k, l) -> (l - 1/2, k + 1/2)`.
    pub fn apply_b(&self) -> Result<Self> {
        self.ensure_valid()?;
        let image = ExponentPair::new(
            &self.lambda - Rational::half(),
            &self.kappa + Rational::half(),
        );
        if !image.is_valid() {
            return Err(Error::InvalidBImage {
                from_kappa: self.kappa.to_string(),
                from_lambda: self.lambda.to_string(),
                to_kappa: image.kappa.to_string(),
                to_lambda: image.lambda.to_string(),
            });
        }
        Ok(image)
    }

    pub fn apply(&self, process: Process) -> Result<Self> {
        match process {
            Process::A => self.apply_a(),
            Process::B => self.apply_b(),
        }
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kappa, self.lambda)
    }
}

impl fmt::Debug for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    A,
    B,
}

/// A word over `{A, B}`, applied left to right starting from `(0, 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProcessWord(Vec<Process>);

impl ProcessWord {
    pub fn parse(word: &str) -> Result<Self> {
        word.chars()
            .map(|ch| match ch {
                'A' => Ok(Process::A),
                'B' => Ok(Process::B),
                _ => Err(Error::MalformedWord(word.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(ProcessWord)
    }

    pub fn from_processes(processes: Vec<Process>) -> Self {
        ProcessWord(processes)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn processes(&self) -> &[Process] {
        &self.0
    }

    pub fn apply_to(&self, start: &ExponentPair) -> Result<ExponentPair> {
        self.0
            .iter()
            .try_fold(start.clone(), |pair, &process| pair.apply(process))
    }

    pub fn evaluate(&self) -> Result<ExponentPair> {
        self.apply_to(&ExponentPair::trivial())
    }

    /// All words of length `0..=max_len`, shorter first, then lexicographic.
    pub fn enumerate(max_len: usize) -> Vec<ProcessWord> {
        let mut out = vec![ProcessWord::default()];
        let mut layer = vec![ProcessWord::default()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for word in &layer {
                for process in [Process::A, Process::B] {
                    let mut w = word.0.clone();
                    w.push(process);
                    next.push(ProcessWord(w));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for ProcessWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            f.write_str(match p {
                Process::A => "A",
                Process::B => "B",
            })?;
        }
        Ok(())
    }
}

/// Evaluates a process word given as text, e.g. `"BA"`.
pub fn apply_word(word: &str) -> Result<ExponentPair> {
    ProcessWord::parse(word)?.evaluate()
}

/// An exponent pair taken as trusted input together with where it came from.
#[derive(Clone, Debug, Serialize)]
pub struct NamedPair {
    pub name: &'static str,
    pub provenance: &'static str,
    pub pair: ExponentPair,
}

/// The pair `(10769/351096, 609317/702192)` behind the `c < 10318869/8886224`
/// range. It lies outside the A/B hull of `(0, 1)` and is stored, not derived.
pub fn reference_pair() -> NamedPair {
    NamedPair {
        name: "reference",
        provenance: "published exponent pair, taken as trusted input; not reachable by A/B words",
        pair: ExponentPair::new(
            Rational::ratio(10769, 351096),
            Rational::ratio(609317, 702192),
        ),
    }
}
