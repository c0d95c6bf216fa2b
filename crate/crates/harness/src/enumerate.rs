//! Exhaustive enumeration of a sampler's behaviour over every bit string up
//! to a fixed depth.
//!
//! Each fixture runs on a generator that replays a given prefix one bit per
//! digit and unwinds when asked for a bit beyond it. A run that finishes on a
//! prefix of length `l` accounts for mass `2^-l` of its outcome; prefixes that
//! reach the depth limit unfinished are undecided. The bounds are exact
//! dyadic rationals with denominator `2^depth`.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::str::FromStr;

use exact_gauss::bernoulli::exp_neg_rational;
use exact_gauss::{selector_c, BitGenerator, DigitSize, RandomSource, Rational};
use serde::Serialize;

use crate::error::{HarnessError, Result};

pub const MAX_DEPTH: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// `B(e^-1/2)` with a rational threshold.
    BernExpHalf,
    /// The selector `C(4)`.
    SelectorC4,
}

impl Fixture {
    pub const ALL: [Fixture; 2] = [Fixture::BernExpHalf, Fixture::SelectorC4];

    pub fn id(self) -> &'static str {
        match self {
            Fixture::BernExpHalf => "bern_exp_half",
            Fixture::SelectorC4 => "selector_c4",
        }
    }

    /// Outcome labels with their exact probabilities.
    pub fn targets(self) -> Vec<(&'static str, f64)> {
        match self {
            Fixture::BernExpHalf => vec![("true", (-0.5f64).exp()), ("false", 1.0 - (-0.5f64).exp())],
            Fixture::SelectorC4 => vec![("-1", 0.25), ("0", 0.25), ("+1", 0.5)],
        }
    }

    fn run(self, src: &mut RandomSource<Script>) -> &'static str {
        match self {
            Fixture::BernExpHalf => {
                let half = Rational::new(1, 2).expect("valid");
                if exp_neg_rational(half, src).expect("1/2 is a probability").value {
                    "true"
                } else {
                    "false"
                }
            }
            Fixture::SelectorC4 => match selector_c(4, src).expect("valid selector").value() {
                -1 => "-1",
                0 => "0",
                _ => "+1",
            },
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Fixture {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| HarnessError::InvalidArgument(format!("unknown fixture `{s}`")))
    }
}

/// Exact bounds on the probability of one outcome.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationResult {
    pub outcome: String,
    pub depth: u32,
    /// `p_true_low = low_num / 2^depth`.
    pub low_num: u64,
    /// `p_true_high = high_num / 2^depth`.
    pub high_num: u64,
    pub target: f64,
}

impl EnumerationResult {
    pub fn p_low(&self) -> f64 {
        self.low_num as f64 / (1u64 << self.depth) as f64
    }

    pub fn p_high(&self) -> f64 {
        self.high_num as f64 / (1u64 << self.depth) as f64
    }

    pub fn brackets(&self) -> bool {
        self.p_low() <= self.target && self.target <= self.p_high()
    }
}

/// Decided mass per outcome and undecided mass, in units of `2^-depth`.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub fixture: Fixture,
    pub depth: u32,
    pub decided: BTreeMap<&'static str, u64>,
    pub undecided: u64,
    /// Prefixes executed.
    pub runs: u64,
}

impl Enumeration {
    pub fn undecided_mass(&self) -> f64 {
        self.undecided as f64 / (1u64 << self.depth) as f64
    }

    pub fn results(&self) -> Vec<EnumerationResult> {
        self.fixture
            .targets()
            .into_iter()
            .map(|(label, target)| {
                let low = self.decided.get(label).copied().unwrap_or(0);
                EnumerationResult {
                    outcome: label.to_string(),
                    depth: self.depth,
                    low_num: low,
                    high_num: low + self.undecided,
                    target,
                }
            })
            .collect()
    }
}

struct Exhausted;

struct Script {
    bits: Vec<bool>,
    pos: usize,
}

impl BitGenerator for Script {
    fn next_bits(&mut self, count: u32) -> u64 {
        let mut v = 0;
        for _ in 0..count {
            let Some(&b) = self.bits.get(self.pos) else {
                resume_unwind(Box::new(Exhausted));
            };
            self.pos += 1;
            v = v << 1 | b as u64;
        }
        v
    }
}

enum Step {
    Done(&'static str),
    NeedsMore,
}

fn replay(fixture: Fixture, prefix: &[bool]) -> Step {
    let script = Script { bits: prefix.to_vec(), pos: 0 };
    let mut src = RandomSource::with_generator(script, 0, DigitSize::One);
    match catch_unwind(AssertUnwindSafe(|| fixture.run(&mut src))) {
        Ok(label) => Step::Done(label),
        Err(payload) if payload.is::<Exhausted>() => Step::NeedsMore,
        Err(payload) => resume_unwind(payload),
    }
}

pub fn enumerate(fixture: Fixture, depth: u32) -> Result<Enumeration> {
    if depth > MAX_DEPTH {
        return Err(HarnessError::DepthTooLarge(depth));
    }
    let mut out = Enumeration { fixture, depth, decided: BTreeMap::new(), undecided: 0, runs: 0 };
    let mut stack = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        out.runs += 1;
        let mass = 1u64 << (depth - prefix.len() as u32);
        match replay(fixture, &prefix) {
            Step::Done(label) => *out.decided.entry(label).or_default() += mass,
            Step::NeedsMore if prefix.len() as u32 == depth => out.undecided += mass,
            Step::NeedsMore => {
                for b in [true, false] {
                    let mut next = prefix.clone();
                    next.push(b);
                    stack.push(next);
                }
            }
        }
    }
    Ok(out)
}
