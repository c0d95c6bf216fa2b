//! Exact samplers for the discrete Gaussian over the non-negative integers,
//! `D(k) ∝ exp(-k^2 / (2 sigma^2))`, with rational `sigma > sqrt(2)/2`.
//!
//! Both samplers only ever call one coin, `B(exp(-q))` with `q = 1/(2 sigma^2)`,
//! and report how many times they called it.

use std::fmt;

use crate::bernoulli::exp_neg;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::source::{BitGenerator, RandomSource};

/// `sigma` together with the exact coin parameter `q = 1/(2 sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaParam {
    sigma: Rational,
    q: Rational,
}

impl SigmaParam {
    /// Validates `sigma > sqrt(2)/2` exactly, as `2 num^2 > den^2`.
    pub fn new(sigma: Rational) -> Result<Self> {
        let num = sigma.numerator() as u128;
        let den = sigma.denominator() as u128;
        if num == 0 || 2 * num * num <= den * den {
            return Err(Error::SigmaTooSmall(sigma.to_string()));
        }
        let q = Rational::from_wide(den * den, 2 * num * num)?;
        Ok(Self { sigma, q })
    }

    pub fn standard() -> Self {
        Self::new(Rational::one()).expect("sigma = 1 is valid")
    }

    pub fn sigma(&self) -> Rational {
        self.sigma
    }

    /// `1 / (2 sigma^2)`, strictly inside (0, 1).
    pub fn q(&self) -> Rational {
        self.q
    }
}

impl fmt::Display for SigmaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sigma)
    }
}

/// Which sampler selects `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscreteVariant {
    /// Geometric proposal, then an acceptance run of `k(k-1)` coins.
    Karney,
    /// Acceptance interleaved with the geometric proposal.
    Improved,
}

/// A sample with the coin count spent on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscreteSampleStats {
    pub value: u64,
    /// Calls to `B(exp(-q))`, summed over all attempts.
    pub bern_draws: u64,
    /// Attempts started, including the successful one.
    pub attempts: u64,
}

pub fn sample<G: BitGenerator>(
    variant: DiscreteVariant,
    p: &SigmaParam,
    src: &mut RandomSource<G>,
) -> DiscreteSampleStats {
    match variant {
        DiscreteVariant::Karney => sample_karney(p, src),
        DiscreteVariant::Improved => sample_improved(p, src),
    }
}

/// Draws `k` with probability `exp(-qk)(1 - exp(-q))` by counting coins
/// until the first false, then accepts with probability `exp(-q k(k-1))`
/// using up to `k(k-1)` further coins, restarting on the first false.
pub fn sample_karney<G: BitGenerator>(p: &SigmaParam, src: &mut RandomSource<G>) -> DiscreteSampleStats {
    let mut coin = Coin::new(p);
    let mut attempts = 0;
    'attempt: loop {
        attempts += 1;
        let mut k = 0u64;
        while coin.flip(src) {
            k += 1;
        }
        for _ in 0..k * k.saturating_sub(1) {
            if !coin.flip(src) {
                continue 'attempt;
            }
        }
        return DiscreteSampleStats { value: k, bern_draws: coin.draws, attempts };
    }
}

/// Interleaved variant: after the first two coins, each step from `k` to
/// `k + 1` first runs the `2(k - 1)` acceptance coins that `k` adds to the
/// exponent, then one more coin decides between returning `k` and moving on.
/// Rejected proposals stop without spending the final geometric coin.
pub fn sample_improved<G: BitGenerator>(p: &SigmaParam, src: &mut RandomSource<G>) -> DiscreteSampleStats {
    let mut coin = Coin::new(p);
    let mut attempts = 0;
    'attempt: loop {
        attempts += 1;
        let done = |value, coin: &Coin| DiscreteSampleStats { value, bern_draws: coin.draws, attempts };
        if !coin.flip(src) {
            return done(0, &coin);
        }
        if !coin.flip(src) {
            return done(1, &coin);
        }
        let mut k = 2u64;
        loop {
            for _ in 0..2 * (k - 1) {
                if !coin.flip(src) {
                    continue 'attempt;
                }
            }
            if !coin.flip(src) {
                return done(k, &coin);
            }
            k += 1;
        }
    }
}

/// `D(k)` in floating point, normalized by the series truncated at the first
/// term below `tol`. Used only as a test and verification oracle.
pub fn pmf_dplus(sigma: f64, k: u64, tol: f64) -> f64 {
    let weight = |j: u64| (-((j * j) as f64) / (2.0 * sigma * sigma)).exp();
    let mut total = 0.0;
    for j in 0.. {
        let w = weight(j);
        total += w;
        if w < tol {
            break;
        }
    }
    weight(k) / total
}

struct Coin {
    q: Rational,
    draws: u64,
}

impl Coin {
    fn new(p: &SigmaParam) -> Self {
        Self { q: p.q(), draws: 0 }
    }

    #[inline]
    fn flip<G: BitGenerator>(&mut self, src: &mut RandomSource<G>) -> bool {
        self.draws += 1;
        exp_neg(&mut self.q, src).value
    }
}
