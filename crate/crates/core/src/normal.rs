//! Exact standard normal samplers.
//!
//! Both samplers propose `k` from the discrete Gaussian with `sigma = 1` and a
//! fresh uniform `x`, then accept with probability `exp(-x(2k + x)/2)`, so
//! that the accepted `k + x` has density proportional to
//! `exp(-k^2/2) exp(-x(2k + x)/2) = exp(-(k + x)^2/2)`. A random sign
//! completes the sample. They differ in how the acceptance coin is built.

use std::fmt;

use crate::bernoulli::{exp_neg_quadratic_karney, exp_neg_quadratic_split};
use crate::deviate::UniformDeviate;
use crate::discrete::{self, DiscreteVariant, SigmaParam};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::source::{BitGenerator, RandomSource, Scope};

/// `sign * (k + frac)`, exact: `frac` keeps only the digits drawn so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSample {
    sign: i8,
    k: u64,
    frac: UniformDeviate,
}

impl ExactSample {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn frac(&self) -> &UniformDeviate {
        &self.frac
    }

    /// Truncates to `precision` fractional bits, drawing digits as needed.
    /// Later calls with larger precision extend the same expansion.
    pub fn finalize<G: BitGenerator>(
        &mut self,
        precision: u32,
        src: &mut RandomSource<G>,
    ) -> Result<Dyadic> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        self.frac.ensure_bits(precision as u64, src);
        Ok(Dyadic::from_words(self.sign, self.k, self.frac.words(), precision))
    }
}

/// Which normal sampler to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalAlgorithm {
    /// Karney's sampler: the kernel coin applied up to `k + 1` times.
    Karney,
    /// Acceptance split into `e^-(kx)` and `e^-(x^2/2)`, with `k` drawn by
    /// the given discrete sampler.
    Improved(DiscreteVariant),
}

impl NormalAlgorithm {
    pub const ALL: [NormalAlgorithm; 3] = [
        Self::Karney,
        Self::Improved(DiscreteVariant::Karney),
        Self::Improved(DiscreteVariant::Improved),
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::Karney => "karney",
            Self::Improved(DiscreteVariant::Karney) => "improved-a",
            Self::Improved(DiscreteVariant::Improved) => "improved-b",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.id() == id)
    }
}

impl fmt::Display for NormalAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A normal sample with the work spent on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSampleStats {
    pub sample: ExactSample,
    /// Proposals of `k` started, counting restarts inside the discrete sampler.
    pub attempts: u64,
    /// Pairs `(k, x)` that reached the acceptance step.
    pub trials: u64,
    /// Discrete-Gaussian coins spent selecting `k` over all trials.
    pub k_bern_draws: u64,
    /// Deviates created while accepting or rejecting `x`; excludes `x` itself.
    pub deviates_step4: u64,
    pub deviates_total: u64,
    pub bits_total: u64,
}

pub fn sample<G: BitGenerator>(algorithm: NormalAlgorithm, src: &mut RandomSource<G>) -> NormalSampleStats {
    match algorithm {
        NormalAlgorithm::Karney => sample_karney(src),
        NormalAlgorithm::Improved(variant) => sample_improved(variant, src),
    }
}

pub fn sample_karney<G: BitGenerator>(src: &mut RandomSource<G>) -> NormalSampleStats {
    rejection_loop(DiscreteVariant::Karney, src, |k, x, src| {
        exp_neg_quadratic_karney(k, x, src).value
    })
}

pub fn sample_improved<G: BitGenerator>(
    variant: DiscreteVariant,
    src: &mut RandomSource<G>,
) -> NormalSampleStats {
    rejection_loop(variant, src, |k, x, src| exp_neg_quadratic_split(k, x, src).value)
}

#[inline]
fn rejection_loop<G, F>(variant: DiscreteVariant, src: &mut RandomSource<G>, mut accept: F) -> NormalSampleStats
where
    G: BitGenerator,
    F: FnMut(u64, &mut UniformDeviate, &mut RandomSource<G>) -> bool,
{
    let p = SigmaParam::standard();
    let before = src.counters();
    let accept_before = src.scoped_counters(Scope::Acceptance);
    let mut attempts = 0;
    let mut trials = 0;
    let mut k_bern_draws = 0;
    loop {
        let d = src.scoped(Scope::KSelection, |s| discrete::sample(variant, &p, s));
        attempts += d.attempts;
        k_bern_draws += d.bern_draws;
        trials += 1;
        let mut x = src.scoped(Scope::Fraction, UniformDeviate::fresh);
        if !src.scoped(Scope::Acceptance, |s| accept(d.value, &mut x, s)) {
            continue;
        }
        let sign = src.scoped(Scope::Sign, |s| s.random_sign());
        let spent = src.counters() - before;
        return NormalSampleStats {
            sample: ExactSample { sign, k: d.value, frac: x },
            attempts,
            trials,
            k_bern_draws,
            deviates_step4: (src.scoped_counters(Scope::Acceptance) - accept_before).deviates,
            deviates_total: spent.deviates,
            bits_total: spent.bits,
        };
    }
}
