//! Seeded raw-bit sources and randomness accounting.
//!
//! A [`RandomSource`] hands out digits of `digit_size` bits to lazily extended
//! deviates and single bits to signs and the two-way selector. Every draw is
//! charged to the running totals and to the currently active [`Scope`].

use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};

/// Supplier of uniformly random bits.
///
/// Each call is one generator invocation; `count` is at most 64 and the
/// returned value is right-aligned.
pub trait BitGenerator {
    fn next_bits(&mut self, count: u32) -> u64;
}

/// Adapts any 64-bit generator into a [`BitGenerator`]. Each request is served
/// from the top bits of one fresh output word.
#[derive(Debug, Clone)]
pub struct RngBits<R> {
    rng: R,
}

impl<R: Rng> RngBits<R> {
    pub fn new(rng: R) -> Self {
        Self { rng }
    }
}

impl<R: Rng> BitGenerator for RngBits<R> {
    #[inline]
    fn next_bits(&mut self, count: u32) -> u64 {
        debug_assert!((1..=64).contains(&count));
        self.rng.next_u64() >> (64 - count)
    }
}

pub type DefaultBits = RngBits<Xoshiro256PlusPlus>;

/// Number of bits generated per lazy-extension step of a deviate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DigitSize {
    One,
    Four,
    Eight,
    Sixteen,
}

impl DigitSize {
    pub const ALL: [DigitSize; 4] = [Self::One, Self::Four, Self::Eight, Self::Sixteen];

    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            1 => Ok(Self::One),
            4 => Ok(Self::Four),
            8 => Ok(Self::Eight),
            16 => Ok(Self::Sixteen),
            other => Err(Error::UnsupportedDigitSize(other)),
        }
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        match self {
            Self::One => 1,
            Self::Four => 4,
            Self::Eight => 8,
            Self::Sixteen => 16,
        }
    }
}

impl fmt::Display for DigitSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

/// Randomness consumed: deviates created, digits drawn, raw bits drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Counters {
    pub deviates: u64,
    pub digits: u64,
    pub bits: u64,
}

impl Add for Counters {
    type Output = Counters;
    fn add(self, rhs: Counters) -> Counters {
        Counters {
            deviates: self.deviates + rhs.deviates,
            digits: self.digits + rhs.digits,
            bits: self.bits + rhs.bits,
        }
    }
}

impl AddAssign for Counters {
    fn add_assign(&mut self, rhs: Counters) {
        *self = *self + rhs;
    }
}

impl Sub for Counters {
    type Output = Counters;
    fn sub(self, rhs: Counters) -> Counters {
        Counters {
            deviates: self.deviates - rhs.deviates,
            digits: self.digits - rhs.digits,
            bits: self.bits - rhs.bits,
        }
    }
}

/// Label under which draws are attributed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Unscoped = 0,
    /// Selecting the integer part `k`.
    KSelection = 1,
    /// Materializing the fractional deviate `x`.
    Fraction = 2,
    /// Accepting or rejecting `x` given `k`.
    Acceptance = 3,
    Sign = 4,
}

impl Scope {
    pub const ALL: [Scope; 5] =
        [Self::Unscoped, Self::KSelection, Self::Fraction, Self::Acceptance, Self::Sign];
}

/// Seeded generator of raw bits with deviate, digit and bit counters.
///
/// A source and every deviate drawn from it form one single-owner unit.
#[derive(Debug, Clone)]
pub struct RandomSource<G = DefaultBits> {
    generator: G,
    seed: u64,
    digit_size: DigitSize,
    totals: Counters,
    scoped: [Counters; 5],
    scope: Scope,
}

impl RandomSource<DefaultBits> {
    /// A source backed by xoshiro256++ seeded from `seed`.
    pub fn new(seed: u64, digit_bits: u32) -> Result<Self> {
        let digit_size = DigitSize::from_bits(digit_bits)?;
        let rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        Ok(Self::with_generator(RngBits::new(rng), seed, digit_size))
    }
}

impl<G: BitGenerator> RandomSource<G> {
    pub fn with_generator(generator: G, seed: u64, digit_size: DigitSize) -> Self {
        Self {
            generator,
            seed,
            digit_size,
            totals: Counters::default(),
            scoped: [Counters::default(); 5],
            scope: Scope::Unscoped,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn digit_size(&self) -> DigitSize {
        self.digit_size
    }

    pub fn counters(&self) -> Counters {
        self.totals
    }

    pub fn scoped_counters(&self, scope: Scope) -> Counters {
        self.scoped[scope as usize]
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    /// Runs `f` with every draw attributed to `scope`, restoring the previous
    /// scope afterwards.
    #[inline]
    pub fn scoped<T>(&mut self, scope: Scope, f: impl FnOnce(&mut Self) -> T) -> T {
        let outer = std::mem::replace(&mut self.scope, scope);
        let out = f(self);
        self.scope = outer;
        out
    }

    #[inline]
    fn charge(&mut self, delta: Counters) {
        self.totals += delta;
        self.scoped[self.scope as usize] += delta;
    }

    #[inline]
    pub(crate) fn note_deviate(&mut self) {
        self.charge(Counters { deviates: 1, digits: 0, bits: 0 });
    }

    /// One digit for a deviate expansion.
    #[inline]
    pub(crate) fn draw_digit(&mut self) -> u64 {
        let bits = self.digit_size.bits();
        self.charge(Counters { deviates: 0, digits: 1, bits: bits as u64 });
        self.generator.next_bits(bits)
    }

    /// A standalone fair bit (signs, the two-way selector).
    #[inline]
    pub fn draw_bit(&mut self) -> bool {
        self.charge(Counters { deviates: 0, digits: 0, bits: 1 });
        self.generator.next_bits(1) == 1
    }

    /// `+1` or `-1` with equal probability from one raw bit.
    #[inline]
    pub fn random_sign(&mut self) -> i8 {
        if self.draw_bit() {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_source_has_zero_counters() {
        let src = RandomSource::new(42, 1).unwrap();
        assert_eq!(src.counters(), Counters::default());
        assert_eq!(src.seed(), 42);
    }

    #[test]
    fn unsupported_digit_size() {
        assert_eq!(RandomSource::new(42, 3).unwrap_err(), Error::UnsupportedDigitSize(3));
        assert!(RandomSource::new(42, 0).is_err());
        assert!(RandomSource::new(42, 32).is_err());
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomSource::new(42, 8).unwrap();
        let mut b = RandomSource::new(42, 8).unwrap();
        for _ in 0..1000 {
            assert_eq!(a.draw_digit(), b.draw_digit());
            assert_eq!(a.draw_bit(), b.draw_bit());
        }
    }

    #[test]
    fn bits_equal_digits_times_size_plus_standalone() {
        let mut src = RandomSource::new(7, 16).unwrap();
        for _ in 0..10 {
            src.draw_digit();
        }
        for _ in 0..3 {
            src.random_sign();
        }
        let c = src.counters();
        assert_eq!(c.digits, 10);
        assert_eq!(c.bits, 10 * 16 + 3);
        assert_eq!(c.deviates, 0);
    }

    #[test]
    fn digits_stay_within_digit_size() {
        let mut src = RandomSource::new(9, 4).unwrap();
        assert!((0..1000).all(|_| src.draw_digit() < 16));
    }

    #[test]
    fn scopes_partition_totals() {
        let mut src = RandomSource::new(1, 1).unwrap();
        src.draw_bit();
        src.scoped(Scope::Sign, |s| {
            s.random_sign();
            s.scoped(Scope::Acceptance, |s| s.draw_digit());
            s.random_sign();
        });
        assert_eq!(src.scope(), Scope::Unscoped);
        assert_eq!(src.scoped_counters(Scope::Sign).bits, 2);
        assert_eq!(src.scoped_counters(Scope::Acceptance).digits, 1);
        let sum = Scope::ALL
            .iter()
            .fold(Counters::default(), |acc, s| acc + src.scoped_counters(*s));
        assert_eq!(sum, src.counters());
    }

    #[test]
    fn random_sign_is_fair_and_uncounted_as_deviate() {
        let mut src = RandomSource::new(3, 1).unwrap();
        let n = 1_000_000;
        let plus = (0..n).filter(|_| src.random_sign() == 1).count() as f64;
        let sd = (n as f64 * 0.25).sqrt();
        assert!((plus - n as f64 / 2.0).abs() < 4.0 * sd);
        assert_eq!(src.counters().deviates, 0);
        assert_eq!(src.counters().bits, n);
    }
}
