use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A non-negative fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        Ok(Self { num: num / g, den: den / g })
    }

    /// Reduces a fraction given with 128-bit parts, failing when the reduced
    /// form still does not fit 64 bits.
    pub fn from_wide(num: u128, den: u128) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        match (u64::try_from(n), u64::try_from(d)) {
            (Ok(n), Ok(d)) => Ok(Self { num: n, den: d }),
            _ => Err(Error::Overflow(format!("{n}/{d}"))),
        }
    }

    /// A rational that must lie strictly inside (0, 1).
    pub fn probability(num: u64, den: u64) -> Result<Self> {
        let q = Self::new(num, den)?;
        if q.is_probability() {
            Ok(q)
        } else {
            Err(Error::ProbabilityOutOfRange(q.to_string()))
        }
    }

    pub const fn one() -> Self {
        Self { num: 1, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_probability(&self) -> bool {
        self.num > 0 && self.num < self.den
    }

    /// `self / 2`, exact.
    pub fn half(&self) -> Result<Self> {
        if self.num.is_multiple_of(2) {
            Ok(Self { num: self.num / 2, den: self.den })
        } else {
            Self::from_wide(self.num as u128, self.den as u128 * 2)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `N` or `N/D` with decimal integers.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = n.parse::<u64>().map_err(|_| bad())?;
        let den = d.parse::<u64>().map_err(|_| bad())?;
        Self::new(num, den)
    }
}

/// Sequential generator of the binary expansion of a rational in [0, 1),
/// one chunk at a time by long division on the carried remainder.
#[derive(Debug, Clone)]
pub(crate) struct BinaryExpansion {
    rem: u64,
    den: u64,
    den_bits: u32,
}

impl BinaryExpansion {
    pub(crate) fn new(q: Rational) -> Self {
        debug_assert!(q.num < q.den);
        Self { rem: q.num, den: q.den, den_bits: 64 - q.den.leading_zeros() }
    }

    /// True once every remaining bit is zero.
    #[inline]
    pub(crate) fn is_exhausted(&self) -> bool {
        self.rem == 0
    }

    /// The next `width` bits (1..=64) of the expansion, right-aligned.
    #[inline]
    pub(crate) fn next_chunk(&mut self, width: u32) -> u64 {
        debug_assert!((1..=64).contains(&width));
        if width + self.den_bits <= 64 {
            let shifted = self.rem << width;
            self.rem = shifted % self.den;
            shifted / self.den
        } else {
            let shifted = (self.rem as u128) << width;
            let den = self.den as u128;
            self.rem = (shifted % den) as u64;
            (shifted / den) as u64
        }
    }
}
