use std::fmt::Write as _;

use num_bigint::BigUint;

/// `sign * (integer + fraction / 2^precision)`, the truncation of an exact
/// lazy sample to a fixed number of fractional bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    sign: i8,
    integer: u64,
    /// Fraction bits, most significant first; bits past `precision` are zero.
    words: Vec<u64>,
    precision: u32,
}

impl Dyadic {
    /// Missing words read as zero; bits past `precision` are dropped.
    pub fn from_words(sign: i8, integer: u64, words: &[u64], precision: u32) -> Self {
        let n = precision.div_ceil(64) as usize;
        let mut words: Vec<u64> = words.iter().copied().chain(std::iter::repeat(0)).take(n).collect();
        let spare = n as u32 * 64 - precision;
        if spare > 0 {
            words[n - 1] &= u64::MAX << spare;
        }
        Self { sign, integer, words, precision }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn integer(&self) -> u64 {
        self.integer
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Fraction bit `i` (0-based after the binary point).
    pub fn fraction_bit(&self, i: u32) -> bool {
        i < self.precision && (self.words[(i / 64) as usize] >> (63 - i % 64)) & 1 == 1
    }

    /// Fraction bits as hex, left-aligned in `ceil(precision / 4)` digits with
    /// the unused low bits of the last digit zero.
    pub fn frac_bits_hex(&self) -> String {
        let digits = self.precision.div_ceil(4);
        let mut out = String::with_capacity(digits as usize);
        for d in 0..digits {
            let word = self.words[(d / 16) as usize];
            let nibble = (word >> (60 - 4 * (d % 16))) & 0xf;
            write!(out, "{nibble:x}").unwrap();
        }
        out
    }

    /// The exact decimal expansion of the value (every dyadic terminates).
    pub fn to_decimal_string(&self) -> String {
        let mut frac = BigUint::from(0u32);
        for &w in &self.words {
            frac = (frac << 64u32) | BigUint::from(w);
        }
        // Drop the zero padding below `precision`.
        frac >>= self.words.len() as u32 * 64 - self.precision;
        // frac / 2^p == frac * 5^p / 10^p
        let scaled = frac * BigUint::from(5u32).pow(self.precision);
        let digits = scaled.to_str_radix(10);
        let mut frac_digits = "0".repeat(self.precision as usize - digits.len()) + &digits;
        while frac_digits.len() > 1 && frac_digits.ends_with('0') {
            frac_digits.pop();
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        format!("{sign}{}.{frac_digits}", self.integer)
    }

    /// Nearest `f64` (rounding happens only beyond 53 significant bits).
    pub fn to_f64(&self) -> f64 {
        let mut frac = 0.0;
        let mut scale = 1.0;
        for &w in self.words.iter().take(2) {
            scale /= 18_446_744_073_709_551_616.0;
            frac += w as f64 * scale;
        }
        self.sign as f64 * (self.integer as f64 + frac)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_and_hex_of_five_eighths() {
        let d = Dyadic::from_words(1, 0, &[0b101 << 61], 3);
        assert_eq!(d.to_decimal_string(), "0.625");
        assert_eq!(d.frac_bits_hex(), "a");
        assert_eq!(d.to_f64(), 0.625);
    }

    #[test]
    fn truncates_past_precision() {
        let d = Dyadic::from_words(-1, 2, &[u64::MAX, u64::MAX], 4);
        assert_eq!(d.to_decimal_string(), "-2.9375");
        assert_eq!(d.frac_bits_hex(), "f");
        assert!(d.fraction_bit(3) && !d.fraction_bit(4));
    }

    #[test]
    fn zero_fraction_keeps_one_digit() {
        let d = Dyadic::from_words(-1, 2, &[0], 4);
        assert_eq!(d.to_decimal_string(), "-2.0");
        assert_eq!(d.to_f64(), -2.0);
    }

    #[test]
    fn long_precision_decimal_is_exact() {
        // 2^-70 has 70 fractional decimal digits ending in ...5
        let d = Dyadic::from_words(1, 0, &[0, 1 << 58], 70);
        let s = d.to_decimal_string();
        assert_eq!(s.len(), 2 + 70);
        assert!(s.ends_with("3916015625"));
        assert_eq!(d.frac_bits_hex().len(), 18);
    }
}
