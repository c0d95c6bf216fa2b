//! Lazily extended uniform deviates over (0, 1) and exact comparisons.
//!
//! A deviate is a binary expansion whose digits are drawn from its
//! [`RandomSource`] only when a comparison needs them. The expansion is kept
//! bit-addressable regardless of digit size so that scaled views such as
//! `u / 2` are plain shifts.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::rational::{BinaryExpansion, Rational};
use crate::source::{BitGenerator, RandomSource};

/// A uniform deviate in (0, 1) known only through a growing prefix of its
/// binary expansion. Digits, once drawn, never change.
///
/// A deviate must only be extended by the source that created it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UniformDeviate {
    words: SmallVec<[u64; 2]>,
    len: u64,
}

impl UniformDeviate {
    /// A new deviate with no digits drawn yet. Charged as one deviate.
    #[inline]
    pub fn fresh<G: BitGenerator>(src: &mut RandomSource<G>) -> Self {
        src.note_deviate();
        Self::default()
    }

    /// A deviate conditioned on the given leading bits, with nothing charged.
    /// Further digits are drawn as usual.
    pub fn from_prefix(bits: &[bool]) -> Self {
        let mut dev = Self::default();
        for &b in bits {
            dev.push(b as u64, 1);
        }
        dev
    }

    /// Number of bits of the expansion drawn so far.
    pub fn len_bits(&self) -> u64 {
        self.len
    }

    /// Bit `i` after the binary point (0-based), if already drawn.
    pub fn bit(&self, i: u64) -> Option<bool> {
        (i < self.len).then(|| self.bits_at(i, 1) == 1)
    }

    /// Draws digits until at least `bits` bits are known.
    pub fn ensure_bits<G: BitGenerator>(&mut self, bits: u64, src: &mut RandomSource<G>) {
        while self.len < bits {
            self.extend(src);
        }
    }

    /// Truncates the deviate to `precision` bits, drawing digits as needed.
    pub fn finalize<G: BitGenerator>(
        &mut self,
        precision: u32,
        src: &mut RandomSource<G>,
    ) -> Result<Dyadic> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        self.ensure_bits(precision as u64, src);
        Ok(Dyadic::from_words(1, 0, &self.words, precision))
    }

    #[inline]
    fn extend<G: BitGenerator>(&mut self, src: &mut RandomSource<G>) {
        let width = src.digit_size().bits();
        let digit = src.draw_digit();
        self.push(digit, width);
    }

    #[inline]
    fn push(&mut self, digit: u64, width: u32) {
        let off = (self.len % 64) as u32;
        if off == 0 {
            self.words.push(0);
        }
        let last = self.words.len() - 1;
        if off + width <= 64 {
            self.words[last] |= digit << (64 - off - width);
        } else {
            self.words[last] |= digit >> (off + width - 64);
            self.words.push(digit << (128 - off - width));
        }
        self.len += width as u64;
    }

    /// Bits `[pos, pos + width)` right-aligned; requires them to be drawn.
    #[inline]
    fn bits_at(&self, pos: u64, width: u32) -> u64 {
        debug_assert!((1..=64).contains(&width) && pos + width as u64 <= self.len);
        let idx = (pos / 64) as usize;
        let off = (pos % 64) as u32;
        let mut hi = self.words[idx] << off;
        if off + width > 64 {
            hi |= self.words[idx + 1] >> (64 - off);
        }
        hi >> (64 - width)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Creates a fresh deviate; see [`UniformDeviate::fresh`].
#[inline]
pub fn fresh_deviate<G: BitGenerator>(src: &mut RandomSource<G>) -> UniformDeviate {
    UniformDeviate::fresh(src)
}

/// One side of an exact comparison: a deviate or a rational, scaled by
/// `2^-shift`.
#[derive(Debug)]
pub enum Operand<'a> {
    Deviate { dev: &'a mut UniformDeviate, shift: u32 },
    Exact { value: Rational, shift: u32 },
}

impl<'a> Operand<'a> {
    pub fn deviate(dev: &'a mut UniformDeviate) -> Self {
        Operand::Deviate { dev, shift: 0 }
    }

    pub fn exact(value: Rational) -> Self {
        Operand::Exact { value, shift: 0 }
    }

    /// The same operand divided by two. Consumes no randomness.
    pub fn halved(self) -> Self {
        match self {
            Operand::Deviate { dev, shift } => Operand::Deviate { dev, shift: shift + 1 },
            Operand::Exact { value, shift } => Operand::Exact { value, shift: shift + 1 },
        }
    }
}

/// A view of `u / 2` whose comparisons are exact one-bit shifts of `u`.
pub fn halve(u: &mut UniformDeviate) -> Operand<'_> {
    Operand::deviate(u).halved()
}

/// Something a fresh deviate can be compared against: a rational fixture, a
/// live deviate, or a scaled view of one.
pub trait Threshold {
    fn operand(&mut self) -> Operand<'_>;
}

impl Threshold for Rational {
    fn operand(&mut self) -> Operand<'_> {
        Operand::exact(*self)
    }
}

impl Threshold for UniformDeviate {
    fn operand(&mut self) -> Operand<'_> {
        Operand::deviate(self)
    }
}

impl Threshold for Operand<'_> {
    fn operand(&mut self) -> Operand<'_> {
        match self {
            Operand::Deviate { dev, shift } => Operand::Deviate { dev, shift: *shift },
            Operand::Exact { value, shift } => Operand::Exact { value: *value, shift: *shift },
        }
    }
}

/// Decides `u < q` exactly, drawing digits of `u` only as far as needed.
#[inline]
pub fn less_than_rational<G: BitGenerator>(
    u: &mut UniformDeviate,
    q: Rational,
    src: &mut RandomSource<G>,
) -> bool {
    less_than(Operand::deviate(u), Operand::exact(q), src)
}

/// Decides `u < v` exactly for two deviates of the same source.
#[inline]
pub fn less_than_deviate<G: BitGenerator>(
    u: &mut UniformDeviate,
    v: &mut UniformDeviate,
    src: &mut RandomSource<G>,
) -> bool {
    less_than(Operand::deviate(u), Operand::deviate(v), src)
}

/// Decides `a < b` exactly. Digits are compared from the most significant
/// end; a deviate is extended by one digit only when its next bit is needed.
/// A deviate whose prefix equals a terminating rational is decided at once:
/// it lies in `[prefix, prefix + 2^-len)`, so it is not below the rational.
pub fn less_than<G: BitGenerator>(a: Operand<'_>, b: Operand<'_>, src: &mut RandomSource<G>) -> bool {
    let (a, b) = match (a, b) {
        (Operand::Exact { value: p, shift: sp }, Operand::Exact { value: q, shift: sq }) => {
            let lhs = p.numerator() as u128 * q.denominator() as u128;
            let rhs = q.numerator() as u128 * p.denominator() as u128;
            let ord = (lhs << sq.min(64)).cmp(&(rhs << sp.min(64)));
            return ord == Ordering::Less;
        }
        (Operand::Deviate { dev: a, shift: sa }, Operand::Deviate { dev: b, shift: sb }) => {
            return deviates_less(a, sa, b, sb, src);
        }
        (Operand::Deviate { dev, shift: 0 }, Operand::Exact { value, shift: 0 })
            if value.numerator() > 0 && value.numerator() < value.denominator() =>
        {
            return deviate_below(dev, value, src);
        }
        (a, b) => (View::new(a), View::new(b)),
    };
    match (a, b) {
        (View::Zero, _) => true,
        (_, View::Zero) => false,
        (View::AtLeastOne, _) => false,
        (_, View::AtLeastOne) => true,
        (mut a, mut b) => compare_views(&mut a, &mut b, src),
    }
}

/// Bits `[pos, pos + width)` of `dev * 2^-shift`; they must be drawn.
#[inline]
fn scaled_bits(dev: &UniformDeviate, shift: u32, pos: u64, width: u32) -> u64 {
    let shift = shift as u64;
    if pos >= shift {
        return dev.bits_at(pos - shift, width);
    }
    let lead = shift - pos;
    if lead >= width as u64 {
        0
    } else {
        dev.bits_at(0, width - lead as u32)
    }
}

/// `a * 2^-sa < b * 2^-sb` for two deviates.
#[inline]
fn deviates_less<G: BitGenerator>(
    a: &mut UniformDeviate,
    sa: u32,
    b: &mut UniformDeviate,
    sb: u32,
    src: &mut RandomSource<G>,
) -> bool {
    let mut pos = 0u64;
    loop {
        let ea = a.len + sa as u64;
        if ea <= pos {
            a.extend(src);
            continue;
        }
        let eb = b.len + sb as u64;
        if eb <= pos {
            b.extend(src);
            continue;
        }
        let width = (ea.min(eb) - pos).min(64) as u32;
        let x = scaled_bits(a, sa, pos, width);
        let y = scaled_bits(b, sb, pos, width);
        if x != y {
            return x < y;
        }
        pos += width as u64;
    }
}

/// An unscaled deviate against a rational in (0, 1).
#[inline]
fn deviate_below<G: BitGenerator>(u: &mut UniformDeviate, q: Rational, src: &mut RandomSource<G>) -> bool {
    let mut exp = BinaryExpansion::new(q);
    let mut pos = 0u64;
    loop {
        if u.len <= pos {
            u.extend(src);
            continue;
        }
        let idx = (pos / 64) as usize;
        let off = (pos % 64) as u32;
        let end = u.len.min((idx as u64 + 1) * 64);
        let width = (end - pos) as u32;
        let x = (u.words[idx] << off) >> (64 - width);
        let y = exp.next_chunk(width);
        if x != y {
            return x < y;
        }
        if exp.is_exhausted() {
            return false;
        }
        pos = end;
    }
}

#[inline]
fn compare_views<G: BitGenerator>(a: &mut View<'_>, b: &mut View<'_>, src: &mut RandomSource<G>) -> bool {
    let mut pos = 0u64;
    loop {
        let wa = a.available(pos);
        if wa == 0 {
            a.extend(src);
            continue;
        }
        let wb = b.available(pos);
        if wb == 0 {
            b.extend(src);
            continue;
        }
        let width = wa.min(wb).min(64) as u32;
        let x = a.read(pos, width);
        let y = b.read(pos, width);
        if x != y {
            return x < y;
        }
        if a.is_exhausted() {
            return true;
        }
        if b.is_exhausted() {
            return false;
        }
        pos += width as u64;
    }
}

/// Bit-level reader over one operand, always in [0, 1) after special cases
/// are peeled off.
enum View<'a> {
    Dev { dev: &'a mut UniformDeviate, shift: u32 },
    Expansion { exp: BinaryExpansion, lead: u32 },
    Zero,
    AtLeastOne,
}

impl<'a> View<'a> {
    fn new(op: Operand<'a>) -> Self {
        match op {
            Operand::Deviate { dev, shift } => View::Dev { dev, shift },
            Operand::Exact { value, shift } => {
                if value.numerator() == 0 {
                    View::Zero
                } else if value.numerator() < value.denominator() {
                    View::Expansion { exp: BinaryExpansion::new(value), lead: shift }
                } else {
                    let den = (value.denominator() as u128) << shift;
                    if value.numerator() as u128 >= den {
                        View::AtLeastOne
                    } else {
                        let scaled = Rational::from_wide(value.numerator() as u128, den)
                            .expect("scaled rational threshold does not fit 64 bits");
                        View::Expansion { exp: BinaryExpansion::new(scaled), lead: 0 }
                    }
                }
            }
        }
    }

    #[inline]
    fn available(&self, pos: u64) -> u64 {
        match self {
            View::Dev { dev, shift } => (dev.len + *shift as u64).saturating_sub(pos),
            _ => u64::MAX,
        }
    }

    /// A rational whose remaining bits are all zero.
    #[inline]
    fn is_exhausted(&self) -> bool {
        matches!(self, View::Expansion { exp, .. } if exp.is_exhausted())
    }

    #[inline]
    fn extend<G: BitGenerator>(&mut self, src: &mut RandomSource<G>) {
        if let View::Dev { dev, .. } = self {
            dev.extend(src);
        }
    }

    /// Bits `[pos, pos + width)`; rational expansions must be read in order.
    #[inline]
    fn read(&mut self, pos: u64, width: u32) -> u64 {
        match self {
            View::Dev { dev, shift } => {
                let shift = *shift as u64;
                if pos >= shift {
                    return dev.bits_at(pos - shift, width);
                }
                let lead = shift - pos;
                if lead >= width as u64 {
                    0
                } else {
                    dev.bits_at(0, width - lead as u32)
                }
            }
            View::Expansion { exp, lead } => {
                let lead = (*lead as u64).saturating_sub(pos);
                if lead >= width as u64 {
                    0
                } else {
                    exp.next_chunk(width - lead as u32)
                }
            }
            View::Zero | View::AtLeastOne => {
                unreachable!("constant operands are resolved before reading")
            }
        }
    }
}
