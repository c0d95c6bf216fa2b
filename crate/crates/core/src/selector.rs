use crate::deviate::{less_than_rational, UniformDeviate};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::source::{BitGenerator, RandomSource};

/// Outcome of the three-way selector `C(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectorOutcome {
    MinusOne,
    Zero,
    PlusOne,
}

impl SelectorOutcome {
    pub fn value(self) -> i8 {
        match self {
            Self::MinusOne => -1,
            Self::Zero => 0,
            Self::PlusOne => 1,
        }
    }
}

/// `C(m)`: returns -1, 0, +1 with probabilities `1/m`, `1/m`, `1 - 2/m`.
///
/// For `m >= 4` one deviate is compared against `2/m`, then a raw bit splits
/// the low branch. `C(2)` is a single raw bit and never returns +1.
pub fn selector_c<G: BitGenerator>(m: u64, src: &mut RandomSource<G>) -> Result<SelectorOutcome> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidSelector(m));
    }
    Ok(select(m, src))
}

#[inline]
pub(crate) fn select<G: BitGenerator>(m: u64, src: &mut RandomSource<G>) -> SelectorOutcome {
    debug_assert!(m >= 2 && m.is_multiple_of(2));
    if m > 2 {
        // 2/m == 1/(m/2), already in lowest terms.
        let two_over_m = Rational::new(1, m / 2).expect("m/2 is positive");
        let mut u = UniformDeviate::fresh(src);
        if !less_than_rational(&mut u, two_over_m, src) {
            return SelectorOutcome::PlusOne;
        }
    }
    if src.draw_bit() {
        SelectorOutcome::MinusOne
    } else {
        SelectorOutcome::Zero
    }
}
