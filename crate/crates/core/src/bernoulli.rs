//! Exact Bernoulli factories for the exponential probabilities the samplers
//! need.
//!
//! All factories are driven by chains of deviate comparisons: the probability
//! that a run `x > u1 > u2 > ... > un` has length at least `n` is `x^n / n!`,
//! so the parity of the maximal run length is true with probability `e^-x`.
//! Factories that multiply such runs by extra per-step coins (`v < y`, or the
//! selector in the Karney kernel) scale each term by the coin probability.
//!
//! Every factory stops at the first comparison that fails. The `x` argument
//! may be a live deviate or a rational fixture; both go through the same
//! comparison code.

use crate::deviate::{less_than, less_than_deviate, Operand, Threshold, UniformDeviate};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::selector::{select, SelectorOutcome};
use crate::source::{BitGenerator, Counters, RandomSource};

/// A Bernoulli value with the randomness spent producing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BernoulliOutcome {
    pub value: bool,
    pub cost: Counters,
    /// Factory-specific count: the run length `n` for the run-parity
    /// factories, or the number of inner factory invocations for the
    /// composite ones.
    pub rounds: u64,
}

#[inline]
fn measured<G: BitGenerator>(
    src: &mut RandomSource<G>,
    f: impl FnOnce(&mut RandomSource<G>) -> (bool, u64),
) -> BernoulliOutcome {
    let before = src.counters();
    let (value, rounds) = f(src);
    BernoulliOutcome { value, cost: src.counters() - before, rounds }
}

/// True with probability `e^-x`, spending `e^x` deviates on average.
#[inline]
pub fn exp_neg<T, G>(x: &mut T, src: &mut RandomSource<G>) -> BernoulliOutcome
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    measured(src, |src| decreasing_run(x, src))
}

/// [`exp_neg`] for a rational `q` in (0, 1).
pub fn exp_neg_rational<G: BitGenerator>(
    q: Rational,
    src: &mut RandomSource<G>,
) -> Result<BernoulliOutcome> {
    if !q.is_probability() {
        return Err(Error::ProbabilityOutOfRange(q.to_string()));
    }
    let mut q = q;
    Ok(exp_neg(&mut q, src))
}

/// True with probability `e^-(k x)` as `k` independent `e^-x` coins.
pub fn exp_neg_kx<T, G>(k: u64, x: &mut T, src: &mut RandomSource<G>) -> BernoulliOutcome
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    measured(src, |src| {
        for i in 1..=k {
            if !decreasing_run(x, src).0 {
                return (false, i);
            }
        }
        (true, k)
    })
}

/// True with probability `e^-(x y)` for `x, y` in (0, 1).
///
/// Expected cost is `(e^(xy) (1 + y) - 1) / y` deviates, which favours the
/// larger operand in the `y` slot.
pub fn exp_neg_xy<X, Y, G>(x: &mut X, y: &mut Y, src: &mut RandomSource<G>) -> BernoulliOutcome
where
    X: Threshold + ?Sized,
    Y: Threshold + ?Sized,
    G: BitGenerator,
{
    measured(src, |src| {
        product_run(src, |slot, u, src| {
            let bound = match slot {
                Slot::X => x.operand(),
                Slot::Y => y.operand(),
            };
            less_than(Operand::deviate(u), bound, src)
        })
    })
}

/// True with probability `e^-(x^2 / 2)`, as [`exp_neg_xy`] on `(x / 2, x)`.
pub fn exp_neg_half_x_squared<T, G>(x: &mut T, src: &mut RandomSource<G>) -> BernoulliOutcome
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    measured(src, |src| {
        product_run(src, |slot, u, src| {
            let bound = match slot {
                Slot::X => x.operand().halved(),
                Slot::Y => x.operand(),
            };
            less_than(Operand::deviate(u), bound, src)
        })
    })
}

/// Karney's kernel: true with probability `exp(-x (2k + x) / (2k + 2))`.
///
/// Each step of the decreasing run on `x` is followed by a coin of
/// probability `(2k + x) / (2k + 2)`, built from the selector `C(2k + 2)` and,
/// when it returns 0, one more comparison `r < x`. For `k = 0` the selector
/// (a single bit) is drawn before the run deviate. `rounds` is the number of
/// restarts.
pub fn exp_neg_kernel<T, G>(k: u64, x: &mut T, src: &mut RandomSource<G>) -> BernoulliOutcome
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    measured(src, |src| kernel(k, x, src))
}

/// True with probability `exp(-x (2k + x) / 2)` by up to `k + 1` kernel
/// calls. `rounds` counts the calls made.
pub fn exp_neg_quadratic_karney<T, G>(
    k: u64,
    x: &mut T,
    src: &mut RandomSource<G>,
) -> BernoulliOutcome
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    measured(src, |src| {
        for i in 1..=k + 1 {
            if !kernel(k, x, src).0 {
                return (false, i);
            }
        }
        (true, k + 1)
    })
}

/// True with probability `exp(-x (2k + x) / 2) = e^-(kx) e^-(x^2/2)`, testing
/// the two factors in that order. `rounds` counts the `e^-x` coins used plus
/// one if the second factor was reached.
pub fn exp_neg_quadratic_split<T, G>(
    k: u64,
    x: &mut T,
    src: &mut RandomSource<G>,
) -> BernoulliOutcome
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    let before = src.counters();
    let linear = exp_neg_kx(k, x, src);
    if !linear.value {
        return linear;
    }
    let square = exp_neg_half_x_squared(x, src);
    BernoulliOutcome {
        value: square.value,
        cost: src.counters() - before,
        rounds: linear.rounds + 1,
    }
}

/// Length of the maximal run `x > u1 > u2 > ...`; true when even.
#[inline]
fn decreasing_run<T, G>(x: &mut T, src: &mut RandomSource<G>) -> (bool, u64)
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    let mut prev = UniformDeviate::fresh(src);
    if !less_than(Operand::deviate(&mut prev), x.operand(), src) {
        return (true, 0);
    }
    let mut n = 1;
    loop {
        let mut u = UniformDeviate::fresh(src);
        if !less_than_deviate(&mut u, &mut prev, src) {
            return (n % 2 == 0, n);
        }
        n += 1;
        prev = u;
    }
}

#[derive(Clone, Copy)]
enum Slot {
    X,
    Y,
}

/// Maximal `n` with `x > u1 > ... > un` and `v_i < y`; true when even.
#[inline]
fn product_run<G, F>(src: &mut RandomSource<G>, mut below: F) -> (bool, u64)
where
    G: BitGenerator,
    F: FnMut(Slot, &mut UniformDeviate, &mut RandomSource<G>) -> bool,
{
    let mut prev: Option<UniformDeviate> = None;
    let mut n = 0;
    loop {
        let mut u = UniformDeviate::fresh(src);
        let descending = match prev.as_mut() {
            None => below(Slot::X, &mut u, src),
            Some(p) => less_than_deviate(&mut u, p, src),
        };
        if !descending {
            break;
        }
        let mut v = UniformDeviate::fresh(src);
        if !below(Slot::Y, &mut v, src) {
            break;
        }
        n += 1;
        prev = Some(u);
    }
    (n % 2 == 0, n)
}

#[inline]
fn kernel<T, G>(k: u64, x: &mut T, src: &mut RandomSource<G>) -> (bool, u64)
where
    T: Threshold + ?Sized,
    G: BitGenerator,
{
    let m = 2 * k + 2;
    let mut prev: Option<UniformDeviate> = None;
    let mut n = 0;
    loop {
        // With m = 2 the selector is one bit and never returns +1; drawing it
        // first saves the run deviate when it returns -1.
        let early = if k == 0 { Some(select(m, src)) } else { None };
        if early == Some(SelectorOutcome::MinusOne) {
            break;
        }
        let mut z = UniformDeviate::fresh(src);
        let descending = match prev.as_mut() {
            None => less_than(Operand::deviate(&mut z), x.operand(), src),
            Some(p) => less_than_deviate(&mut z, p, src),
        };
        if !descending {
            break;
        }
        let f = match early {
            Some(f) => f,
            None => select(m, src),
        };
        match f {
            SelectorOutcome::MinusOne => break,
            SelectorOutcome::Zero => {
                let mut r = UniformDeviate::fresh(src);
                if !less_than(Operand::deviate(&mut r), x.operand(), src) {
                    break;
                }
            }
            SelectorOutcome::PlusOne => {}
        }
        n += 1;
        prev = Some(z);
    }
    (n % 2 == 0, n)
}
