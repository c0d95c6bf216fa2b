//! Monte Carlo measurements of probabilities and costs.

use exact_gauss::bernoulli::{exp_neg_half_x_squared, exp_neg_kernel, exp_neg_rational, exp_neg_xy};
use exact_gauss::{discrete, fresh_deviate, normal};
use exact_gauss::{DiscreteVariant, NormalAlgorithm, RandomSource, Rational, SigmaParam};

use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub struct CoinMeasure {
    pub n: u64,
    pub p_true: f64,
    pub mean_deviates: f64,
}

fn coin(n: u64, mut flip: impl FnMut() -> (bool, u64)) -> CoinMeasure {
    let (mut trues, mut deviates) = (0u64, 0u64);
    for _ in 0..n {
        let (v, d) = flip();
        trues += v as u64;
        deviates += d;
    }
    CoinMeasure { n, p_true: trues as f64 / n as f64, mean_deviates: deviates as f64 / n as f64 }
}

pub fn exp_neg_coin(x: Rational, n: u64, seed: u64, bits: u32) -> Result<CoinMeasure> {
    if !x.is_probability() {
        return Err(exact_gauss::Error::ProbabilityOutOfRange(x.to_string()).into());
    }
    let mut src = RandomSource::new(seed, bits)?;
    Ok(coin(n, || {
        let o = exp_neg_rational(x, &mut src).expect("x checked above");
        (o.value, o.cost.deviates)
    }))
}

pub fn kernel_coin(k: u64, x: Rational, n: u64, seed: u64, bits: u32) -> Result<CoinMeasure> {
    let mut src = RandomSource::new(seed, bits)?;
    Ok(coin(n, || {
        let o = exp_neg_kernel(k, &mut { x }, &mut src);
        (o.value, o.cost.deviates)
    }))
}

pub fn xy_coin(x: Rational, y: Rational, n: u64, seed: u64, bits: u32) -> Result<CoinMeasure> {
    let mut src = RandomSource::new(seed, bits)?;
    Ok(coin(n, || {
        let o = exp_neg_xy(&mut { x }, &mut { y }, &mut src);
        (o.value, o.cost.deviates)
    }))
}

/// `e^-(x^2/2)` on a fresh uniform `x`; the cost excludes `x` itself.
pub fn half_square_coin(n: u64, seed: u64, bits: u32) -> Result<CoinMeasure> {
    let mut src = RandomSource::new(seed, bits)?;
    Ok(coin(n, || {
        let mut x = fresh_deviate(&mut src);
        let o = exp_neg_half_x_squared(&mut x, &mut src);
        (o.value, o.cost.deviates)
    }))
}

/// Restart counts of the kernel coin; index `n` holds runs with `n` restarts.
pub fn kernel_restarts(k: u64, x: Rational, n: u64, seed: u64, bits: u32) -> Result<Vec<u64>> {
    let mut src = RandomSource::new(seed, bits)?;
    let mut hist = Vec::new();
    for _ in 0..n {
        let r = exp_neg_kernel(k, &mut { x }, &mut src).rounds as usize;
        if hist.len() <= r {
            hist.resize(r + 1, 0);
        }
        hist[r] += 1;
    }
    Ok(hist)
}

#[derive(Debug, Clone, Copy)]
pub struct DgaussMeasure {
    pub n: u64,
    pub mean_draws: f64,
    pub accept_rate: f64,
}

pub fn dgauss(variant: DiscreteVariant, sigma: Rational, n: u64, seed: u64, bits: u32) -> Result<DgaussMeasure> {
    let p = SigmaParam::new(sigma)?;
    let mut src = RandomSource::new(seed, bits)?;
    let (mut draws, mut attempts) = (0u64, 0u64);
    for _ in 0..n {
        let s = discrete::sample(variant, &p, &mut src);
        draws += s.bern_draws;
        attempts += s.attempts;
    }
    Ok(DgaussMeasure { n, mean_draws: draws as f64 / n as f64, accept_rate: n as f64 / attempts as f64 })
}

#[derive(Debug, Clone, Copy)]
pub struct NormalMeasure {
    pub samples: u64,
    pub trials: u64,
    /// Discrete proposals per normal sample.
    pub attempts_per_sample: f64,
    /// `(k, x)` pairs tested per normal sample.
    pub trials_per_sample: f64,
    /// Acceptance-step deviates per tested pair.
    pub step4_per_trial: f64,
    pub step4_per_sample: f64,
    pub deviates_per_sample: f64,
    pub bits_per_sample: f64,
}

/// Draws normal samples until at least `min_trials` pairs have been tested.
pub fn normal_costs(algorithm: NormalAlgorithm, min_trials: u64, seed: u64, bits: u32) -> Result<NormalMeasure> {
    let mut src = RandomSource::new(seed, bits)?;
    let (mut samples, mut trials, mut attempts, mut step4, mut deviates, mut total_bits) = (0u64, 0, 0, 0, 0, 0);
    while trials < min_trials {
        let s = normal::sample(algorithm, &mut src);
        samples += 1;
        trials += s.trials;
        attempts += s.attempts;
        step4 += s.deviates_step4;
        deviates += s.deviates_total;
        total_bits += s.bits_total;
    }
    let per = |v: u64| v as f64 / samples as f64;
    Ok(NormalMeasure {
        samples,
        trials,
        attempts_per_sample: per(attempts),
        trials_per_sample: per(trials),
        step4_per_trial: step4 as f64 / trials as f64,
        step4_per_sample: per(step4),
        deviates_per_sample: per(deviates),
        bits_per_sample: per(total_bits),
    })
}
