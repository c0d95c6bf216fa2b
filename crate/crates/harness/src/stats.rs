//! Goodness-of-fit statistics for the samplers.

use exact_gauss::discrete::{self, pmf_dplus};
use exact_gauss::normal;
use exact_gauss::{DiscreteVariant, NormalAlgorithm, RandomSource, Rational, SigmaParam};
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{HarnessError, Result};

/// Significance level for every pass/fail decision.
pub const ALPHA: f64 = 0.001;
/// Asymptotic Kolmogorov critical value at `ALPHA`.
pub const KS_CRITICAL: f64 = 1.949;
/// Bins `0..DGAUSS_BINS` plus one tail bin.
pub const DGAUSS_BINS: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub test: String,
    pub n: u64,
    pub seed: u64,
    pub statistic: f64,
    pub critical: f64,
    pub pass: bool,
}

impl TestReport {
    fn new(test: String, n: u64, seed: u64, statistic: f64, critical: f64) -> Self {
        Self { test, n, seed, statistic, critical, pass: statistic < critical }
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(HarnessError::InvalidArgument("n must be positive".into()));
    }
    Ok(())
}

pub fn chi2_quantile(df: usize, alpha: f64) -> f64 {
    ChiSquared::new(df as f64).expect("positive degrees of freedom").inverse_cdf(1.0 - alpha)
}

/// Pearson statistic of observed counts against expected counts.
pub fn chi2_statistic(observed: &[u64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum()
}

/// Pearson homogeneity statistic for two count vectors over the same bins.
pub fn chi2_two_sample(a: &[u64], b: &[u64]) -> f64 {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let n = (na + nb) as f64;
    let mut stat = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        let ea = col * na as f64 / n;
        let eb = col * nb as f64 / n;
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    stat
}

/// `Phi(x)` via the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `sup |F_n - F|` for sorted samples.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}

/// `sup |F_a - F_b|` for two sorted samples.
pub fn ks_two_sample_statistic(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Bin counts of `n` discrete samples: `0..DGAUSS_BINS` and a tail.
pub fn dgauss_counts(variant: DiscreteVariant, sigma: Rational, n: u64, seed: u64, bits: u32) -> Result<Vec<u64>> {
    check_n(n)?;
    let p = SigmaParam::new(sigma)?;
    let mut src = RandomSource::new(seed, bits)?;
    let mut counts = vec![0u64; DGAUSS_BINS + 1];
    for _ in 0..n {
        let k = discrete::sample(variant, &p, &mut src).value as usize;
        counts[k.min(DGAUSS_BINS)] += 1;
    }
    Ok(counts)
}

pub fn dgauss_expected(sigma: f64, n: u64) -> Vec<f64> {
    let mut e: Vec<f64> = (0..DGAUSS_BINS).map(|k| pmf_dplus(sigma, k as u64, 1e-15) * n as f64).collect();
    let head: f64 = e.iter().sum();
    e.push(n as f64 - head);
    e
}

pub fn chi2_dgauss(variant: DiscreteVariant, sigma: Rational, n: u64, seed: u64, bits: u32) -> Result<TestReport> {
    let counts = dgauss_counts(variant, sigma, n, seed, bits)?;
    let expected = dgauss_expected(sigma.to_f64(), n);
    Ok(TestReport::new(
        format!("chi2 dgauss {variant:?} sigma={sigma}"),
        n,
        seed,
        chi2_statistic(&counts, &expected),
        chi2_quantile(DGAUSS_BINS, ALPHA),
    ))
}

pub fn chi2_dgauss_two_sample(sigma: Rational, n: u64, seed: u64, bits: u32) -> Result<TestReport> {
    let a = dgauss_counts(DiscreteVariant::Karney, sigma, n, seed, bits)?;
    let b = dgauss_counts(DiscreteVariant::Improved, sigma, n, seed ^ 0x9e37_79b9_7f4a_7c15, bits)?;
    Ok(TestReport::new(
        format!("chi2 two-sample dgauss sigma={sigma}"),
        n,
        seed,
        chi2_two_sample(&a, &b),
        chi2_quantile(DGAUSS_BINS, ALPHA),
    ))
}

/// `n` normal samples finalized to `precision` bits, sorted.
pub fn normal_values(algorithm: NormalAlgorithm, n: u64, precision: u32, seed: u64, bits: u32) -> Result<Vec<f64>> {
    check_n(n)?;
    let mut src = RandomSource::new(seed, bits)?;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let mut s = normal::sample(algorithm, &mut src).sample;
        out.push(s.finalize(precision, &mut src)?.to_f64());
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

pub fn ks_normal(algorithm: NormalAlgorithm, n: u64, precision: u32, seed: u64, bits: u32) -> Result<TestReport> {
    let values = normal_values(algorithm, n, precision, seed, bits)?;
    Ok(TestReport::new(
        format!("ks normal {}", algorithm.id()),
        n,
        seed,
        ks_statistic(&values, normal_cdf),
        KS_CRITICAL / (n as f64).sqrt(),
    ))
}

pub fn ks_normal_two_sample(
    a: NormalAlgorithm,
    b: NormalAlgorithm,
    n: u64,
    precision: u32,
    seed: u64,
    bits: u32,
) -> Result<TestReport> {
    let x = normal_values(a, n, precision, seed, bits)?;
    let y = normal_values(b, n, precision, seed ^ 0x9e37_79b9_7f4a_7c15, bits)?;
    Ok(TestReport::new(
        format!("ks two-sample normal {} vs {}", a.id(), b.id()),
        n,
        seed,
        ks_two_sample_statistic(&x, &y),
        KS_CRITICAL * (2.0 / n as f64).sqrt(),
    ))
}
