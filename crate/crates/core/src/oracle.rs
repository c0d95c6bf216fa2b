//! Floating-point evaluation of the analytic costs of the samplers.
//!
//! Nothing here is used while sampling. These are the predictions that
//! Monte Carlo measurements are checked against: closed forms, series over
//! `k` truncated once a term drops below `1e-12`, and adaptive Simpson
//! quadrature over `x` in (0, 1).

use std::f64::consts::{E, PI};
use std::fmt;

use crate::discrete::pmf_dplus;
use crate::error::{Error, Result};

pub const SERIES_TOL: f64 = 1e-12;
pub const QUAD_TOL: f64 = 1e-9;

/// How an [`OracleValue`] was computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    ClosedForm,
    Series { tol: f64 },
    Quadrature { tol: f64 },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ClosedForm => f.write_str("closed-form"),
            Method::Series { tol } => write!(f, "series({tol:e})"),
            Method::Quadrature { tol } => write!(f, "quadrature({tol:e})"),
        }
    }
}

/// A named analytic quantity, optionally paired with a published value.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleValue {
    pub name: &'static str,
    pub description: &'static str,
    pub value: f64,
    pub method: Method,
    pub published: Option<f64>,
}

impl OracleValue {
    /// Agreement with the published value (true when there is none).
    pub fn agrees(&self, tol: f64) -> bool {
        self.published.is_none_or(|p| (self.value - p).abs() <= tol)
    }
}

/// Tolerance for matching printed constants (3 to 6 significant digits).
pub const PUBLISHED_TOL: f64 = 5e-3;

/// Mean deviates for one `e^-x` coin: `e^x`.
pub fn expected_deviates_exp(x: f64) -> f64 {
    x.exp()
}

/// Coin counts of a discrete-Gaussian sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DplusCost {
    /// Mean coins per attempt, accepted or not.
    pub per_attempt: f64,
    /// Probability that an attempt returns.
    pub accept_prob: f64,
    /// Mean coins per returned sample.
    pub per_sample: f64,
}

fn coin_probability(sigma: f64) -> Result<f64> {
    if sigma.is_nan() || sigma * sigma * 2.0 <= 1.0 {
        return Err(Error::SigmaTooSmall(sigma.to_string()));
    }
    Ok((-1.0 / (2.0 * sigma * sigma)).exp())
}

/// Sums `term(k)` for `k >= from` until a term past `min_k` drops below the
/// series tolerance.
fn sum_series(from: u64, min_k: u64, term: impl Fn(u64) -> f64) -> f64 {
    let mut total = 0.0;
    for k in from.. {
        let t = term(k);
        total += t;
        if k >= min_k && t.abs() < SERIES_TOL {
            break;
        }
    }
    total
}

/// Coins spent and returned mass per attempt, common to both samplers.
fn accepted_terms(p1: f64) -> (f64, f64) {
    let p0 = 1.0 - p1;
    // p1^(k^2) falls monotonically; the coin count grows only polynomially.
    let cost = sum_series(0, 1, |k| {
        let k2 = (k * k) as f64;
        (1.0 + k2) * p1.powf(k2) * p0
    });
    let mass = sum_series(0, 1, |k| p1.powf((k * k) as f64) * p0);
    (cost, mass)
}

/// `sum_{j=1}^{run} (base + j) p1^(j-1) p0`: coins spent when the first false
/// coin of a run of length `run` comes at position `j`, after `base` coins.
fn first_false_cost(base: u64, run: u64, p1: f64) -> f64 {
    let n = run as f64;
    let pn = p1.powf(n);
    // sum_{j=1}^{n} j p1^(j-1) = (1 - (n + 1) p1^n + n p1^(n+1)) / (1 - p1)^2
    base as f64 * (1.0 - pn) + (1.0 - (n + 1.0) * pn + n * pn * p1) / (1.0 - p1)
}

/// Geometric proposal followed by a `k(k-1)`-coin acceptance run.
pub fn dplus_cost_karney(sigma: f64) -> Result<DplusCost> {
    let p1 = coin_probability(sigma)?;
    let p0 = 1.0 - p1;
    let (accepted, accept_prob) = accepted_terms(p1);
    let mode = (1.0 / (1.0 - p1)) as u64 + 2;
    let rejected = sum_series(2, mode, |k| {
        p1.powi(k as i32) * p0 * first_false_cost(k + 1, k * (k - 1), p1)
    });
    let per_attempt = accepted + rejected;
    Ok(DplusCost { per_attempt, accept_prob, per_sample: per_attempt / accept_prob })
}

/// Interleaved sampler: rejection of `k` spends `1 + (k-1)^2 + j` coins where
/// `j` is the position of the first false coin in the `2(k-1)` run.
pub fn dplus_cost_improved(sigma: f64) -> Result<DplusCost> {
    let p1 = coin_probability(sigma)?;
    let (accepted, accept_prob) = accepted_terms(p1);
    let mode = (1.0 / (1.0 - p1)).sqrt() as u64 + 2;
    let rejected = sum_series(2, mode, |k| {
        let reach = p1.powf(((k - 1) + (k - 1) * (k - 2) + 1) as f64);
        reach * first_false_cost(1 + (k - 1) * (k - 1), 2 * (k - 1), p1)
    });
    let per_attempt = accepted + rejected;
    Ok(DplusCost { per_attempt, accept_prob, per_sample: per_attempt / accept_prob })
}

/// `exp(x (2k + x) / (2k + 2))`.
pub fn tau(k: u64, x: f64) -> f64 {
    let k = k as f64;
    (x * (2.0 * k + x) / (2.0 * k + 2.0)).exp()
}

/// Mean deviates of the kernel coin for `k >= 1`.
pub fn alg3_cost(k: u64, x: f64) -> f64 {
    let kf = k as f64;
    ((4.0 * kf + x + 3.0) * tau(k, x) - 2.0 * kf - 3.0) / (2.0 * kf + x)
}

/// Mean deviates of the kernel coin for `k = 0` (selector drawn first).
/// Tends to 1/2 as `x -> 0`.
pub fn alg3_cost_k0(x: f64) -> f64 {
    if x < 1e-6 {
        // Series: 1/2 + x/2 + x^2/4 + ...
        return 0.5 + 0.5 * x + 0.25 * x * x;
    }
    ((x + 2.0) * (x * x / 2.0).exp() - 2.0) / (2.0 * x)
}

/// Mean deviates of the `e^-(xy)` coin. Tends to 1 as `xy -> 0`.
pub fn alg6_cost(x: f64, y: f64) -> f64 {
    let xy = x * y;
    if xy < 1e-8 {
        // (e^xy (1 + y) - 1)/y = 1 + xy/y (1 + y) + O(xy^2)
        return 1.0 + x * (1.0 + y) + 0.5 * x * xy * (1.0 + y);
    }
    ((xy).exp() * (1.0 + y) - 1.0) / y
}

/// Mean deviates of the `e^-(x^2/2)` coin, `alg6_cost(x/2, x)`.
/// Tends to 1 as `x -> 0`.
pub fn half_square_cost(x: f64) -> f64 {
    if x < 1e-6 {
        // ((1 + x)(1 + x^2/2 + ...) - 1)/x = 1 + x/2 + x^2/2 + ...
        return 1.0 + 0.5 * x + 0.5 * x * x;
    }
    ((1.0 + x) * (x * x / 2.0).exp() - 1.0) / x
}

/// Probability that the kernel coin restarts at least `n` times, `k >= 1`:
/// `((x + 2k)/m)^n x^n / n!` with `m = 2k + 2`.
pub fn restart_prob_alg3(k: u64, x: f64, n: u64) -> f64 {
    let m = (2 * k + 2) as f64;
    let c = (x + 2.0 * k as f64) / m * x;
    (1..=n).fold(1.0, |acc, i| acc * c / i as f64)
}

/// Probability that the kernel coin restarts exactly `n` times.
pub fn restart_pmf_alg3(k: u64, x: f64, n: u64) -> f64 {
    restart_prob_alg3(k, x, n) - restart_prob_alg3(k, x, n + 1)
}

/// Mean number of kernel calls in the `(k + 1)`-fold composition.
pub fn t_k_karney(k: u64, x: f64) -> f64 {
    let q = 1.0 / tau(k, x);
    let head: f64 = (1..=k).map(|i| i as f64 * q.powi(i as i32 - 1) * (1.0 - q)).sum();
    head + (k + 1) as f64 * q.powi(k as i32)
}

/// Mean number of `e^-x` coins in the `k`-fold composition; zero for `k = 0`.
pub fn t_k_improved(k: u64, x: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let q = (-x).exp();
    let head: f64 = (1..k).map(|i| i as f64 * q.powi(i as i32 - 1) * (1.0 - q)).sum();
    head + k as f64 * q.powi(k as i32 - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

fn d1(k: u64) -> f64 {
    pmf_dplus(1.0, k, 1e-17)
}

/// Largest `k` whose weight `D(k)` is at least the series tolerance.
fn k_horizon() -> u64 {
    (0..).find(|&k| d1(k) < SERIES_TOL).unwrap() - 1
}

/// Mean deviates spent accepting `x` in Karney's sampler per trial, summed
/// over `k = 0..=max_k`.
pub fn step4_cost_karney_terms(quad_tol: f64, max_k: u64) -> f64 {
    let head = d1(0) * adaptive_simpson(&alg3_cost_k0, 0.0, 1.0, quad_tol);
    let tail: f64 = (1..=max_k)
        .map(|k| {
            let integrand = |x: f64| alg3_cost(k, x) * t_k_karney(k, x);
            d1(k) * adaptive_simpson(&integrand, 0.0, 1.0, quad_tol)
        })
        .sum();
    head + tail
}

/// ≈ 2.19414
pub fn step4_cost_karney() -> f64 {
    step4_cost_karney_terms(QUAD_TOL, k_horizon())
}

/// Mean deviates spent accepting `x` in the split sampler per trial, summed
/// over `k = 0..=max_k`.
pub fn step34_cost_improved_terms(quad_tol: f64, max_k: u64) -> f64 {
    (0..=max_k)
        .map(|k| {
            let linear = |x: f64| t_k_improved(k, x) * x.exp();
            let square = |x: f64| half_square_cost(x) * (-(k as f64) * x).exp();
            d1(k)
                * (adaptive_simpson(&linear, 0.0, 1.0, quad_tol)
                    + adaptive_simpson(&square, 0.0, 1.0, quad_tol))
        })
        .sum()
}

/// ≈ 2.01799
pub fn step34_cost_improved() -> f64 {
    step34_cost_improved_terms(QUAD_TOL, k_horizon())
}

/// Mean deviates of the `e^-(x^2/2)` coin for uniform `x`.
pub fn half_square_cost_mean() -> f64 {
    adaptive_simpson(&half_square_cost, 0.0, 1.0, QUAD_TOL)
}

/// Probability that a `(k, x)` trial with `k ~ D(sigma = 1)` is accepted:
/// `sum_k D(k) int exp(-x(2k + x)/2) dx`.
pub fn trial_accept_prob() -> f64 {
    let norm = sum_series(0, 1, |k| (-((k * k) as f64) / 2.0).exp());
    (PI / 2.0).sqrt() / norm
}

/// Expected attempts of the discrete proposal per normal sample.
pub fn rejection_rate() -> f64 {
    (2.0 / PI).sqrt() / (1.0 - (-0.5f64).exp())
}

/// Every constant the samplers are checked against.
pub fn reference_constants() -> Vec<OracleValue> {
    let series = Method::Series { tol: SERIES_TOL };
    let quad = Method::Quadrature { tol: QUAD_TOL };
    let karney = dplus_cost_karney(1.0).expect("sigma = 1 is valid");
    let improved = dplus_cost_improved(1.0).expect("sigma = 1 is valid");
    let step4 = step4_cost_karney();
    let trials_per_sample = 1.0 / trial_accept_prob();
    let v = |name, description, value, method, published| OracleValue {
        name,
        description,
        value,
        method,
        published,
    };
    vec![
        v("exp_half_deviates", "mean deviates per B(exp(-1/2)) coin", expected_deviates_exp(0.5), Method::ClosedForm, Some(1.648721)),
        v("dplus_karney_per_attempt", "coins per attempt, geometric proposal (sigma=1)", karney.per_attempt, series, Some(3.32967)),
        v("dplus_accept_prob", "probability an attempt returns (sigma=1)", karney.accept_prob, series, Some(0.689875)),
        v("dplus_karney_per_sample", "coins per sample, geometric proposal (sigma=1)", karney.per_sample, series, Some(4.82649)),
        v("dplus_improved_per_attempt", "coins per attempt, interleaved proposal (sigma=1)", improved.per_attempt, series, Some(2.54149)),
        v("dplus_improved_per_sample", "coins per sample, interleaved proposal (sigma=1)", improved.per_sample, series, Some(3.68399)),
        v("step4_karney", "deviates accepting x per trial, kernel composition", step4, quad, Some(2.19414)),
        v("step34_improved", "deviates accepting x per trial, split coins", step34_cost_improved(), quad, Some(2.01799)),
        v("rejection_rate", "proposal attempts per normal sample", rejection_rate(), Method::ClosedForm, Some(2.03)),
        v("von_neumann_exp_deviates", "deviates per exponential sample, von Neumann", E / (1.0 - (-1.0f64).exp()), Method::ClosedForm, Some(4.30)),
        v("early_reject_exp_deviates", "deviates per exponential sample, early rejection", E.sqrt() / (1.0 - 1.0 / E.sqrt()), Method::ClosedForm, Some(4.19)),
        v("half_square_deviates", "mean deviates per B(exp(-x^2/2)) coin, uniform x", half_square_cost_mean(), quad, None),
        v("trials_per_sample", "(k, x) trials per normal sample", trials_per_sample, series, None),
        v("step4_karney_per_sample", "deviates accepting x per normal sample, kernel composition", step4 * trials_per_sample, quad, None),
    ]
}

pub fn lookup(name: &str) -> Option<OracleValue> {
    reference_constants().into_iter().find(|v| v.name == name)
}
