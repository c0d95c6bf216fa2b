//! Monte Carlo measurements paired with their analytic predictions.

use std::fmt;
use std::str::FromStr;

use exact_gauss::{oracle, DiscreteVariant, NormalAlgorithm, Rational};
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::measure;

pub const MIN_N: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bernoulli,
    Dgauss,
    Normal,
    All,
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli" => Ok(Suite::Bernoulli),
            "dgauss" => Ok(Suite::Dgauss),
            "normal" => Ok(Suite::Normal),
            "all" => Ok(Suite::All),
            _ => Err(HarnessError::InvalidArgument(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub quantity: String,
    pub seed: u64,
    pub n: u64,
    pub predicted: f64,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerifyRecord {
    pub fn new(quantity: impl Into<String>, seed: u64, n: u64, predicted: f64, measured: f64, tolerance: f64) -> Self {
        Self {
            quantity: quantity.into(),
            seed,
            n,
            predicted,
            measured,
            tolerance,
            pass: (predicted - measured).abs() <= tolerance,
        }
    }

    pub const CSV_HEADER: &'static str = "quantity,seed,n,predicted,measured,tolerance,pass";
}

impl fmt::Display for VerifyRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:.6},{:.6},{},{}",
            self.quantity, self.seed, self.n, self.predicted, self.measured, self.tolerance, self.pass
        )
    }
}

/// Five standard errors of a proportion.
fn proportion_tol(p: f64, n: u64) -> f64 {
    5.0 * (p * (1.0 - p) / n as f64).sqrt()
}

fn q(n: u64, d: u64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

pub fn bernoulli(n: u64, seed: u64, bits: u32) -> Result<Vec<VerifyRecord>> {
    let mut rows = Vec::new();
    let m = measure::exp_neg_coin(q(1, 2), n, seed, bits)?;
    let p = (-0.5f64).exp();
    rows.push(VerifyRecord::new("exp_half.p_true", seed, n, p, m.p_true, proportion_tol(p, n)));
    rows.push(VerifyRecord::new("exp_half.deviates", seed, n, oracle::expected_deviates_exp(0.5), m.mean_deviates, 0.01));

    let m = measure::xy_coin(q(1, 2), q(1, 2), n, seed, bits)?;
    let predicted = oracle::alg6_cost(0.5, 0.5);
    rows.push(VerifyRecord::new("exp_xy(1/2,1/2).deviates", seed, n, predicted, m.mean_deviates, 0.01 * predicted));

    for (k, x) in [(0u64, Rational::one()), (1, q(1, 2)), (2, q(1, 2))] {
        let m = measure::kernel_coin(k, x, n, seed, bits)?;
        let xf = x.to_f64();
        let predicted = if k == 0 { oracle::alg3_cost_k0(xf) } else { oracle::alg3_cost(k, xf) };
        let p = 1.0 / oracle::tau(k, xf);
        rows.push(VerifyRecord::new(format!("kernel({k},{x}).p_true"), seed, n, p, m.p_true, proportion_tol(p, n)));
        rows.push(VerifyRecord::new(format!("kernel({k},{x}).deviates"), seed, n, predicted, m.mean_deviates, 0.01 * predicted));
    }

    let m = measure::half_square_coin(n, seed, bits)?;
    rows.push(VerifyRecord::new("half_square.deviates", seed, n, oracle::half_square_cost_mean(), m.mean_deviates, 0.01));
    Ok(rows)
}

pub fn dgauss(n: u64, seed: u64, bits: u32) -> Result<Vec<VerifyRecord>> {
    let karney = oracle::dplus_cost_karney(1.0)?;
    let improved = oracle::dplus_cost_improved(1.0)?;
    let mut rows = Vec::new();
    for (variant, cost, id) in [
        (DiscreteVariant::Karney, karney, "karney"),
        (DiscreteVariant::Improved, improved, "improved"),
    ] {
        let m = measure::dgauss(variant, Rational::one(), n, seed, bits)?;
        rows.push(VerifyRecord::new(format!("dgauss.{id}.draws_per_sample"), seed, n, cost.per_sample, m.mean_draws, 0.02));
        rows.push(VerifyRecord::new(format!("dgauss.{id}.accept_rate"), seed, n, cost.accept_prob, m.accept_rate, 0.002));
    }
    Ok(rows)
}

pub fn normal(n: u64, seed: u64, bits: u32) -> Result<Vec<VerifyRecord>> {
    let mut rows = Vec::new();
    for alg in NormalAlgorithm::ALL {
        let m = measure::normal_costs(alg, n, seed, bits)?;
        let step = match alg {
            NormalAlgorithm::Karney => oracle::step4_cost_karney(),
            NormalAlgorithm::Improved(_) => oracle::step34_cost_improved(),
        };
        let id = alg.id();
        rows.push(VerifyRecord::new(format!("normal.{id}.accept_deviates_per_trial"), seed, m.trials, step, m.step4_per_trial, 0.02));
        rows.push(VerifyRecord::new(
            format!("normal.{id}.attempts_per_sample"),
            seed,
            m.samples,
            oracle::rejection_rate(),
            m.attempts_per_sample,
            0.02,
        ));
    }
    Ok(rows)
}

pub fn run(suite: Suite, n: u64, seeds: &[u64], bits: u32) -> Result<Vec<VerifyRecord>> {
    if n < MIN_N {
        return Err(HarnessError::InvalidArgument(format!("verify needs n >= {MIN_N}, got {n}")));
    }
    if seeds.is_empty() {
        return Err(HarnessError::InvalidArgument("at least one seed is required".into()));
    }
    let mut rows = Vec::new();
    for &seed in seeds {
        if matches!(suite, Suite::Bernoulli | Suite::All) {
            rows.extend(bernoulli(n, seed, bits)?);
        }
        if matches!(suite, Suite::Dgauss | Suite::All) {
            rows.extend(dgauss(n, seed, bits)?);
        }
        if matches!(suite, Suite::Normal | Suite::All) {
            rows.extend(normal(n, seed, bits)?);
        }
    }
    Ok(rows)
}
