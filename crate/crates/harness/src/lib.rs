//! Command-line harness for the exact samplers: sample output, Monte Carlo
//! verification against analytic costs, goodness-of-fit tests, exhaustive
//! bit-level enumeration and throughput benchmarks.

pub mod bench;
pub mod enumerate;
pub mod error;
pub mod measure;
pub mod output;
pub mod stats;
pub mod verify;

pub use error::{HarnessError, Result};

use exact_gauss::{DiscreteVariant, NormalAlgorithm};

/// Normal algorithm by id; `improved` is shorthand for `improved-b`.
pub fn parse_algorithm(s: &str) -> Result<NormalAlgorithm> {
    if s == "improved" {
        return Ok(NormalAlgorithm::Improved(DiscreteVariant::Improved));
    }
    NormalAlgorithm::from_id(s).ok_or_else(|| HarnessError::InvalidArgument(format!("unknown algorithm `{s}`")))
}

pub fn parse_variant(s: &str) -> Result<DiscreteVariant> {
    match s {
        "karney" => Ok(DiscreteVariant::Karney),
        "improved" => Ok(DiscreteVariant::Improved),
        _ => Err(HarnessError::InvalidArgument(format!("unknown variant `{s}`"))),
    }
}
