//! Exact samplers for the standard normal distribution and the discrete
//! Gaussian over the non-negative integers.
//!
//! Sampling never touches floating point: all randomness enters as lazily
//! extended uniform deviates compared digit by digit, and every draw is
//! counted so that the expected cost of each algorithm can be measured. The
//! [`oracle`] module evaluates the analytic costs these measurements are
//! checked against.
//!
//! ```
//! use exact_gauss::{normal, DiscreteVariant, NormalAlgorithm, RandomSource};
//!
//! let mut src = RandomSource::new(42, 8)?;
//! let mut stats = normal::sample(NormalAlgorithm::Improved(DiscreteVariant::Improved), &mut src);
//! let x = stats.sample.finalize(64, &mut src)?;
//! assert_eq!(x.precision(), 64);
//! assert!(src.counters().bits > 0);
//! # Ok::<(), exact_gauss::Error>(())
//! ```

pub mod bernoulli;
pub mod deviate;
pub mod discrete;
pub mod dyadic;
pub mod error;
pub mod normal;
pub mod oracle;
pub mod rational;
pub mod selector;
pub mod source;

pub use bernoulli::BernoulliOutcome;
pub use deviate::{fresh_deviate, halve, less_than, less_than_deviate, less_than_rational, Operand, Threshold, UniformDeviate};
pub use discrete::{DiscreteSampleStats, DiscreteVariant, SigmaParam};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use normal::{ExactSample, NormalAlgorithm, NormalSampleStats};
pub use rational::Rational;
pub use selector::{selector_c, SelectorOutcome};
pub use source::{BitGenerator, Counters, DigitSize, RandomSource, RngBits, Scope};
