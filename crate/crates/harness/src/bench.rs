//! Throughput of the normal samplers across digit sizes.

use std::fmt;
use std::time::Instant;

use exact_gauss::{normal, DigitSize, NormalAlgorithm, RandomSource};
use serde::Serialize;

use crate::error::{HarnessError, Result};

pub const DEFAULT_REPS: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub digit_size: u32,
    pub n: u64,
    /// Median over repetitions.
    pub samples_per_second: f64,
    pub mean_deviates: f64,
    pub mean_bits: f64,
    pub mean_attempts: f64,
    pub seed: u64,
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str =
        "algorithm,digit_size,n,samples_per_second,mean_deviates,mean_bits,mean_attempts,seed";
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:.0},{:.4},{:.4},{:.4},{}",
            self.algorithm,
            self.digit_size,
            self.n,
            self.samples_per_second,
            self.mean_deviates,
            self.mean_bits,
            self.mean_attempts,
            self.seed
        )
    }
}

/// Samples drawn per cell before moving to the next one.
const CHUNK: u64 = 2_000;

/// One `(algorithm, digit size)` cell of a repetition.
struct Cell {
    algorithm: NormalAlgorithm,
    src: RandomSource,
    done: u64,
    seconds: f64,
    attempts: u64,
}

impl Cell {
    fn new(algorithm: NormalAlgorithm, size: DigitSize, seed: u64) -> Result<Self> {
        let src = RandomSource::new(seed, size.bits())?;
        Ok(Self { algorithm, src, done: 0, seconds: 0.0, attempts: 0 })
    }

    fn advance(&mut self, count: u64) {
        let start = Instant::now();
        for _ in 0..count {
            self.attempts += std::hint::black_box(normal::sample(self.algorithm, &mut self.src)).attempts;
        }
        self.seconds += start.elapsed().as_secs_f64();
        self.done += count;
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Runs every `(algorithm, digit size)` pair `reps` times. Within a
/// repetition the cells advance in round-robin chunks, so slow drift in
/// machine load is shared by all of them.
pub fn run(
    algorithms: &[NormalAlgorithm],
    sizes: &[DigitSize],
    n: u64,
    seed: u64,
    reps: usize,
) -> Result<Vec<BenchRecord>> {
    if n == 0 || reps == 0 {
        return Err(HarnessError::InvalidArgument("n and reps must be positive".into()));
    }
    let pairs: Vec<(NormalAlgorithm, DigitSize)> =
        algorithms.iter().flat_map(|&a| sizes.iter().map(move |&s| (a, s))).collect();
    let mut rates = vec![Vec::with_capacity(reps); pairs.len()];
    let mut last = Vec::new();
    for _ in 0..reps {
        let mut cells = pairs.iter().map(|&(a, s)| Cell::new(a, s, seed)).collect::<Result<Vec<_>>>()?;
        while cells[0].done < n {
            let count = CHUNK.min(n - cells[0].done);
            for cell in &mut cells {
                cell.advance(count);
            }
        }
        for (rate, cell) in rates.iter_mut().zip(&cells) {
            rate.push(n as f64 / cell.seconds);
        }
        last = cells;
    }
    Ok(pairs
        .iter()
        .zip(rates)
        .zip(last)
        .map(|((&(a, s), r), cell)| {
            let c = cell.src.counters();
            BenchRecord {
                algorithm: a.id().to_string(),
                digit_size: s.bits(),
                n,
                samples_per_second: median(r),
                mean_deviates: c.deviates as f64 / n as f64,
                mean_bits: c.bits as f64 / n as f64,
                mean_attempts: cell.attempts as f64 / n as f64,
                seed,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_row_per_cell() {
        let rows = run(&NormalAlgorithm::ALL, &DigitSize::ALL, 200, 3, 1).unwrap();
        assert_eq!(rows.len(), 12);
        for r in &rows {
            assert!(r.samples_per_second > 0.0 && r.mean_deviates > 0.0 && r.mean_bits > 0.0);
            assert!(r.mean_attempts >= 1.0);
            assert_eq!(r.to_string().split(',').count(), BenchRecord::CSV_HEADER.split(',').count());
        }
    }

    #[test]
    fn counts_are_deterministic() {
        let a = run(&[NormalAlgorithm::Karney], &[DigitSize::Four], 500, 9, 2).unwrap();
        let b = run(&[NormalAlgorithm::Karney], &[DigitSize::Four], 500, 9, 1).unwrap();
        assert_eq!(a[0].mean_bits, b[0].mean_bits);
        assert_eq!(a[0].mean_deviates, b[0].mean_deviates);
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
