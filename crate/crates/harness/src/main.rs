use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exact_gauss::{oracle, DigitSize, NormalAlgorithm, Rational, SigmaParam};
use exact_gauss_harness::enumerate::{self, Fixture};
use exact_gauss_harness::output::{self, Format};
use exact_gauss_harness::stats::{self, TestReport};
use exact_gauss_harness::verify::{self, Suite, VerifyRecord};
use exact_gauss_harness::{bench, parse_algorithm, parse_variant, HarnessError};

#[derive(Parser)]
#[command(name = "exact-gauss", version, about = "Exact normal and discrete Gaussian sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Source {
    /// Bits per lazily generated digit.
    #[arg(long, default_value_t = 8, value_parser = parse_bits)]
    bits: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Distribution {
    Normal,
    Dgauss,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatTest {
    Chi2,
    Ks,
    Chi2TwoSample,
    KsTwoSample,
}

#[derive(Subcommand)]
enum Command {
    /// Print finalized samples.
    Sample {
        #[arg(value_enum)]
        distribution: Distribution,
        /// karney, improved-a, improved-b (or improved).
        #[arg(long, default_value = "improved-b")]
        algorithm: String,
        /// Discrete sampler: karney or improved.
        #[arg(long, default_value = "improved")]
        variant: String,
        /// Discrete Gaussian parameter as NUM or NUM/DEN.
        #[arg(long, default_value = "1")]
        sigma: String,
        #[arg(long, default_value_t = 10)]
        n: u64,
        #[arg(long, default_value_t = 53)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[command(flatten)]
        source: Source,
    },
    /// Compare Monte Carlo costs with their predictions.
    Verify {
        /// bernoulli, dgauss, normal or all.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        /// Comma-separated seeds.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seed: Vec<u64>,
        #[arg(long, default_value_t = 8, value_parser = parse_bits)]
        bits: u32,
    },
    /// Throughput per algorithm and digit size, as CSV.
    Bench {
        /// Comma-separated algorithm ids.
        #[arg(long, value_delimiter = ',', default_value = "karney,improved-a,improved-b")]
        algorithm: Vec<String>,
        /// Comma-separated digit sizes.
        #[arg(long, value_delimiter = ',', default_value = "1,4,8,16", value_parser = parse_bits)]
        bits: Vec<u32>,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = bench::DEFAULT_REPS)]
        reps: usize,
    },
    /// Print analytic reference values.
    Oracle {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Exact probability bounds from every bit string up to a depth.
    Enumerate {
        /// bern_exp_half or selector_c4.
        fixture: String,
        #[arg(long, default_value_t = 24)]
        depth: u32,
    },
    /// Goodness-of-fit tests.
    Stat {
        #[arg(value_enum)]
        test: StatTest,
        #[arg(long, default_value = "improved-b")]
        algorithm: String,
        #[arg(long, default_value = "improved")]
        variant: String,
        #[arg(long, default_value = "1")]
        sigma: String,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 53)]
        precision: u32,
        #[command(flatten)]
        source: Source,
    },
}

fn parse_bits(s: &str) -> Result<u32, String> {
    let bits: u32 = s.parse().map_err(|e| format!("{e}"))?;
    DigitSize::from_bits(bits).map(DigitSize::bits).map_err(|e| e.to_string())
}

enum Outcome {
    Ok,
    Failed,
}

fn sigma_param(s: &str) -> Result<SigmaParam, HarnessError> {
    let r: Rational = s.parse()?;
    Ok(SigmaParam::new(r)?)
}

fn print_reports(out: &mut impl Write, reports: &[TestReport]) -> Result<Outcome, HarnessError> {
    writeln!(out, "test,n,seed,statistic,critical,pass")?;
    for r in reports {
        writeln!(out, "{},{},{},{:.6},{:.6},{}", r.test, r.n, r.seed, r.statistic, r.critical, r.pass)?;
    }
    Ok(if reports.iter().all(|r| r.pass) { Outcome::Ok } else { Outcome::Failed })
}

fn run(command: Command, out: &mut impl Write) -> Result<Outcome, HarnessError> {
    match command {
        Command::Sample { distribution, algorithm, variant, sigma, n, precision, format, source } => {
            match distribution {
                Distribution::Normal => {
                    let alg = parse_algorithm(&algorithm)?;
                    output::write_normal(out, alg, n, source.bits, source.seed, precision, format)?;
                }
                Distribution::Dgauss => {
                    let v = parse_variant(&variant)?;
                    let p = sigma_param(&sigma)?;
                    output::write_dgauss(out, v, &p, n, source.bits, source.seed, format)?;
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { suite, n, seed, bits } => {
            let suite: Suite = suite.parse()?;
            let rows = verify::run(suite, n, &seed, bits)?;
            writeln!(out, "{}", VerifyRecord::CSV_HEADER)?;
            for r in &rows {
                writeln!(out, "{r}")?;
            }
            Ok(if rows.iter().all(|r| r.pass) { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Bench { algorithm, bits, n, seed, reps } => {
            let algs = algorithm.iter().map(|a| parse_algorithm(a)).collect::<Result<Vec<_>, _>>()?;
            let sizes = bits.iter().map(|&b| DigitSize::from_bits(b)).collect::<Result<Vec<_>, _>>()?;
            let rows = bench::run(&algs, &sizes, n, seed, reps)?;
            writeln!(out, "{}", bench::BenchRecord::CSV_HEADER)?;
            for r in &rows {
                writeln!(out, "{r}")?;
            }
            Ok(Outcome::Ok)
        }
        Command::Oracle { name, list } => {
            let values = match (name, list) {
                (Some(name), _) => vec![oracle::lookup(&name).ok_or(HarnessError::UnknownOracle(name))?],
                (None, true) => oracle::reference_constants(),
                (None, false) => {
                    return Err(HarnessError::InvalidArgument("give an oracle name or --list".into()));
                }
            };
            writeln!(out, "name,value,published,method,description")?;
            for v in values {
                let published = v.published.map(|p| p.to_string()).unwrap_or_default();
                writeln!(out, "{},{:.6},{},{},{}", v.name, v.value, published, v.method, v.description)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Enumerate { fixture, depth } => {
            let fixture: Fixture = fixture.parse()?;
            let e = enumerate::enumerate(fixture, depth)?;
            writeln!(out, "fixture,outcome,depth,low_num,high_num,p_low,p_high,target,brackets")?;
            let results = e.results();
            for r in &results {
                writeln!(
                    out,
                    "{},{},{},{},{},{:.10},{:.10},{:.10},{}",
                    fixture,
                    r.outcome,
                    r.depth,
                    r.low_num,
                    r.high_num,
                    r.p_low(),
                    r.p_high(),
                    r.target,
                    r.brackets()
                )?;
            }
            Ok(if results.iter().all(|r| r.brackets()) { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Stat { test, algorithm, variant, sigma, n, precision, source } => {
            let Source { bits, seed } = source;
            let report = match test {
                StatTest::Chi2 => stats::chi2_dgauss(parse_variant(&variant)?, sigma_param(&sigma)?.sigma(), n, seed, bits)?,
                StatTest::Chi2TwoSample => stats::chi2_dgauss_two_sample(sigma_param(&sigma)?.sigma(), n, seed, bits)?,
                StatTest::Ks => stats::ks_normal(parse_algorithm(&algorithm)?, n, precision, seed, bits)?,
                StatTest::KsTwoSample => stats::ks_normal_two_sample(
                    NormalAlgorithm::Karney,
                    parse_algorithm(&algorithm)?,
                    n,
                    precision,
                    seed,
                    bits,
                )?,
            };
            print_reports(out, &[report])
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Outcome::Ok), Ok(())) => ExitCode::SUCCESS,
        (Ok(Outcome::Failed), Ok(())) => ExitCode::from(1),
        (Err(HarnessError::Io(e)), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
