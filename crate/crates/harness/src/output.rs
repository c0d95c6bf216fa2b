//! Sample emitters.

use std::io::Write;

use exact_gauss::{discrete, normal, DiscreteVariant, NormalAlgorithm, RandomSource, SigmaParam};
use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

pub const NORMAL_CSV_HEADER: &str = "sign,k,frac_bits_hex,precision,value";
pub const DGAUSS_CSV_HEADER: &str = "k";

#[derive(Debug, Serialize)]
pub struct NormalRecord {
    pub sign: i8,
    pub k: u64,
    pub frac_bits_hex: String,
    pub precision: u32,
    pub value: String,
}

pub fn write_normal<W: Write>(
    out: &mut W,
    algorithm: NormalAlgorithm,
    n: u64,
    bits: u32,
    seed: u64,
    precision: u32,
    format: Format,
) -> Result<()> {
    let mut src = RandomSource::new(seed, bits)?;
    if format == Format::Csv {
        writeln!(out, "{NORMAL_CSV_HEADER}")?;
    }
    for _ in 0..n {
        let mut s = normal::sample(algorithm, &mut src).sample;
        let d = s.finalize(precision, &mut src)?;
        let rec = NormalRecord {
            sign: d.sign(),
            k: d.integer(),
            frac_bits_hex: d.frac_bits_hex(),
            precision,
            value: d.to_decimal_string(),
        };
        match format {
            Format::Csv => {
                writeln!(out, "{},{},{},{},{}", rec.sign, rec.k, rec.frac_bits_hex, rec.precision, rec.value)?
            }
            Format::Jsonl => writeln!(out, "{}", serde_json::to_string(&rec).expect("plain record"))?,
        }
    }
    Ok(())
}

pub fn write_dgauss<W: Write>(
    out: &mut W,
    variant: DiscreteVariant,
    sigma: &SigmaParam,
    n: u64,
    bits: u32,
    seed: u64,
    format: Format,
) -> Result<()> {
    let mut src = RandomSource::new(seed, bits)?;
    if format == Format::Csv {
        writeln!(out, "{DGAUSS_CSV_HEADER}")?;
    }
    for _ in 0..n {
        let k = discrete::sample(variant, sigma, &mut src).value;
        match format {
            Format::Csv => writeln!(out, "{k}")?,
            Format::Jsonl => writeln!(out, "{{\"k\":{k}}}")?,
        }
    }
    Ok(())
}
