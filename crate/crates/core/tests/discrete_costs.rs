use exact_gauss::discrete::{pmf_dplus, sample};
use exact_gauss::oracle;
use exact_gauss::{DiscreteVariant, RandomSource, Rational, SigmaParam};

const N: u64 = 1_000_000;

struct Run {
    draws: u64,
    attempts: u64,
    counts: Vec<u64>,
}

fn run(variant: DiscreteVariant, sigma: Rational, seed: u64) -> Run {
    let p = SigmaParam::new(sigma).unwrap();
    let mut src = RandomSource::new(seed, 8).unwrap();
    let mut r = Run { draws: 0, attempts: 0, counts: vec![0; 64] };
    for _ in 0..N {
        let s = sample(variant, &p, &mut src);
        r.draws += s.bern_draws;
        r.attempts += s.attempts;
        r.counts[(s.value as usize).min(63)] += 1;
    }
    r
}

fn chi2(counts: &[u64], sigma: f64, bins: usize) -> f64 {
    let n: u64 = counts.iter().sum();
    let mut stat = 0.0;
    let mut head = 0.0;
    for (k, &obs) in counts.iter().enumerate().take(bins) {
        let e = pmf_dplus(sigma, k as u64, 1e-15) * n as f64;
        head += e;
        stat += (obs as f64 - e).powi(2) / e;
    }
    let tail_obs: u64 = counts[bins..].iter().sum();
    let tail_exp = n as f64 - head;
    stat + (tail_obs as f64 - tail_exp).powi(2) / tail_exp
}

#[test]
fn karney_variant_draw_count() {
    let r = run(DiscreteVariant::Karney, Rational::one(), 21);
    let mean = r.draws as f64 / N as f64;
    assert!((mean - 4.8265).abs() < 0.02, "mean draws {mean}");
    let accept = N as f64 / r.attempts as f64;
    assert!((accept - 0.689875).abs() < 0.002, "acceptance {accept}");
    let cost = oracle::dplus_cost_karney(1.0).unwrap();
    assert!((mean - cost.per_sample).abs() < 0.02);
}

#[test]
fn improved_variant_draw_count() {
    let r = run(DiscreteVariant::Improved, Rational::one(), 22);
    let mean = r.draws as f64 / N as f64;
    assert!((mean - 3.684).abs() < 0.02, "mean draws {mean}");
    let accept = N as f64 / r.attempts as f64;
    assert!((accept - 0.689875).abs() < 0.002, "acceptance {accept}");
}

#[test]
fn both_variants_fit_the_pmf() {
    // 0.999 quantile of chi-square with 6 degrees of freedom.
    for variant in [DiscreteVariant::Karney, DiscreteVariant::Improved] {
        let r = run(variant, Rational::one(), 23);
        let stat = chi2(&r.counts, 1.0, 6);
        assert!(stat < 22.458, "{variant:?}: chi2 {stat}");
        let r = run(variant, Rational::new(3, 2).unwrap(), 24);
        let stat = chi2(&r.counts, 1.5, 6);
        assert!(stat < 22.458, "{variant:?} sigma 3/2: chi2 {stat}");
    }
}

#[test]
fn larger_sigma_costs_more() {
    let small = run(DiscreteVariant::Improved, Rational::one(), 25);
    let large = run(DiscreteVariant::Improved, Rational::new(3, 1).unwrap(), 26);
    assert!(large.draws > small.draws);
    let predicted = oracle::dplus_cost_improved(3.0).unwrap().per_sample;
    let mean = large.draws as f64 / N as f64;
    assert!((mean - predicted).abs() < 0.01 * predicted, "mean {mean} predicted {predicted}");
}
