use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exact-gauss")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sample_normal_jsonl_schema() {
    let o = run(&["sample", "normal", "--algorithm", "improved", "--n", "3", "--seed", "1", "--precision", "53", "--format", "jsonl"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 5);
        for k in ["sign", "k", "frac_bits_hex", "precision", "value"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(v["precision"], 53);
        let sign = v["sign"].as_i64().unwrap();
        let value = v["value"].as_str().unwrap();
        assert_eq!(sign < 0, value.starts_with('-'));
    }
}

#[test]
fn value_matches_integer_and_fraction_bits() {
    let o = run(&["sample", "normal", "--n", "50", "--seed", "4", "--precision", "12", "--format", "csv", "--bits", "4"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("sign,k,frac_bits_hex,precision,value"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let sign: f64 = f[0].parse().unwrap();
        let k: f64 = f[1].parse().unwrap();
        let frac = u64::from_str_radix(f[2], 16).unwrap() as f64 / 4096.0;
        let value: f64 = f[4].parse().unwrap();
        assert_eq!(value, sign * (k + frac));
    }
}

#[test]
fn sample_dgauss_non_negative() {
    let o = run(&["sample", "dgauss", "--sigma", "3/2", "--variant", "improved", "--n", "5", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let values: Vec<u64> = text.lines().skip(1).map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 5);
}

#[test]
fn same_flags_same_bytes() {
    for args in [
        &["sample", "normal", "--n", "200", "--seed", "9", "--bits", "1", "--algorithm", "karney"][..],
        &["sample", "dgauss", "--n", "200", "--seed", "9", "--sigma", "2"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sample", "normal", "--bits", "3"][..],
        &["sample", "normal", "--algorithm", "nope"][..],
        &["sample", "dgauss", "--sigma", "2/3"][..],
        &["sample", "normal", "--format", "xml"][..],
        &["oracle", "no_such_value"][..],
        &["oracle"][..],
        &["verify", "all", "--n", "10"][..],
        &["stat", "ks", "--n", "0"][..],
        &["enumerate", "bern_exp_half", "--depth", "31"][..],
        &["frobnicate"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn oracle_list_has_published_rows() {
    let o = run(&["oracle", "--list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("step4_karney,") && l.contains("2.19414")));
    assert!(text.lines().any(|l| l.starts_with("dplus_accept_prob,") && l.contains("0.689875")));
    let o = run(&["oracle", "step34_improved"]);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn enumerate_selector_brackets() {
    let o = run(&["enumerate", "selector_c4", "--depth", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_bernoulli_passes() {
    let o = run(&["verify", "bernoulli", "--n", "100000", "--seed", "3,4"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().next(), Some("quantity,seed,n,predicted,measured,tolerance,pass"));
    assert!(text.lines().any(|l| l.starts_with("exp_half.deviates,3,") && l.ends_with(",true")));
    assert!(text.lines().any(|l| l.contains(",4,")));
}

#[test]
fn stat_reports_pass() {
    let o = run(&["stat", "chi2", "--variant", "karney", "--sigma", "3/2", "--n", "200000", "--seed", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["stat", "ks", "--algorithm", "karney", "--n", "20000", "--seed", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn bench_csv_shape() {
    let o = run(&["bench", "--algorithm", "karney,improved-b", "--bits", "1,16", "--n", "2000", "--reps", "1", "--seed", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("algorithm,digit_size,n,samples_per_second,mean_deviates,mean_bits,mean_attempts,seed")
    );
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert_eq!(r.len(), 8);
        assert_eq!(r[7], "5");
    }
}
