//! Seeded random sweeps: sample quotient sequences with moduli in a band
//! around the degree's threshold, certify, and verify with the oracles.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use zerocert::certifier::{certify_cubic, certify_even, certify_odd};
use zerocert::constants::{b_even, cubic_sharp_constant};
use zerocert::polyseries::{from_quotients, QuotientSeq};
use zerocert::rootlab::{verify_annuli, AnnulusVerdict, RootConfig};
use zerocert::Error;

pub fn run(
    compact: bool,
    degree: usize,
    trials: usize,
    margin_low: f64,
    margin_high: f64,
    seed: u64,
) -> Result<i32, Error> {
    if trials == 0 {
        return Err(Error::BadParameter("--trials must be at least 1".into()));
    }
    if degree < 2 {
        return Err(Error::DegreeTooSmall(degree));
    }
    if margin_low >= margin_high || margin_low.is_nan() || margin_high.is_nan() {
        return Err(Error::BadParameter(format!(
            "margin band [{margin_low}, {margin_high}] is empty"
        )));
    }
    let threshold = if degree == 3 {
        cubic_sharp_constant()
    } else if degree.is_multiple_of(2) {
        b_even((degree / 2) as u32)
    } else {
        b_even(degree.div_ceil(2) as u32)
    };
    let cfg = RootConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Complex64::new(1.0, 0.0);

    let mut certified = 0usize;
    let mut condition_fails = 0usize;
    let mut verify_pass = 0usize;
    let mut verify_fail = 0usize;
    let mut abstain = 0usize;
    let mut min_gap = f64::INFINITY;
    for _ in 0..trials {
        let q: Vec<Complex64> = (0..degree - 1)
            .map(|_| {
                let modulus = (threshold + rng.gen_range(margin_low..margin_high)).max(0.05);
                Complex64::from_polar(modulus, rng.gen_range(0.0..TAU))
            })
            .collect();
        let p = from_quotients(&QuotientSeq::new(one, one, q)?)?;
        let cert = if degree == 3 {
            certify_cubic(&p)
        } else if degree.is_multiple_of(2) {
            certify_even(&p)
        } else {
            certify_odd(&p)
        };
        if cert.is_certified() {
            certified += 1;
        } else {
            condition_fails += 1;
        }
        let v = verify_annuli(&p, &cfg)?;
        min_gap = min_gap.min(v.report.min_modulus_gap);
        match v.verdict {
            AnnulusVerdict::Pass => verify_pass += 1,
            AnnulusVerdict::ContourAbstain => abstain += 1,
            AnnulusVerdict::Fail | AnnulusVerdict::Mismatch => {
                // only an alarm when the certificate promised the layout
                if cert.is_certified() {
                    verify_fail += 1;
                }
            }
        }
    }
    let doc = json!({
        "tool": "zerocert",
        "version": env!("CARGO_PKG_VERSION"),
        "command": "sweep",
        "result": {
            "degree": degree,
            "threshold": threshold,
            "trials": trials,
            "seed": seed,
            "margin_band": [margin_low, margin_high],
            "certified": certified,
            "condition_fails": condition_fails,
            "verify_pass": verify_pass,
            "verify_fail": verify_fail,
            "guard_abstain": abstain,
            "min_modulus_gap": if min_gap.is_finite() { json!(min_gap) } else { json!(null) },
        },
    });
    if compact {
        println!("{doc}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    }
    Ok(if verify_fail > 0 { 2 } else { 0 })
}
