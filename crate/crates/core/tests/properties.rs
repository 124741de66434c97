//! Property tests for the algebraic layer: the quotient parameterization,
//! normalization, annulus radii, and the locus/discriminant identity.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use zerocert::certifier::{certify_even, certify_odd, certify_uniform};
use zerocert::cubic::{discriminant3, multiple_root_locus_residual, CubicParams};
use zerocert::polyseries::{from_quotients, normalize, quotients, radii, QuotientSeq};
use zerocert::rootlab::{find_roots_poly, winding_count, RootConfig};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn polar(m: f64, a: f64) -> Complex64 {
    Complex64::from_polar(m, a)
}

fn complex_in_annulus(lo: f64, hi: f64) -> impl Strategy<Value = Complex64> {
    (lo..hi, 0.0..TAU).prop_map(|(m, a)| polar(m, a))
}

fn quotient_seq(max_degree: usize, lo: f64, hi: f64) -> impl Strategy<Value = QuotientSeq> {
    (
        complex_in_annulus(0.5, 2.0),
        complex_in_annulus(0.5, 2.0),
        prop::collection::vec(complex_in_annulus(lo, hi), 1..max_degree),
    )
        .prop_map(|(a0, a1, q)| QuotientSeq::new(a0, a1, q).unwrap())
}

proptest! {
    // the quotient map and its inverse are a bijection on nonzero data
    #[test]
    fn quotient_round_trip(s in quotient_seq(20, 2.0, 10.0)) {
        let p = from_quotients(&s).unwrap();
        let back = quotients(&p);
        prop_assert!((back.a0 - s.a0).norm() <= 1e-12 * s.a0.norm());
        prop_assert!((back.a1 - s.a1).norm() <= 1e-12 * s.a1.norm());
        for (got, want) in back.q.iter().zip(&s.q) {
            prop_assert!((got - want).norm() <= 1e-12 * want.norm());
        }
    }

    #[test]
    fn radii_increase_when_quotients_exceed_one(s in quotient_seq(16, 1.05, 9.0)) {
        let r = radii(&s).radii;
        prop_assert!(r.iter().all(|&x| x > 0.0));
        for w in r.windows(2) {
            prop_assert!(w[1] > w[0]);
        }
        // R_k / R_{k-1} = sqrt(|q_k q_{k+1}|)
        for k in 1..r.len() {
            let expect = (s.q[k - 1].norm() * s.q[k].norm()).sqrt();
            prop_assert!((r[k] / r[k - 1] - expect).abs() <= 1e-9 * expect);
        }
    }

    #[test]
    fn normalize_is_idempotent_and_quotient_preserving(s in quotient_seq(14, 2.0, 8.0)) {
        let p = from_quotients(&s).unwrap();
        let n1 = normalize(&p).unwrap();
        prop_assert_eq!(n1.coeffs()[0], c(1.0, 0.0));
        prop_assert_eq!(n1.coeffs()[1], c(1.0, 0.0));
        let n2 = normalize(&n1).unwrap();
        for (a, b) in n1.coeffs().iter().zip(n2.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-12 * a.norm());
        }
        for (got, want) in quotients(&n1).q.iter().zip(&s.q) {
            prop_assert!((got - want).norm() <= 1e-12 * want.norm());
        }
    }

    // certification under the uniform threshold implies the parity-specific one
    #[test]
    fn uniform_certificate_dominates(s in quotient_seq(12, 4.9, 10.0)) {
        let p = from_quotients(&s).unwrap();
        if certify_uniform(&p).is_certified() {
            let parity = if p.degree().is_multiple_of(2) { certify_even(&p) } else { certify_odd(&p) };
            prop_assert!(parity.is_certified());
        }
    }
}

#[test]
fn normalized_zeros_scale_by_anchor_ratio() {
    // zeros of normalize(p) are the zeros of p times a1/a0
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cfg = RootConfig::default();
    for _ in 0..20 {
        let coeffs: Vec<Complex64> = (0..4)
            .map(|_| polar(rng.gen_range(0.5..3.0), rng.gen_range(0.0..TAU)))
            .collect();
        let p = zerocert::polyseries::ComplexPoly::new(coeffs).unwrap();
        let scaled = normalize(&p).unwrap();
        let ratio = p.coeffs()[1] / p.coeffs()[0];
        let original = find_roots_poly(&p, &cfg).unwrap();
        let normalized = find_roots_poly(&scaled, &cfg).unwrap();
        assert!(original.converged && normalized.converged);
        for (a, b) in original.roots.iter().zip(&normalized.roots) {
            assert!(
                (a * ratio - b).norm() < 1e-6 * (1.0 + b.norm()),
                "{a} * {ratio} != {b}"
            );
        }
    }
}

#[test]
fn locus_residual_is_scaled_discriminant() {
    // residual(a, b) = -a^4 b^2 * discriminant, on 500 random parameter pairs
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..500 {
        let a = polar(rng.gen_range(0.5..10.0), rng.gen_range(0.0..TAU));
        let b = polar(rng.gen_range(0.5..10.0), rng.gen_range(0.0..TAU));
        let p = CubicParams::new(a, b).unwrap().poly().unwrap();
        let d = discriminant3(p.coeffs()).unwrap();
        let lhs = multiple_root_locus_residual(a, b);
        let rhs = -a.powu(4) * b.powu(2) * d;
        let scale = lhs.norm().max(rhs.norm()).max(1e-30);
        assert!(
            (lhs - rhs).norm() / scale < 1e-8,
            "identity fails at ({a}, {b}): {lhs} vs {rhs}"
        );
    }
}

#[test]
fn winding_agrees_with_root_finder_on_random_polys() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cfg = RootConfig::default();
    let mut checked = 0;
    for _ in 0..40 {
        let degree = rng.gen_range(2..=8usize);
        let q: Vec<Complex64> = (0..degree - 1)
            .map(|_| polar(rng.gen_range(1.5..8.0), rng.gen_range(0.0..TAU)))
            .collect();
        let s = QuotientSeq::new(c(1.0, 0.0), c(1.0, 0.0), q).unwrap();
        let p = from_quotients(&s).unwrap();
        let report = find_roots_poly(&p, &cfg).unwrap();
        if !report.converged {
            continue;
        }
        let top = report.moduli_sorted.last().copied().unwrap();
        match winding_count(p.coeffs(), 2.0 * top.max(0.5), 128) {
            Ok(w) => {
                assert_eq!(w, degree as i64, "all roots inside twice the top modulus");
                checked += 1;
            }
            Err(zerocert::Error::ContourTooClose { .. }) => continue,
            Err(e) => panic!("winding failed: {e}"),
        }
    }
    assert!(checked >= 30, "too many abstentions: {checked}/40");
}
