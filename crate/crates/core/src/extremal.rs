//! Sharpness witnesses: polynomials at or near the thresholds that carry a
//! multiple root (complex case) or a nonreal pair (real case).

use num_complex::Complex64;

use crate::constants::{b_even, b_infinity};
use crate::error::{Error, Result};
use crate::polyseries::{quotients, ComplexPoly};

/// `c^(m/2)` for integer `m`, computed through exp-log so half-integer
/// exponents stay exact.
fn half_power(c: f64, m: u64) -> f64 {
    (c.ln() * m as f64 / 2.0).exp()
}

/// The self-reciprocal witness of degree `2n`: coefficients `c^(k(2n-k)/2)`
/// with the middle term's sign flipped, so every quotient has modulus `c`.
/// At `c = b(2n)` it acquires a double root at `z = 1`.
pub fn extremal_even(n: u32, c: f64) -> Result<ComplexPoly> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    if c <= 1.0 || !c.is_finite() {
        return Err(Error::BadParameter(format!("c must exceed 1, got {c}")));
    }
    let peak = c.ln() * (n as f64).powi(2) / 2.0;
    if peak > 700.0 {
        return Err(Error::CoefficientRange {
            index: n as usize,
            magnitude: peak.exp(),
        });
    }
    let two_n = 2 * n as u64;
    let coeffs = (0..=two_n)
        .map(|k| {
            let mag = half_power(c, k * (two_n - k));
            let value = if k == n as u64 { -mag } else { mag };
            Complex64::new(value, 0.0)
        })
        .collect();
    ComplexPoly::new(coeffs)
}

/// Multiply by the linear factor `(1 + z/d)`.
fn multiply_linear_factor(coeffs: &[Complex64], d: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(coeffs[0]);
    for k in 1..coeffs.len() {
        out.push(coeffs[k] + coeffs[k - 1] / d);
    }
    out.push(coeffs[coeffs.len() - 1] / d);
    out
}

/// Odd-degree witness: the double-rooted even witness times `(1 + z/d)`.
/// The double root stays at `z = 1`; as `d` grows the first `2n` quotients
/// approach their even-witness values while the last one blows up.
pub fn extremal_odd(n: u32, d: f64) -> Result<ComplexPoly> {
    if d <= 0.0 || !d.is_finite() {
        return Err(Error::BadParameter(format!("d must be positive, got {d}")));
    }
    let base = extremal_even(n, b_even(n))?;
    let coeffs = multiply_linear_factor(base.coeffs(), d);
    for (index, c) in coeffs.iter().enumerate() {
        if c.norm() == 0.0 {
            return Err(Error::ZeroCoefficient(index));
        }
    }
    ComplexPoly::new(coeffs)
}

/// A finite truncation of the entire-function witness.
#[derive(Clone, Debug)]
pub struct EntireTruncation {
    pub poly: ComplexPoly,
    /// Half-degree of the seed witness.
    pub n0: u32,
    /// The factor offsets `d_j` chosen by the search, `d_j > 2^j`.
    pub factors_d: Vec<f64>,
}

/// Build `T_J = P * prod_{j=1..J} (1 + z/d_j)` where `P` is the even witness
/// at its own threshold and each `d_j` is found by doubling from
/// `max(2^j + 1, d_{j-1})` until every quotient modulus clears the running
/// budget `b_infinity - eps/3 - sum_{l<=j} eps/2^(l+1)`. The double root at
/// `z = 1` survives every factor and all quotients stay above
/// `b_infinity - eps`.
pub fn extremal_entire_truncation(n0: u32, eps: f64, levels: u32) -> Result<EntireTruncation> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::BadParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let binf = b_infinity();
    let n0 = if n0 == 0 {
        (1..=64)
            .find(|&n| b_even(n) > binf - eps / 3.0)
            .ok_or_else(|| {
                Error::BadParameter(format!("no seed half-degree reaches b_infinity - {eps}/3"))
            })?
    } else {
        if b_even(n0) <= binf - eps / 3.0 {
            return Err(Error::BadParameter(format!(
                "seed half-degree {n0} does not reach b_infinity - eps/3"
            )));
        }
        n0
    };
    let mut coeffs = extremal_even(n0, b_even(n0))?.into_coeffs();
    let mut budget = binf - eps / 3.0;
    let mut factors_d = Vec::with_capacity(levels as usize);
    let mut d_prev = 0.0f64;
    for j in 1..=levels {
        budget -= eps / 2f64.powi(j as i32 + 1);
        let mut d = (2f64.powi(j as i32) + 1.0).max(d_prev);
        let mut accepted = None;
        let mut worst_index = 0;
        for _ in 0..60 {
            let candidate = multiply_linear_factor(&coeffs, d);
            if candidate.iter().all(|c| c.norm() > 0.0) {
                let poly = ComplexPoly::with_max_degree(candidate.clone(), usize::MAX)?;
                let moduli = quotients(&poly).moduli();
                match moduli.iter().enumerate().find(|(_, &m)| m <= budget) {
                    None => {
                        accepted = Some(candidate);
                        break;
                    }
                    Some((i, _)) => worst_index = i + 2,
                }
            }
            d *= 2.0;
        }
        let Some(candidate) = accepted else {
            return Err(Error::FactorSearch {
                doublings: 60,
                index: worst_index,
            });
        };
        coeffs = candidate;
        factors_d.push(d);
        d_prev = d;
    }
    Ok(EntireTruncation {
        poly: ComplexPoly::with_max_degree(coeffs, usize::MAX)?,
        n0,
        factors_d,
    })
}

/// Real counterexample `Q(x) = P(x) + delta x^n` built on the even witness
/// at its threshold: strictly positive on `[0, inf)` yet carrying nonreal
/// roots, with quotient moduli still at or above `b(2n)` except the one
/// perturbed index.
pub fn real_counterexample(n: u32, delta: f64) -> Result<ComplexPoly> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    let c = b_even(n);
    let limit = half_power(c, (n as u64).pow(2));
    if !delta.is_finite() || delta <= 0.0 || delta >= limit {
        return Err(Error::BadParameter(format!(
            "delta must lie in (0, {limit:.6e}) to keep the middle coefficient negative"
        )));
    }
    let mut coeffs = extremal_even(n, c)?.into_coeffs();
    coeffs[n as usize] += delta;
    ComplexPoly::new(coeffs)
}

/// The sharp cubic witness: both quotient moduli equal `sqrt(9 + 6 sqrt 3)`
/// and the discriminant vanishes.
pub fn cubic_extremal() -> ComplexPoly {
    let c = crate::constants::cubic_sharp_constant();
    ComplexPoly::new(vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0 / c, 0.0),
        Complex64::new(-1.0 / (c * c * c), 0.0),
    ])
    .expect("fixed nonzero coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::{certify_even, Verdict};
    use crate::polyseries::{derivative_scale, eval_scale};
    use crate::rootlab::{find_roots_poly, RootConfig};
    use num_complex::Complex64;

    fn relative_residuals_at_one(p: &ComplexPoly) -> (f64, f64) {
        let one = Complex64::new(1.0, 0.0);
        let (v, d) = p.eval_with_derivative(one);
        (
            v.norm() / eval_scale(p.coeffs(), 1.0),
            d.norm() / derivative_scale(p.coeffs(), 1.0),
        )
    }

    #[test]
    fn degree_two_witness_is_a_perfect_square() {
        let p = extremal_even(1, 4.0).unwrap();
        assert_eq!(p.coeffs()[0], Complex64::new(1.0, 0.0));
        assert_eq!(p.coeffs()[1], Complex64::new(-2.0, 0.0));
        assert_eq!(p.coeffs()[2], Complex64::new(1.0, 0.0));
        assert!((quotients(&p).quotient(2).norm() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn witness_is_self_reciprocal_exactly() {
        for n in 1..=8u32 {
            for c in [2.0, 4.5, 8.0] {
                let p = extremal_even(n, c).unwrap();
                let a = p.coeffs();
                for k in 0..a.len() {
                    assert_eq!(a[k], a[a.len() - 1 - k], "n={n} c={c} k={k}");
                }
            }
        }
    }

    #[test]
    fn witness_quotients_all_have_modulus_c() {
        for n in 1..=6u32 {
            for c in [3.0, 5.0, 7.0] {
                let p = extremal_even(n, c).unwrap();
                for m in quotients(&p).moduli() {
                    assert!((m - c).abs() < 1e-9 * c, "n={n} c={c} modulus {m}");
                }
            }
        }
    }

    #[test]
    fn witness_has_double_root_at_one_at_threshold() {
        for n in 1..=10u32 {
            let p = extremal_even(n, b_even(n)).unwrap();
            let (rv, rd) = relative_residuals_at_one(&p);
            assert!(rv < 1e-9, "value residual {rv:e} at n = {n}");
            assert!(rd < 1e-9, "derivative residual {rd:e} at n = {n}");
        }
    }

    #[test]
    fn threshold_is_bracketed_by_certification() {
        for n in [1u32, 2, 3] {
            let at = extremal_even(n, b_even(n)).unwrap();
            assert_eq!(certify_even(&at).verdict, Verdict::ConditionFails);
            let above = extremal_even(n, b_even(n) + 1e-6).unwrap();
            assert_eq!(certify_even(&above).verdict, Verdict::Certified);
            let report = find_roots_poly(&above, &RootConfig::default()).unwrap();
            assert!(report.converged);
            assert!(report.min_pairwise_distance > 0.0);
        }
    }

    #[test]
    fn witness_range_guard_fires() {
        assert!(matches!(
            extremal_even(64, 8.0),
            Err(Error::CoefficientRange { .. })
        ));
    }

    #[test]
    fn odd_witness_keeps_double_root_at_one() {
        for n in 1..=3u32 {
            let q = extremal_odd(n, 1e4).unwrap();
            assert_eq!(q.degree(), 2 * n as usize + 1);
            let (rv, rd) = relative_residuals_at_one(&q);
            assert!(rv < 1e-11, "n = {n}: value residual {rv:e}");
            assert!(rd < 1e-11, "n = {n}: derivative residual {rd:e}");
        }
    }

    #[test]
    fn odd_witness_margins_tighten_as_d_grows() {
        for n in 1..=2u32 {
            let b = b_even(n);
            let mut prev = f64::INFINITY;
            for d in [1e3, 1e4, 1e5] {
                let q = extremal_odd(n, d).unwrap();
                let moduli = quotients(&q).moduli();
                let worst = moduli[..2 * n as usize - 1]
                    .iter()
                    .map(|m| (m - b).abs())
                    .fold(0.0, f64::max);
                assert!(worst < prev, "n={n} d={d}: {worst} !< {prev}");
                prev = worst;
            }
            // the limit behavior: margins fall within 1e-3 once d is large enough
            assert!(prev < 1e-3, "n={n}: residual margin {prev}");
        }
    }

    #[test]
    fn odd_witness_top_quotient_blows_up() {
        for n in 1..=3u32 {
            let q = extremal_odd(n, 1e4).unwrap();
            let s = quotients(&q);
            let top = s.quotient(2 * n as usize + 1).norm();
            assert!(top > 10.0 * b_even(n), "n = {n}: top quotient {top}");
        }
    }

    #[test]
    fn entire_truncation_meets_its_budget() {
        let t = extremal_entire_truncation(0, 0.1, 8).unwrap();
        assert_eq!(t.n0, 2);
        assert_eq!(t.factors_d.len(), 8);
        for (j, d) in t.factors_d.iter().enumerate() {
            assert!(*d > 2f64.powi(j as i32 + 1), "d_{} = {d}", j + 1);
        }
        let floor = b_infinity() - 0.1;
        for m in quotients(&t.poly).moduli() {
            assert!(m > floor, "quotient modulus {m} under {floor}");
        }
        let (rv, rd) = {
            let one = Complex64::new(1.0, 0.0);
            let (v, d) = t.poly.eval_with_derivative(one);
            (
                v.norm() / eval_scale(t.poly.coeffs(), 1.0),
                d.norm() / derivative_scale(t.poly.coeffs(), 1.0),
            )
        };
        assert!(rv < 1e-8 && rd < 1e-8, "residuals {rv:e}, {rd:e}");
    }

    #[test]
    fn entire_truncation_rejects_bad_seed() {
        assert!(extremal_entire_truncation(1, 0.01, 2).is_err());
    }

    #[test]
    fn counterexample_degree_two_is_explicit() {
        let q = real_counterexample(1, 0.5).unwrap();
        assert_eq!(q.coeffs()[1], Complex64::new(-1.5, 0.0));
        let m = quotients(&q).quotient(2);
        assert!((m.re - 2.25).abs() < 1e-12);

        let q = real_counterexample(1, 0.1).unwrap();
        assert!((quotients(&q).quotient(2).re - 3.61).abs() < 1e-12);
    }

    #[test]
    fn counterexample_is_positive_on_the_half_line() {
        for n in 1..=3u32 {
            let q = real_counterexample(n, 1e-3).unwrap();
            for i in 0..=10_000 {
                let x = i as f64 * 0.01;
                let v = q.eval(Complex64::new(x, 0.0)).re;
                assert!(v > 0.0, "n = {n}: Q({x}) = {v}");
            }
        }
    }

    #[test]
    fn counterexample_has_nonreal_roots_and_tight_margins() {
        for n in 1..=3u32 {
            let b = b_even(n);
            let q = real_counterexample(n, 1e-3).unwrap();
            let report = find_roots_poly(&q, &RootConfig::default()).unwrap();
            assert!(report.converged);
            let max_im = report.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            assert!(max_im > 1e-4, "n = {n}: largest |Im| = {max_im:e}");
            for (k, m) in quotients(&q).moduli().iter().enumerate() {
                assert!(m > &(b - 0.01), "n = {n}: |q_{}| = {m}", k + 2);
            }
        }
    }

    #[test]
    fn counterexample_rejects_delta_outside_range() {
        assert!(real_counterexample(1, 0.0).is_err());
        assert!(real_counterexample(1, 2.0).is_err());
        assert!(real_counterexample(1, -0.5).is_err());
    }

    #[test]
    fn cubic_witness_quotients() {
        let q3 = cubic_extremal();
        let s = quotients(&q3);
        let c = crate::constants::cubic_sharp_constant();
        assert!((s.quotient(2) - Complex64::new(c, 0.0)).norm() < 1e-12);
        assert!((s.quotient(3) - Complex64::new(-c, 0.0)).norm() < 1e-12);
        assert!((s.quotient(2).norm() - 4.4036695).abs() < 1e-6);
    }
}
