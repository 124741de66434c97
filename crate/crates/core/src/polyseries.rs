//! Polynomials with all-nonzero coefficients, the second-quotient
//! parameterization, and the annulus radii derived from it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the degree. Double precision cannot faithfully hold
/// coefficient ladders like `b^(-k^2/2)` much beyond this.
pub const DEFAULT_MAX_DEGREE: usize = 64;

const RANGE_MIN: f64 = 1e-300;
const RANGE_MAX: f64 = 1e300;

/// Dense polynomial `a0 + a1 z + ... + aw z^w` with every coefficient
/// nonzero and `w >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::with_max_degree(coeffs, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(coeffs: Vec<Complex64>, cap: usize) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::DegreeTooSmall(coeffs.len().saturating_sub(1)));
        }
        if coeffs.len() - 1 > cap {
            return Err(Error::DegreeTooLarge {
                degree: coeffs.len() - 1,
                cap,
            });
        }
        for (index, c) in coeffs.iter().enumerate() {
            if c.norm() == 0.0 || !c.is_finite() {
                return Err(Error::ZeroCoefficient(index));
            }
        }
        Ok(ComplexPoly { coeffs })
    }

    /// Real polynomial from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        horner_with_derivative(&self.coeffs, z)
    }

    /// True when every coefficient has exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// True when every coefficient is a strictly positive real.
    pub fn is_positive_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0 && c.re > 0.0)
    }
}

/// Scaled complex division (Smith's algorithm). The stock `/` squares the
/// divisor's magnitude, which drops into subnormals once `|den| < 1.5e-154`
/// and costs ~1e-12 of relative accuracy; this form never squares a
/// magnitude, so it stays exact across the whole coefficient range.
pub(crate) fn cdiv(num: Complex64, den: Complex64) -> Complex64 {
    let (a, b, c, d) = (num.re, num.im, den.re, den.im);
    if c.abs() >= d.abs() {
        let r = d / c;
        let t = 1.0 / (c + d * r);
        Complex64::new((a + b * r) * t, (b - a * r) * t)
    } else {
        let r = c / d;
        let t = 1.0 / (c * r + d);
        Complex64::new((a * r + b) * t, (b * r - a) * t)
    }
}

/// Horner evaluation.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Horner evaluation of the value and the first derivative in one pass.
pub fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// `sum_k |a_k| r^k`, the natural scale for residuals at radius `r`.
pub fn eval_scale(coeffs: &[Complex64], r: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * r + c.norm();
    }
    acc
}

/// Scale for residuals of the first derivative at radius `r`.
pub fn derivative_scale(coeffs: &[Complex64], r: f64) -> f64 {
    let mut acc = 0.0;
    for (k, c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * r + k as f64 * c.norm();
    }
    acc
}

/// Anchors `a0`, `a1` plus the quotients `q2..qw`: an equivalent,
/// independent parameterization of a `ComplexPoly`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSeq {
    pub a0: Complex64,
    pub a1: Complex64,
    /// `q[i]` holds the quotient with index `i + 2`.
    pub q: Vec<Complex64>,
}

impl QuotientSeq {
    pub fn new(a0: Complex64, a1: Complex64, q: Vec<Complex64>) -> Result<Self> {
        if a0.norm() == 0.0 {
            return Err(Error::ZeroCoefficient(0));
        }
        if a1.norm() == 0.0 {
            return Err(Error::ZeroCoefficient(1));
        }
        if q.is_empty() {
            return Err(Error::DegreeTooSmall(1));
        }
        for (i, v) in q.iter().enumerate() {
            if v.norm() == 0.0 || !v.is_finite() {
                return Err(Error::BadParameter(format!("quotient q{} is zero", i + 2)));
            }
        }
        Ok(QuotientSeq { a0, a1, q })
    }

    /// Degree of the polynomial this sequence describes.
    pub fn degree(&self) -> usize {
        self.q.len() + 1
    }

    /// The quotient with index `k`, `2 <= k <= degree`.
    pub fn quotient(&self, k: usize) -> Complex64 {
        self.q[k - 2]
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.q.iter().map(|v| v.norm()).collect()
    }
}

/// Radii `R1 < R2 < ...` (strictly increasing when all `|q| > 1`) of the
/// circles separating the zeros of a certified polynomial.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AnnulusPartition {
    pub radii: Vec<f64>,
}

/// Second quotients `q_k = a_{k-1}^2 / (a_{k-2} a_k)` of a polynomial,
/// computed as a product of two coefficient ratios so that neither the
/// numerator nor the denominator has to square a tiny magnitude.
pub fn quotients(p: &ComplexPoly) -> QuotientSeq {
    let a = p.coeffs();
    let q = (2..=p.degree())
        .map(|k| cdiv(a[k - 1], a[k - 2]) * cdiv(a[k - 1], a[k]))
        .collect();
    QuotientSeq {
        a0: a[0],
        a1: a[1],
        q,
    }
}

/// Rebuild coefficients from anchors and quotients via the running-product
/// recurrence `a_k = a_{k-1}^2 / (a_{k-2} q_k)`, which is algebraically the
/// closed power-product form but does not overflow at moderate degrees.
pub fn from_quotients(s: &QuotientSeq) -> Result<ComplexPoly> {
    let mut coeffs = Vec::with_capacity(s.q.len() + 2);
    coeffs.push(s.a0);
    coeffs.push(s.a1);
    for (i, &qk) in s.q.iter().enumerate() {
        let prev = coeffs[i + 1];
        let prev2 = coeffs[i];
        let next = cdiv(prev, prev2) * cdiv(prev, qk);
        let mag = next.norm();
        if !(RANGE_MIN..=RANGE_MAX).contains(&mag) || !next.is_finite() {
            return Err(Error::CoefficientRange {
                index: i + 2,
                magnitude: mag,
            });
        }
        coeffs.push(next);
    }
    ComplexPoly::with_max_degree(coeffs, usize::MAX)
}

/// The polynomial with `a0 = a1 = 1` and the same quotient sequence;
/// its zeros are the zeros of `p` scaled by `a1 / a0`.
pub fn normalize(p: &ComplexPoly) -> Result<ComplexPoly> {
    let mut s = quotients(p);
    s.a0 = Complex64::new(1.0, 0.0);
    s.a1 = Complex64::new(1.0, 0.0);
    from_quotients(&s)
}

/// Log-magnitudes of the annulus radii; exponentiated by [`radii`].
pub(crate) fn log_radii(s: &QuotientSeq) -> Vec<f64> {
    // The product formula describes the normalized polynomial (a0 = a1 = 1),
    // whose zeros are the input's zeros times a1/a0; scaling every radius by
    // |a0/a1| moves the circles back to the input's coordinates.
    let anchor = s.a0.norm().ln() - s.a1.norm().ln();
    let logs: Vec<f64> = s.q.iter().map(|q| q.norm().ln()).collect();
    let mut out = Vec::with_capacity(logs.len());
    let mut prefix = 0.0;
    for lq in &logs {
        // R_k = |a0/a1| * |q2 ... qk| * sqrt(|q_{k+1}|)
        out.push(anchor + prefix + 0.5 * lq);
        prefix += lq;
    }
    out
}

/// Annulus radii `R1 = sqrt|q2|`, `R_k = |q2 q3 ... q_k sqrt(q_{k+1})|`
/// (times `|a0/a1|` for non-unit anchors), accumulated in log space.
pub fn radii(s: &QuotientSeq) -> AnnulusPartition {
    AnnulusPartition {
        radii: log_radii(s).into_iter().map(f64::exp).collect(),
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    coeffs: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct QuotientWire {
    a0: [f64; 2],
    a1: [f64; 2],
    q: Vec<[f64; 2]>,
}

/// Parse the `{"coeffs": [[re, im], ...]}` wire format (ascending powers).
pub fn parse_poly(text: &str) -> Result<ComplexPoly> {
    let wire: PolyWire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    ComplexPoly::new(
        wire.coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

/// Serialize to the `{"coeffs": [[re, im], ...]}` wire format.
pub fn serialize_poly(p: &ComplexPoly) -> String {
    let wire = PolyWire {
        coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect(),
    };
    serde_json::to_string(&wire).expect("plain data serializes")
}

/// Parse the `{"a0": [re, im], "a1": [re, im], "q": [[re, im], ...]}` form.
pub fn parse_quotient_seq(text: &str) -> Result<QuotientSeq> {
    let wire: QuotientWire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    QuotientSeq::new(
        Complex64::new(wire.a0[0], wire.a0[1]),
        Complex64::new(wire.a1[0], wire.a1[1]),
        wire.q
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

/// Accept either wire format and return the polynomial it denotes.
pub fn parse_input(text: &str) -> Result<ComplexPoly> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("coeffs").is_some() {
        parse_poly(text)
    } else if value.get("q").is_some() {
        from_quotients(&parse_quotient_seq(text)?)
    } else {
        Err(Error::Parse(
            "expected an object with either a \"coeffs\" or a \"q\" field".into(),
        ))
    }
}

pub(crate) fn ser_complex_vec<S: Serializer>(
    v: &[Complex64],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(v.iter().map(|c| [c.re, c.im]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_poly(coeffs: &[f64]) -> ComplexPoly {
        ComplexPoly::from_real(coeffs).unwrap()
    }

    #[test]
    fn quotients_of_simple_polys() {
        let s = quotients(&real_poly(&[1.0, 1.0, 0.25]));
        assert_eq!(s.q.len(), 1);
        assert!((s.quotient(2) - c(4.0, 0.0)).norm() < 1e-15);

        let s = quotients(&real_poly(&[1.0, 1.0, 0.5, 1.0 / 12.0]));
        assert!((s.quotient(2) - c(2.0, 0.0)).norm() < 1e-14);
        assert!((s.quotient(3) - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quotients_complex_example() {
        let p =
            ComplexPoly::new(vec![c(2.0, 0.0), c(0.0, -4.0), c(8.0, 0.0), c(0.0, 16.0)]).unwrap();
        let s = quotients(&p);
        assert!((s.quotient(2) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((s.quotient(3) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn from_quotients_examples() {
        let s = QuotientSeq::new(c(1.0, 0.0), c(1.0, 0.0), vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let p = from_quotients(&s).unwrap();
        let expect = [1.0, 1.0, 0.5, 1.0 / 12.0];
        for (got, want) in p.coeffs().iter().zip(expect) {
            assert!((got - c(want, 0.0)).norm() < 1e-15);
        }

        let s = QuotientSeq::new(c(1.0, 0.0), c(1.0, 0.0), vec![c(4.0, 0.0)]).unwrap();
        let p = from_quotients(&s).unwrap();
        assert!((p.coeffs()[2] - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn from_quotients_range_guard() {
        // tiny quotients blow the coefficients up past the guard
        let s = QuotientSeq::new(c(1.0, 0.0), c(1e300, 0.0), vec![c(1e-12, 0.0); 3]).unwrap();
        assert!(matches!(
            from_quotients(&s),
            Err(Error::CoefficientRange { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let p = normalize(&real_poly(&[3.0, 6.0, 3.0])).unwrap();
        let expect = [1.0, 1.0, 0.25];
        for (got, want) in p.coeffs().iter().zip(expect) {
            assert!((got - c(want, 0.0)).norm() < 1e-14);
        }

        let already = real_poly(&[1.0, 1.0, 0.25]);
        assert_eq!(normalize(&already).unwrap(), already);
    }

    #[test]
    fn radii_examples() {
        let s = QuotientSeq::new(c(1.0, 0.0), c(1.0, 0.0), vec![c(9.0, 0.0); 2]).unwrap();
        let r = radii(&s).radii;
        assert!((r[0] - 3.0).abs() < 1e-12);
        assert!((r[1] - 27.0).abs() < 1e-12);

        let s = QuotientSeq::new(c(1.0, 0.0), c(1.0, 0.0), vec![c(4.0, 0.0); 4]).unwrap();
        let r = radii(&s).radii;
        for (got, want) in r.iter().zip([2.0, 8.0, 32.0]) {
            assert!((got - want).abs() < 1e-11);
        }
    }

    #[test]
    fn radii_carry_the_anchor_scale() {
        // q2 = 5 but a0/a1 = 1/2, so the separating circle sits at sqrt(5)/2
        let p = real_poly(&[1.0, 2.0, 0.8]);
        let r = radii(&quotients(&p)).radii;
        assert!((r[0] - 0.5 * 5f64.sqrt()).abs() < 1e-12);
        // roots -0.691 and -1.809 straddle it
        let disc = (4.0f64 - 3.2).sqrt();
        let lo = (-2.0 + disc) / 1.6;
        let hi = (-2.0 - disc) / 1.6;
        assert!(lo.abs() < r[0] && r[0] < hi.abs());
    }

    #[test]
    fn parse_and_serialize_round_trip() {
        let text = r#"{"coeffs":[[1,0],[1,0],[0.25,0]]}"#;
        let p = parse_poly(text).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coeffs()[2], c(0.25, 0.0));
        let back = parse_poly(&serialize_poly(&p)).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn parse_rejects_zero_coefficient_with_index() {
        let err = parse_poly(r#"{"coeffs":[[1,0],[1,0],[0,0],[1,0]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "zero coefficient at index 2");
    }

    #[test]
    fn parse_rejects_low_degree_and_garbage() {
        assert!(matches!(
            parse_poly(r#"{"coeffs":[[1,0],[2,0]]}"#),
            Err(Error::DegreeTooSmall(1))
        ));
        assert!(matches!(parse_poly("not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_input_accepts_quotient_form() {
        let p = parse_input(r#"{"a0":[1,0],"a1":[1,0],"q":[[4,0]]}"#).unwrap();
        assert!((p.coeffs()[2] - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn deep_chains_round_trip_despite_tiny_coefficients() {
        // coefficients fall to ~1e-156 here; the naive complex division
        // squares that and lands in subnormals, losing ~1e-12 of accuracy
        let q: Vec<Complex64> = (0..20)
            .map(|k| Complex64::from_polar(9.0, 0.1 + 0.3 * k as f64))
            .collect();
        let s = QuotientSeq::new(c(0.5, 0.0), c(0.5, 0.0), q).unwrap();
        let p = from_quotients(&s).unwrap();
        assert!(p.coeffs().last().unwrap().norm() < 1e-150);
        for (got, want) in quotients(&p).q.iter().zip(&s.q) {
            assert!(
                (got - want).norm() <= 1e-13 * want.norm(),
                "{got} vs {want}"
            );
        }
    }

    #[test]
    fn horner_matches_direct_sum() {
        let p = real_poly(&[2.0, -1.0, 3.0, 0.5]);
        let z = c(0.3, -1.2);
        let direct = c(2.0, 0.0) - z + 3.0 * z * z + 0.5 * z * z * z;
        assert!((p.eval(z) - direct).norm() < 1e-13);
        let (v, d) = p.eval_with_derivative(z);
        let ddirect = c(-1.0, 0.0) + 6.0 * z + 1.5 * z * z;
        assert!((v - direct).norm() < 1e-13);
        assert!((d - ddirect).norm() < 1e-13);
    }
}
