//! Certificates: sufficient coefficient conditions for simple zeros
//! (complex case), real zeros (real case), and the Hutchinson baseline.
//!
//! A certificate never claims the converse: `CONDITION_FAILS` means the
//! sufficient condition does not hold, nothing more.

use serde::Serialize;

use crate::constants::{b_even, b_infinity, cubic_sharp_constant};
use crate::polyseries::{quotients, radii, AnnulusPartition, ComplexPoly, QuotientSeq};

/// Which sufficient condition was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    #[serde(rename = "EVEN_DEGREE")]
    EvenDegree,
    #[serde(rename = "ODD_DEGREE")]
    OddDegree,
    #[serde(rename = "TRUNCATED_ENTIRE")]
    TruncatedEntire,
    #[serde(rename = "UNIFORM")]
    Uniform,
    #[serde(rename = "CUBIC_SHARP")]
    CubicSharp,
    #[serde(rename = "REAL_EVEN")]
    RealEven,
    #[serde(rename = "REAL_ODD")]
    RealOdd,
    #[serde(rename = "REAL_CUBIC")]
    RealCubic,
    #[serde(rename = "HUTCHINSON")]
    Hutchinson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "CERTIFIED")]
    Certified,
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable,
    #[serde(rename = "CONDITION_FAILS")]
    ConditionFails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strictness {
    #[serde(rename = "STRICT")]
    Strict,
    #[serde(rename = "NON_STRICT")]
    NonStrict,
}

/// Margins within this band of the threshold are flagged so callers can
/// apply their own epsilon; the comparison itself is exact IEEE.
pub const BOUNDARY_BAND: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub verdict: Verdict,
    pub threshold: f64,
    pub strictness: Strictness,
    /// `(k, |q_k| - threshold)` for every `k = 2..=degree`.
    pub margins: Vec<(usize, f64)>,
    pub failing_indices: Vec<usize>,
    /// Indices whose margin sits within [`BOUNDARY_BAND`] of zero.
    pub boundary_indices: Vec<usize>,
    /// Present exactly when the verdict is `CERTIFIED`.
    pub radii: Option<AnnulusPartition>,
    pub note: String,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Whether this theorem's conclusion includes simplicity of the zeros.
    /// The real-case conditions conclude realness only and admit multiple
    /// zeros, so they must not drive a simple-zero verdict.
    pub fn concludes_simplicity(&self) -> bool {
        !matches!(
            self.theorem,
            Theorem::RealEven | Theorem::RealOdd | Theorem::RealCubic
        )
    }

    fn not_applicable(theorem: Theorem, threshold: f64, strictness: Strictness, why: &str) -> Self {
        Certificate {
            theorem,
            verdict: Verdict::NotApplicable,
            threshold,
            strictness,
            margins: Vec::new(),
            failing_indices: Vec::new(),
            boundary_indices: Vec::new(),
            radii: None,
            note: format!("not applicable: {why}"),
        }
    }
}

const FAIL_NOTE: &str = "sufficient condition not met; this says nothing about \
                         whether the zeros are simple or real";

fn check_quotients(
    s: &QuotientSeq,
    theorem: Theorem,
    threshold: f64,
    strictness: Strictness,
    certified_note: &str,
) -> Certificate {
    let mut margins = Vec::with_capacity(s.q.len());
    let mut failing = Vec::new();
    let mut boundary = Vec::new();
    for (i, q) in s.q.iter().enumerate() {
        let k = i + 2;
        let margin = q.norm() - threshold;
        let ok = match strictness {
            Strictness::Strict => margin > 0.0,
            Strictness::NonStrict => margin >= 0.0,
        };
        if !ok {
            failing.push(k);
        }
        if margin.abs() < BOUNDARY_BAND {
            boundary.push(k);
        }
        margins.push((k, margin));
    }
    let certified = failing.is_empty();
    Certificate {
        theorem,
        verdict: if certified {
            Verdict::Certified
        } else {
            Verdict::ConditionFails
        },
        threshold,
        strictness,
        margins,
        failing_indices: failing,
        boundary_indices: boundary,
        radii: certified.then(|| radii(s)),
        note: if certified {
            certified_note.to_string()
        } else {
            FAIL_NOTE.to_string()
        },
    }
}

const SIMPLE_DISTINCT: &str = "all zeros are simple with pairwise distinct moduli; \
                               exactly one zero per annulus between consecutive radii";

/// Even degree `2n`: `|q_k| > b(2n)` strictly for every `k`.
pub fn certify_even(p: &ComplexPoly) -> Certificate {
    let degree = p.degree();
    if !degree.is_multiple_of(2) {
        return Certificate::not_applicable(
            Theorem::EvenDegree,
            f64::NAN,
            Strictness::Strict,
            "this condition is stated for even degrees",
        );
    }
    let threshold = b_even((degree / 2) as u32);
    check_quotients(
        &quotients(p),
        Theorem::EvenDegree,
        threshold,
        Strictness::Strict,
        SIMPLE_DISTINCT,
    )
}

/// Odd degree `2n+1`: `|q_k| >= b(2n+2)`, boundary allowed.
pub fn certify_odd(p: &ComplexPoly) -> Certificate {
    let degree = p.degree();
    if degree.is_multiple_of(2) {
        return Certificate::not_applicable(
            Theorem::OddDegree,
            f64::NAN,
            Strictness::NonStrict,
            "this condition is stated for odd degrees",
        );
    }
    let threshold = b_even(degree.div_ceil(2) as u32);
    check_quotients(
        &quotients(p),
        Theorem::OddDegree,
        threshold,
        Strictness::NonStrict,
        SIMPLE_DISTINCT,
    )
}

/// Any degree: `|q_k| >= b_infinity`. Weaker than the parity-specific
/// conditions but uniform in the degree.
pub fn certify_uniform(p: &ComplexPoly) -> Certificate {
    check_quotients(
        &quotients(p),
        Theorem::Uniform,
        b_infinity(),
        Strictness::NonStrict,
        SIMPLE_DISTINCT,
    )
}

/// Quotient prefix of an entire function: `|q_k| >= b_infinity` for the
/// supplied indices plus a caller-supplied guarantee for the unseen tail.
/// Without the tail claim a finite prefix proves nothing.
pub fn certify_truncated_entire(s: &QuotientSeq, claimed_tail: bool) -> Certificate {
    if !claimed_tail {
        return Certificate::not_applicable(
            Theorem::TruncatedEntire,
            b_infinity(),
            Strictness::NonStrict,
            "no tail claim supplied; a finite prefix alone proves nothing \
             about the entire function",
        );
    }
    let mut cert = check_quotients(
        s,
        Theorem::TruncatedEntire,
        b_infinity(),
        Strictness::NonStrict,
        "all zeros of the entire function are simple with pairwise distinct \
         moduli, assuming the claimed tail bound; numerical checks cover only \
         the supplied prefix",
    );
    if cert.verdict == Verdict::ConditionFails {
        cert.note = format!("{FAIL_NOTE}; the tail claim cannot repair a failing prefix");
    }
    cert
}

/// Degree 3: `|q_2|, |q_3| > sqrt(9 + 6 sqrt 3)` strictly. Strictly sharper
/// than the odd-degree condition for cubics.
pub fn certify_cubic(p: &ComplexPoly) -> Certificate {
    if p.degree() != 3 {
        return Certificate::not_applicable(
            Theorem::CubicSharp,
            cubic_sharp_constant(),
            Strictness::Strict,
            "this condition is stated for degree 3",
        );
    }
    check_quotients(
        &quotients(p),
        Theorem::CubicSharp,
        cubic_sharp_constant(),
        Strictness::Strict,
        SIMPLE_DISTINCT,
    )
}

const ALL_REAL: &str = "all zeros are real (multiplicities allowed)";

/// Real coefficients: non-strict thresholds imply every zero is real.
/// Dispatches to the weakest applicable threshold; cubics get the sharp
/// constant rather than `b(4)`.
pub fn certify_real(p: &ComplexPoly) -> Certificate {
    if !p.is_real() {
        return Certificate::not_applicable(
            Theorem::RealEven,
            f64::NAN,
            Strictness::NonStrict,
            "coefficients must all be real",
        );
    }
    let degree = p.degree();
    let (theorem, threshold) = if degree == 3 {
        (Theorem::RealCubic, cubic_sharp_constant())
    } else if degree.is_multiple_of(2) {
        (Theorem::RealEven, b_even((degree / 2) as u32))
    } else {
        (Theorem::RealOdd, b_even(degree.div_ceil(2) as u32))
    };
    check_quotients(
        &quotients(p),
        theorem,
        threshold,
        Strictness::NonStrict,
        ALL_REAL,
    )
}

/// Positive coefficients: `q_k >= 4` forces real, simple, negative zeros.
pub fn certify_hutchinson(p: &ComplexPoly) -> Certificate {
    if !p.is_positive_real() {
        return Certificate::not_applicable(
            Theorem::Hutchinson,
            4.0,
            Strictness::NonStrict,
            "coefficients must all be strictly positive reals",
        );
    }
    check_quotients(
        &quotients(p),
        Theorem::Hutchinson,
        4.0,
        Strictness::NonStrict,
        "all zeros are real, simple and negative",
    )
}

/// Run every certifier whose gate the polynomial can possibly pass and
/// return the certificates in a fixed order: the strongest conclusion a
/// caller can use is whichever entry is `CERTIFIED`.
pub fn certify_auto(p: &ComplexPoly) -> Vec<Certificate> {
    let mut out = Vec::new();
    if p.degree() == 3 {
        out.push(certify_cubic(p));
        out.push(certify_odd(p));
    } else if p.degree().is_multiple_of(2) {
        out.push(certify_even(p));
    } else {
        out.push(certify_odd(p));
    }
    out.push(certify_uniform(p));
    if p.is_real() {
        out.push(certify_real(p));
    }
    if p.is_positive_real() {
        out.push(certify_hutchinson(p));
    }
    out
}

/// Best verdict across a batch: `Certified` beats `ConditionFails` beats
/// `NotApplicable`.
pub fn best_verdict(certs: &[Certificate]) -> Verdict {
    let mut best = Verdict::NotApplicable;
    for c in certs {
        match c.verdict {
            Verdict::Certified => return Verdict::Certified,
            Verdict::ConditionFails => best = Verdict::ConditionFails,
            Verdict::NotApplicable => {}
        }
    }
    best
}

/// Best verdict for the simple-zero question specifically; realness-only
/// certificates are ignored so a double-rooted real polynomial cannot come
/// out "certified".
pub fn best_simplicity_verdict(certs: &[Certificate]) -> Verdict {
    let relevant: Vec<Certificate> = certs
        .iter()
        .filter(|c| c.concludes_simplicity())
        .cloned()
        .collect();
    best_verdict(&relevant)
}
