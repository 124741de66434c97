//! Threshold constants used by every certificate.
//!
//! `b(2n)` is the unique root in `(1, inf)` of `1 - 2 * sum_{k=1..n} x^(-k^2/2)`
//! and `b_infinity` is the root of the full-series analogue. The cubic family
//! has its own sharp constant `sqrt(9 + 6*sqrt(3))`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};

/// How many summands of the defining series to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Terms {
    /// The first `n` summands (threshold `b(2n)`).
    Finite(u32),
    /// The full series (threshold `b_infinity`), summed until the next term
    /// drops below `1e-18`.
    Infinite,
}

/// Default absolute tolerance for the threshold solves.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Terms of the infinite series below this are dropped; they decay like
/// `x^(-k^2/2)`, so the truncation error stays far below `DEFAULT_TOL`.
const TAIL_CUTOFF: f64 = 1e-18;

/// Bracket for all threshold solves. The defining function is negative just
/// above 1 and already positive at 16 for every term count.
const BRACKET: (f64, f64) = (1.0 + 1e-9, 16.0);

/// `phi(x) = 1 - 2 * sum x^(-k^2/2)` over the requested number of terms.
///
/// Strictly increasing in `x` on `(1, inf)` with limit 1, so it has a single
/// root there. Only defined for `x > 1`.
pub fn phi(x: f64, terms: Terms) -> Result<f64> {
    if x <= 1.0 || !x.is_finite() {
        return Err(Error::PhiDomain(x));
    }
    let log_x = x.ln();
    let mut sum = 0.0;
    match terms {
        Terms::Finite(n) => {
            if n == 0 {
                return Err(Error::BadParameter("term count must be positive".into()));
            }
            for k in 1..=n as u64 {
                sum += (-((k * k) as f64) / 2.0 * log_x).exp();
            }
        }
        Terms::Infinite => {
            for k in 1..=1_000_000u64 {
                let term = (-((k * k) as f64) / 2.0 * log_x).exp();
                sum += term;
                if term < TAIL_CUTOFF {
                    break;
                }
            }
        }
    }
    Ok(1.0 - 2.0 * sum)
}

/// Derivative of `phi` with respect to `x`.
fn phi_prime(x: f64, terms: Terms) -> f64 {
    let log_x = x.ln();
    let n_max = match terms {
        Terms::Finite(n) => n as u64,
        Terms::Infinite => 1_000_000,
    };
    let mut sum = 0.0;
    for k in 1..=n_max {
        let kk = (k * k) as f64;
        let term = kk * (-(kk / 2.0 + 1.0) * log_x).exp();
        sum += term;
        if matches!(terms, Terms::Infinite) && term < TAIL_CUTOFF {
            break;
        }
    }
    sum
}

/// Root of `phi(., terms)` in `(1, inf)` to absolute accuracy `tol`:
/// bisection on a guaranteed sign-changing bracket, then a short Newton
/// polish that typically lands within an ulp.
pub fn solve_b(terms: Terms, tol: f64) -> f64 {
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
    let (mut lo, mut hi) = BRACKET;
    debug_assert!(phi(lo, terms).unwrap() < 0.0);
    debug_assert!(phi(hi, terms).unwrap() > 0.0);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let v = phi(mid, terms).expect("mid stays inside the bracket");
        if v == 0.0 {
            lo = mid;
            hi = mid;
            break;
        } else if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..3 {
        let f = phi(x, terms).expect("iterate stays inside the bracket");
        let fp = phi_prime(x, terms);
        if fp == 0.0 {
            break;
        }
        let next = x - f / fp;
        if next > BRACKET.0 && next < BRACKET.1 {
            x = next;
        } else {
            break;
        }
    }
    x
}

static B_EVEN_CACHE: LazyLock<Mutex<HashMap<u32, f64>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static B_INFINITY: LazyLock<f64> = LazyLock::new(|| solve_b(Terms::Infinite, DEFAULT_TOL));

/// `b(2n)`, memoized at the default tolerance.
pub fn b_even(n: u32) -> f64 {
    assert!(n >= 1, "b(2n) is defined for n >= 1");
    let mut cache = B_EVEN_CACHE.lock().expect("constant cache poisoned");
    *cache
        .entry(n)
        .or_insert_with(|| solve_b(Terms::Finite(n), DEFAULT_TOL))
}

/// `b_infinity`, memoized at the default tolerance.
pub fn b_infinity() -> f64 {
    *B_INFINITY
}

/// The sharp constant for cubics, `sqrt(9 + 6*sqrt(3))`.
pub fn cubic_sharp_constant() -> f64 {
    (9.0 + 6.0 * 3.0f64.sqrt()).sqrt()
}

/// Eagerly computed table of thresholds, for reporting and batch use.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdTable {
    /// `n -> b(2n)`.
    pub by_even_degree: BTreeMap<u32, f64>,
    pub b_infinity: f64,
    pub cubic_constant: f64,
    pub tolerance: f64,
}

impl ThresholdTable {
    pub fn compute(upto_n: u32, tol: f64) -> Self {
        let by_even_degree = (1..=upto_n.max(1))
            .map(|n| (n, solve_b(Terms::Finite(n), tol)))
            .collect();
        ThresholdTable {
            by_even_degree,
            b_infinity: solve_b(Terms::Infinite, tol),
            cubic_constant: cubic_sharp_constant(),
            tolerance: tol,
        }
    }

    pub fn b(&self, n: u32) -> Option<f64> {
        self.by_even_degree.get(&n).copied()
    }
}
