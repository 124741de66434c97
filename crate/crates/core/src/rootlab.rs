//! Independent numerical oracles: simultaneous root finding, argument-principle
//! winding counts on circles, annulus verification, and realness detection.
//!
//! These operations accept raw coefficient slices (leading coefficient
//! nonzero); zero coefficients in the middle are fine here, unlike in
//! [`ComplexPoly`](crate::polyseries::ComplexPoly).

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyseries::{
    self, cdiv, eval_scale, horner, horner_with_derivative, quotients, radii, ComplexPoly,
};

/// Tunables for the root oracle.
#[derive(Clone, Debug)]
pub struct RootConfig {
    /// Relative correction size at which the sweep stops.
    pub tol: f64,
    /// Hard cap on simultaneous-iteration sweeps.
    pub max_sweeps: usize,
    /// A root is accepted when `|p(z)| <= residual_tol * sum |a_k||z|^k`.
    pub residual_tol: f64,
    /// Imaginary parts below this count as zero.
    pub im_tol: f64,
    /// Base number of contour samples for winding counts.
    pub winding_samples: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            tol: 1e-12,
            max_sweeps: 500,
            residual_tol: 1e-9,
            im_tol: 1e-8,
            winding_samples: 256,
        }
    }
}

/// Roots flagged as multiple when another root sits within this band.
fn cluster_tol(modulus: f64) -> f64 {
    1e-6 * (1.0 + modulus)
}

/// `min |p| / max |p|` on a contour below this aborts the winding count.
const GUARD_FRACTION: f64 = 1e-8;

/// Corrections stop once `|p(z)|` is this many epsilons under the local
/// evaluation scale; beyond that the value is rounding noise.
const NOISE_FLOOR: f64 = 8.0;

/// Everything the oracle learned about the roots of one polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    #[serde(serialize_with = "polyseries::ser_complex_vec")]
    pub coeffs: Vec<Complex64>,
    /// Sorted by modulus, then argument; deterministic for fixed input.
    #[serde(serialize_with = "polyseries::ser_complex_vec")]
    pub roots: Vec<Complex64>,
    /// `|p(root)|` relative to `sum |a_k||root|^k`, per root.
    pub residuals: Vec<f64>,
    pub moduli_sorted: Vec<f64>,
    pub min_modulus_gap: f64,
    pub min_pairwise_distance: f64,
    pub multiplicity_flags: Vec<bool>,
    pub all_real: bool,
    /// Region index per root (0 = inner disk) when quotient radii exist.
    pub annuli: Option<Vec<usize>>,
    pub converged: bool,
    pub sweeps: usize,
}

/// Log-radii of the quotient annuli (in the input's own coordinates, so
/// including the `|a0/a1|` anchor factor), when every coefficient is nonzero.
fn quotient_log_radii(coeffs: &[Complex64]) -> Option<Vec<f64>> {
    if coeffs.len() < 3 || coeffs.iter().any(|c| c.norm() == 0.0) {
        return None;
    }
    let log_a: Vec<f64> = coeffs.iter().map(|c| c.norm().ln()).collect();
    let log_q: Vec<f64> = (2..coeffs.len())
        .map(|k| 2.0 * log_a[k - 1] - log_a[k - 2] - log_a[k])
        .collect();
    let anchor = log_a[0] - log_a[1];
    let mut out = Vec::with_capacity(log_q.len());
    let mut prefix = 0.0;
    for lq in &log_q {
        out.push(anchor + prefix + 0.5 * lq);
        prefix += lq;
    }
    Some(out)
}

/// One starting point per expected annulus, jittered by a fixed irrational
/// angle so no two guesses coincide and no run depends on a seed.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    let ring_logs: Vec<f64> = match quotient_log_radii(coeffs) {
        Some(logs) => {
            let mut rings = Vec::with_capacity(degree);
            rings.push(logs[0] - std::f64::consts::LN_2);
            for i in 1..degree - 1 {
                rings.push(0.5 * (logs[i - 1] + logs[i]));
            }
            rings.push(logs[degree - 2] + std::f64::consts::LN_2);
            rings
        }
        None => {
            let lead = coeffs[coeffs.len() - 1].norm();
            let cauchy = 1.0
                + coeffs[..coeffs.len() - 1]
                    .iter()
                    .map(|c| c.norm() / lead)
                    .fold(0.0, f64::max);
            vec![cauchy.ln(); degree]
        }
    };
    const GOLDEN_FRAC: f64 = 0.618_033_988_749_894_9;
    ring_logs
        .iter()
        .enumerate()
        .map(|(i, &lr)| {
            let r = lr.clamp(-230.0, 230.0).exp();
            let theta = TAU * ((i as f64 + 1.0) * GOLDEN_FRAC).fract() + 0.4711;
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Find all roots by simultaneous Aberth–Ehrlich refinement. Multiple roots
/// are not deflated away; they show up as clusters and are flagged.
pub fn find_roots(coeffs: &[Complex64], cfg: &RootConfig) -> Result<RootReport> {
    if coeffs.len() < 2 {
        return Err(Error::DegreeTooSmall(coeffs.len().saturating_sub(1)));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Parse("non-finite coefficient".into()));
    }
    let degree = coeffs.len() - 1;
    if coeffs[degree].norm() == 0.0 {
        return Err(Error::ZeroCoefficient(degree));
    }

    if degree == 1 {
        let root = -cdiv(coeffs[0], coeffs[1]);
        return Ok(assemble_report(coeffs, vec![root], cfg, true, 0));
    }

    let mut z = initial_guesses(coeffs);
    let mut converged = false;
    let mut sweeps_used = cfg.max_sweeps;
    for sweep in 0..cfg.max_sweeps {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let (value, deriv) = horner_with_derivative(coeffs, z[i]);
            let scale = eval_scale(coeffs, z[i].norm());
            if value.norm() <= NOISE_FLOOR * f64::EPSILON * scale {
                continue; // at the evaluation noise floor; leave it alone
            }
            if deriv.norm() == 0.0 {
                let nudge = 1e-7 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, 1e-7);
                max_step = f64::MAX;
                continue;
            }
            let newton = cdiv(value, deriv);
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..degree {
                if i == j {
                    continue;
                }
                let mut diff = z[i] - z[j];
                if diff.norm() == 0.0 {
                    diff = Complex64::new(1e-12 * (1.0 + z[i].norm()), 0.0);
                }
                repulsion += cdiv(Complex64::new(1.0, 0.0), diff);
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let mut step = if denom.norm() < 1e-290 {
                newton
            } else {
                cdiv(newton, denom)
            };
            let cap = 1.0 + z[i].norm();
            if step.norm() > cap {
                step *= cap / step.norm();
            }
            z[i] -= step;
            if !z[i].is_finite() {
                z[i] = Complex64::from_polar(1.0 + (i as f64), 0.1 + i as f64);
                max_step = f64::MAX;
                continue;
            }
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < cfg.tol {
            converged = true;
            sweeps_used = sweep + 1;
            break;
        }
    }

    let mut report = assemble_report(coeffs, z, cfg, converged, sweeps_used);
    if !converged {
        // corrections stalled; accept only if every residual is already good
        report.converged = report.residuals.iter().all(|&r| r <= cfg.residual_tol);
    }
    Ok(report)
}

/// Convenience wrapper for the all-nonzero polynomial type.
pub fn find_roots_poly(p: &ComplexPoly, cfg: &RootConfig) -> Result<RootReport> {
    find_roots(p.coeffs(), cfg)
}

fn assemble_report(
    coeffs: &[Complex64],
    mut roots: Vec<Complex64>,
    cfg: &RootConfig,
    converged: bool,
    sweeps: usize,
) -> RootReport {
    roots.sort_by(|a, b| {
        (a.norm(), a.arg())
            .partial_cmp(&(b.norm(), b.arg()))
            .expect("finite roots compare")
    });
    let residuals: Vec<f64> = roots
        .iter()
        .map(|&z| {
            let scale = eval_scale(coeffs, z.norm());
            if scale == 0.0 {
                f64::INFINITY
            } else {
                horner(coeffs, z).norm() / scale
            }
        })
        .collect();
    let moduli_sorted: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
    let min_modulus_gap = moduli_sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let mut min_pairwise_distance = f64::INFINITY;
    let mut multiplicity_flags = vec![false; roots.len()];
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = (roots[i] - roots[j]).norm();
            min_pairwise_distance = min_pairwise_distance.min(d);
            if d < cluster_tol(roots[i].norm().max(roots[j].norm())) {
                multiplicity_flags[i] = true;
                multiplicity_flags[j] = true;
            }
        }
    }
    let all_real = roots.iter().all(|z| z.im.abs() < cfg.im_tol);
    let annuli = quotient_log_radii(coeffs).map(|logs| {
        let rs: Vec<f64> = logs.iter().map(|&l| l.clamp(-700.0, 700.0).exp()).collect();
        roots
            .iter()
            .map(|z| rs.iter().filter(|&&r| r <= z.norm()).count())
            .collect()
    });
    RootReport {
        coeffs: coeffs.to_vec(),
        roots,
        residuals,
        moduli_sorted,
        min_modulus_gap,
        min_pairwise_distance,
        multiplicity_flags,
        all_real,
        annuli,
        converged,
        sweeps,
    }
}

/// Number of zeros of `p` strictly inside `|z| = radius`, by the argument
/// principle. Samples the contour, refuses when a root sits too close
/// (a posteriori guard on `min |p|`), and tracks the argument with adaptive
/// subdivision so every step stays under `pi/2`.
pub fn winding_count(coeffs: &[Complex64], radius: f64, samples: usize) -> Result<i64> {
    if radius <= 0.0 || !radius.is_finite() {
        return Err(Error::BadParameter(format!(
            "contour radius {radius} invalid"
        )));
    }
    if samples == 0 {
        return Err(Error::BadParameter("sample count must be positive".into()));
    }
    let mut n = samples.max(8);
    for attempt in 0.. {
        let points: Vec<Complex64> = (0..n)
            .map(|j| {
                horner(
                    coeffs,
                    Complex64::from_polar(radius, TAU * j as f64 / n as f64),
                )
            })
            .collect();
        let max_mag = points.iter().map(|w| w.norm()).fold(0.0, f64::max);
        let min_mag = points
            .iter()
            .map(|w| w.norm())
            .fold(f64::INFINITY, f64::min);
        if max_mag == 0.0 {
            return Err(Error::ContourTooClose { radius, ratio: 0.0 });
        }
        if min_mag >= GUARD_FRACTION * max_mag {
            return accumulate_winding(coeffs, radius, &points, max_mag);
        }
        if attempt == 3 {
            return Err(Error::ContourTooClose {
                radius,
                ratio: min_mag / max_mag,
            });
        }
        n *= 4;
    }
    unreachable!()
}

fn accumulate_winding(
    coeffs: &[Complex64],
    radius: f64,
    points: &[Complex64],
    max_mag: f64,
) -> Result<i64> {
    let n = points.len();
    let mut total = 0.0;
    for j in 0..n {
        let t0 = TAU * j as f64 / n as f64;
        let t1 = TAU * (j + 1) as f64 / n as f64;
        total += arg_step(
            coeffs,
            radius,
            t0,
            t1,
            points[j],
            points[(j + 1) % n],
            max_mag,
            0,
        )?;
    }
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.25 {
        return Err(Error::NonIntegerWinding(turns));
    }
    Ok(rounded as i64)
}

#[allow(clippy::too_many_arguments)]
fn arg_step(
    coeffs: &[Complex64],
    radius: f64,
    t0: f64,
    t1: f64,
    w0: Complex64,
    w1: Complex64,
    max_mag: f64,
    depth: u32,
) -> Result<f64> {
    let delta = (w1 * w0.conj()).arg();
    if delta.abs() < FRAC_PI_2 {
        return Ok(delta);
    }
    if depth >= 24 {
        return Err(Error::BranchTracking(radius));
    }
    let tm = 0.5 * (t0 + t1);
    let wm = horner(coeffs, Complex64::from_polar(radius, tm));
    if wm.norm() < GUARD_FRACTION * max_mag {
        return Err(Error::ContourTooClose {
            radius,
            ratio: wm.norm() / max_mag,
        });
    }
    Ok(
        arg_step(coeffs, radius, t0, tm, w0, wm, max_mag, depth + 1)?
            + arg_step(coeffs, radius, tm, t1, wm, w1, max_mag, depth + 1)?,
    )
}

/// Outcome of checking the one-zero-per-annulus layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AnnulusVerdict {
    /// Winding count at every radius equals its index and matches the oracle.
    Pass,
    /// Counts are internally consistent but violate the expected layout.
    Fail,
    /// Winding counter and root oracle disagree.
    Mismatch,
    /// At least one contour ran too close to a root to be trusted.
    ContourAbstain,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnulusCheck {
    pub k: usize,
    pub radius: f64,
    /// `None` when the contour guard refused this circle.
    pub winding: Option<i64>,
    pub roots_inside: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnulusVerification {
    pub checks: Vec<AnnulusCheck>,
    pub verdict: AnnulusVerdict,
    pub report: RootReport,
}

/// Count zeros inside every quotient radius and cross-check the winding
/// counter against the root oracle. `Pass` requires count `k` at radius
/// `R_k` for every `k`, which pins exactly one zero per annulus.
pub fn verify_annuli(p: &ComplexPoly, cfg: &RootConfig) -> Result<AnnulusVerification> {
    let partition = radii(&quotients(p));
    let report = find_roots(p.coeffs(), cfg)?;
    if !report.converged {
        return Err(Error::NoConvergence(cfg.max_sweeps));
    }
    let mut checks = Vec::with_capacity(partition.radii.len());
    for (i, &r) in partition.radii.iter().enumerate() {
        let k = i + 1;
        let roots_inside = report.moduli_sorted.iter().filter(|&&m| m < r).count();
        let winding = match winding_count(p.coeffs(), r, cfg.winding_samples) {
            Ok(w) => Some(w),
            Err(Error::ContourTooClose { .. }) => None,
            Err(e) => return Err(e),
        };
        checks.push(AnnulusCheck {
            k,
            radius: r,
            winding,
            roots_inside,
        });
    }
    let mut verdict = AnnulusVerdict::Pass;
    if checks
        .iter()
        .any(|c| c.winding.is_some_and(|w| w != c.roots_inside as i64))
    {
        verdict = AnnulusVerdict::Mismatch;
    } else if checks
        .iter()
        .any(|c| c.winding.is_some_and(|w| w != c.k as i64))
    {
        verdict = AnnulusVerdict::Fail;
    } else if checks.iter().any(|c| c.winding.is_none()) {
        verdict = AnnulusVerdict::ContourAbstain;
    }
    Ok(AnnulusVerification {
        checks,
        verdict,
        report,
    })
}

/// Decide whether every reported root is real: restart each root at its real
/// part, polish along the real line, and accept only if the residual stays
/// small and the polished point does not wander off.
pub fn realness_check(report: &RootReport, im_tol: f64) -> bool {
    let residual_tol = 1e-9;
    if report.coeffs.iter().any(|c| c.im != 0.0) {
        return report.roots.iter().all(|z| z.im.abs() < im_tol);
    }
    let real_coeffs: Vec<f64> = report.coeffs.iter().map(|c| c.re).collect();
    report.roots.iter().all(|z| {
        let x0 = z.re;
        let mut x = x0;
        for _ in 0..60 {
            let (v, d) = real_horner_with_derivative(&real_coeffs, x);
            if d == 0.0 {
                break;
            }
            let mut dx = v / d;
            let cap = 1.0 + x.abs();
            if dx.abs() > cap {
                dx = dx.signum() * cap;
            }
            x -= dx;
            if dx.abs() <= 1e-14 * (1.0 + x.abs()) {
                break;
            }
        }
        let scale = eval_scale(&report.coeffs, x.abs());
        let (v, _) = real_horner_with_derivative(&real_coeffs, x);
        // the polish only counts if the root was already near the real axis
        // and the polished point did not wander to some other real root
        let tube = 1e-2 * (1.0 + z.norm());
        let local = (x - x0).abs() <= tube && z.im.abs() <= tube;
        v.abs() <= residual_tol * scale && local
    })
}

fn real_horner_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut deriv = 0.0;
    for &c in coeffs.iter().rev() {
        deriv = deriv * x + value;
        value = value * x + c;
    }
    (value, deriv)
}
