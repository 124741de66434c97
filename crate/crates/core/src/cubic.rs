//! The cubic family `1 + z + z^2/a + z^3/(a^2 b)`: its discriminant, the
//! multiple-root locus, the reduced quartic with its two-quadratic
//! factorization, and the modulus scan that pins the sharp constant.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyseries::ComplexPoly;

/// Quotient parameters of the cubic family: `q2 = a`, `q3 = b`.
#[derive(Clone, Copy, Debug)]
pub struct CubicParams {
    pub a: Complex64,
    pub b: Complex64,
}

impl CubicParams {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::BadParameter("a and b must be nonzero".into()));
        }
        Ok(CubicParams { a, b })
    }

    /// The cubic `1 + z + z^2/a + z^3/(a^2 b)`.
    pub fn poly(&self) -> Result<ComplexPoly> {
        ComplexPoly::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            self.a.inv(),
            (self.a * self.a * self.b).inv(),
        ])
    }
}

/// Discriminant of a degree-3 polynomial given as a dense coefficient slice
/// (ascending powers, leading coefficient nonzero). Zero exactly when the
/// cubic has a multiple root.
pub fn discriminant3(coeffs: &[Complex64]) -> Result<Complex64> {
    if coeffs.len() != 4 {
        return Err(Error::BadParameter(format!(
            "expected a cubic (4 coefficients), got {}",
            coeffs.len()
        )));
    }
    let (delta, gamma, beta, alpha) = (coeffs[0], coeffs[1], coeffs[2], coeffs[3]);
    if alpha.norm() == 0.0 {
        return Err(Error::ZeroCoefficient(3));
    }
    Ok(
        -4.0 * beta.powu(3) * delta + beta * beta * gamma * gamma - 4.0 * alpha * gamma.powu(3)
            + 18.0 * alpha * beta * gamma * delta
            - 27.0 * alpha * alpha * delta * delta,
    )
}

/// `4ab^2 - a^2b^2 + 4a^2b - 18ab + 27`: zero exactly when the family
/// member at `(a, b)` has a multiple root. Equals `-a^4 b^2` times the
/// cubic's discriminant.
pub fn multiple_root_locus_residual(a: Complex64, b: Complex64) -> Complex64 {
    4.0 * a * b * b - a * a * b * b + 4.0 * a * a * b - 18.0 * a * b + Complex64::new(27.0, 0.0)
}

/// The two real monic quadratics whose product is the reduced quartic
/// `x^4 - 8 lambda x^3 + 18 x^2 - 27` at `t = (1 - lambda^2)^(1/3)`.
///
/// Each pair is `(p, r)` for `x^2 + p x + r`. The quadratic carrying the
/// larger constant term `3 + 6t + 6 sqrt(1+t+t^2)` takes the larger linear
/// coefficient; pairing them the other way breaks the product identity,
/// which the tests pin down coefficient by coefficient.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuarticFactorization {
    pub t: f64,
    pub quad1: (f64, f64),
    pub quad2: (f64, f64),
}

/// Factor the reduced quartic for `lambda` in `[0, 1]`. All radicands are
/// nonnegative on that interval; the `t = 1` end is regular because only
/// the final quadratics are evaluated.
pub fn ferrari_factorization(lambda: f64) -> Result<QuarticFactorization> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::BadParameter(format!(
            "lambda must lie in [0, 1], got {lambda}"
        )));
    }
    let t = (1.0 - lambda * lambda).max(0.0).cbrt();
    let split = 2.0 * (1.0 - t).max(0.0).sqrt() * (2.0 * t + 1.0);
    let hump = 6.0 * (1.0 + t + t * t).sqrt();
    Ok(QuarticFactorization {
        t,
        quad1: (-(4.0 * lambda + split), 3.0 + 6.0 * t + hump),
        quad2: (-(4.0 * lambda - split), 3.0 + 6.0 * t - hump),
    })
}

/// Roots of the monic quadratic `x^2 + p x + r` with real coefficients.
fn quadratic_roots(p: f64, r: f64) -> [Complex64; 2] {
    let disc = p * p - 4.0 * r;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let q = if p >= 0.0 {
            -(p + s) / 2.0
        } else {
            (-p + s) / 2.0
        };
        if q == 0.0 {
            [Complex64::new(0.0, 0.0), Complex64::new(-p, 0.0)]
        } else {
            [Complex64::new(q, 0.0), Complex64::new(r / q, 0.0)]
        }
    } else {
        let im = (-disc).sqrt() / 2.0;
        [Complex64::new(-p / 2.0, im), Complex64::new(-p / 2.0, -im)]
    }
}

/// `x^4 - 8 lambda x^3 + 18 x^2 - 27` at `x`.
pub fn quartic_value(lambda: f64, x: Complex64) -> Complex64 {
    ((x - 8.0 * lambda) * x + Complex64::new(18.0, 0.0)) * x * x - Complex64::new(27.0, 0.0)
}

/// All four roots of the reduced quartic, via the two-quadratic
/// factorization. Deterministically ordered by `(re, im)`.
pub fn ferrari_roots(lambda: f64) -> Result<[Complex64; 4]> {
    let f = ferrari_factorization(lambda)?;
    let r1 = quadratic_roots(f.quad1.0, f.quad1.1);
    let r2 = quadratic_roots(f.quad2.0, f.quad2.1);
    let mut roots = [r1[0], r1[1], r2[0], r2[1]];
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite roots compare")
    });
    Ok(roots)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanResult {
    pub sup_modulus: f64,
    pub argmax_lambda: f64,
}

/// Largest root modulus of the reduced quartic over a uniform grid on
/// `[0, 1]`, with the lowest lambda reported on ties. The supremum is
/// attained at `lambda = 0` where the nonreal pair reaches
/// `sqrt(9 + 6 sqrt 3)`.
pub fn max_modulus_scan(grid_points: usize) -> Result<ScanResult> {
    if grid_points < 2 {
        return Err(Error::BadParameter(
            "the grid needs at least 2 points".into(),
        ));
    }
    let mut best = ScanResult {
        sup_modulus: f64::NEG_INFINITY,
        argmax_lambda: 0.0,
    };
    for i in 0..grid_points {
        let lambda = i as f64 / (grid_points - 1) as f64;
        let top = ferrari_roots(lambda)?
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if top > best.sup_modulus {
            best = ScanResult {
                sup_modulus: top,
                argmax_lambda: lambda,
            };
        }
    }
    Ok(best)
}

/// Map a quartic root back to the equal-modulus slice of the locus:
/// `lambda = cos(gamma/2)`, pick the root whose modulus is closest to
/// `a_modulus`, and return `(a, b) = (x e^(-i gamma/2), x e^(i gamma/2))`.
/// The locus residual at the returned pair is the authoritative check.
pub fn modulus_equal_slice(a_modulus: f64, gamma: f64) -> Result<(Complex64, Complex64)> {
    if a_modulus <= 0.0 || a_modulus.is_nan() {
        return Err(Error::BadParameter(format!(
            "target modulus must be positive, got {a_modulus}"
        )));
    }
    let lambda = (gamma / 2.0).cos().clamp(0.0, 1.0);
    let roots = ferrari_roots(lambda)?;
    let x = roots
        .iter()
        .min_by(|u, v| {
            (u.norm() - a_modulus)
                .abs()
                .partial_cmp(&(v.norm() - a_modulus).abs())
                .expect("finite moduli")
        })
        .copied()
        .expect("quartic always has four roots");
    let half_turn = Complex64::from_polar(1.0, -gamma / 2.0);
    let a = x * half_turn;
    let b = a * Complex64::from_polar(1.0, gamma);
    Ok((a, b))
}
