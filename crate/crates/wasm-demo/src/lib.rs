//! Wasm bindings for the browser demo. Every export takes plain arguments
//! and returns one JSON string, so the page needs no extra glue types.

use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use zerocert::certifier::{best_simplicity_verdict, certify_auto};
use zerocert::constants::{b_even, b_infinity, cubic_sharp_constant};
use zerocert::cubic::{ferrari_factorization, ferrari_roots, quartic_value};
use zerocert::extremal::extremal_even;
use zerocert::polyseries::{
    derivative_scale, eval_scale, parse_input, quotients, radii, ComplexPoly,
};
use zerocert::rootlab::{find_roots_poly, RootConfig};

fn pairs(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| json!([z.re, z.im])).collect())
}

fn error_json(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn poly_geometry(p: &ComplexPoly) -> Result<Value, zerocert::Error> {
    let report = find_roots_poly(p, &RootConfig::default())?;
    let seq = quotients(p);
    Ok(json!({
        "degree": p.degree(),
        "coeffs": pairs(p.coeffs()),
        "quotient_moduli": seq.moduli(),
        "radii": radii(&seq).radii,
        "roots": pairs(&report.roots),
        "moduli": report.moduli_sorted,
        "min_modulus_gap": report.min_modulus_gap,
        "multiplicity_flags": report.multiplicity_flags,
        "all_real": report.all_real,
        "converged": report.converged,
    }))
}

/// Certify a polynomial (either JSON wire form) and return everything the
/// canvas needs: certificates, roots, and the separating circles.
#[wasm_bindgen]
pub fn analyze_polynomial(input: &str) -> String {
    let poly = match parse_input(input) {
        Ok(p) => p,
        Err(e) => return error_json(e),
    };
    let geometry = match poly_geometry(&poly) {
        Ok(g) => g,
        Err(e) => return error_json(e),
    };
    let certs = certify_auto(&poly);
    let verdict = best_simplicity_verdict(&certs);
    let mut doc = geometry;
    doc["verdict"] = serde_json::to_value(verdict).expect("verdict serializes");
    doc["certificates"] = serde_json::to_value(&certs).expect("certificates serialize");
    doc.to_string()
}

/// The even-degree witness family: all quotient moduli equal `c`, and at
/// `c = b(2n)` a double root forms at z = 1. Returns the geometry plus the
/// margin against the threshold and the scale-relative residuals at 1.
#[wasm_bindgen]
pub fn extremal_even_family(n: u32, c: f64) -> String {
    let poly = match extremal_even(n, c) {
        Ok(p) => p,
        Err(e) => return error_json(e),
    };
    let mut doc = match poly_geometry(&poly) {
        Ok(g) => g,
        Err(e) => return error_json(e),
    };
    let threshold = b_even(n);
    let one = Complex64::new(1.0, 0.0);
    let (v, d) = poly.eval_with_derivative(one);
    doc["threshold"] = json!(threshold);
    doc["b_infinity"] = json!(b_infinity());
    doc["margin"] = json!(c - threshold);
    doc["residual_at_one"] = json!(v.norm() / eval_scale(poly.coeffs(), 1.0));
    doc["derivative_residual_at_one"] = json!(d.norm() / derivative_scale(poly.coeffs(), 1.0));
    doc.to_string()
}

/// Largest root modulus of the reduced quartic over a lambda grid, with the
/// sharp constant for reference.
#[wasm_bindgen]
pub fn cubic_modulus_curve(grid: u32) -> String {
    let grid = grid.max(2) as usize;
    let mut lambdas = Vec::with_capacity(grid);
    let mut moduli = Vec::with_capacity(grid);
    let mut sup = f64::NEG_INFINITY;
    let mut argmax = 0.0;
    for i in 0..grid {
        let lambda = i as f64 / (grid - 1) as f64;
        let top = match ferrari_roots(lambda) {
            Ok(roots) => roots.iter().map(|z| z.norm()).fold(0.0, f64::max),
            Err(e) => return error_json(e),
        };
        if top > sup {
            sup = top;
            argmax = lambda;
        }
        lambdas.push(lambda);
        moduli.push(top);
    }
    json!({
        "lambdas": lambdas,
        "max_moduli": moduli,
        "sup_modulus": sup,
        "argmax_lambda": argmax,
        "sharp_constant": cubic_sharp_constant(),
    })
    .to_string()
}

/// The four quartic roots at one lambda, with the factor quadratics and the
/// residuals backing them.
#[wasm_bindgen]
pub fn ferrari_slice(lambda: f64) -> String {
    let f = match ferrari_factorization(lambda) {
        Ok(f) => f,
        Err(e) => return error_json(e),
    };
    let roots = match ferrari_roots(lambda) {
        Ok(r) => r,
        Err(e) => return error_json(e),
    };
    let residuals: Vec<f64> = roots
        .iter()
        .map(|&r| quartic_value(lambda, r).norm())
        .collect();
    json!({
        "lambda": lambda,
        "t": f.t,
        "quad1": [f.quad1.0, f.quad1.1],
        "quad2": [f.quad2.0, f.quad2.1],
        "roots": pairs(&roots),
        "moduli": roots.iter().map(|z| z.norm()).collect::<Vec<_>>(),
        "residuals": residuals,
        "sharp_constant": cubic_sharp_constant(),
    })
    .to_string()
}
