//! Browser bindings: every export takes plain numbers and returns a JSON
//! string, so the page needs no generated glue beyond `wasm-bindgen`.

use dqdet::decomposition::{char_poly, hermitian_eig, quasi_char_poly_eval};
use dqdet::determinant::{determinant, DetDefinition, DEFAULT_DET_CAP};
use dqdet::matrix::random_hermitian;
use dqdet::{DualNumber, Error};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest size the page offers; keeps the factorial sums interactive.
pub const MAX_N: usize = 6;

fn check(n: usize) -> Result<(), Error> {
    if n == 0 || n > MAX_N {
        return Err(Error::SizeCap { n, cap: MAX_N });
    }
    Ok(())
}

/// Every determinant definition of one seeded Hermitian matrix, next to
/// the eigenvalue product.
pub fn determinants_json(n: usize, seed: u64) -> Result<Value, Error> {
    check(n)?;
    let a = random_hermitian(n, seed, 1.0);
    let mut defs = vec![DetDefinition::Moore, DetDefinition::Chen];
    for k in 1..=n {
        defs.extend([
            DetDefinition::Dyson(k),
            DetDefinition::KyrcheiRow(k),
            DetDefinition::KyrcheiColumn(k),
        ]);
    }
    defs.push(DetDefinition::Quasi);
    let rows = defs
        .into_iter()
        .map(|d| determinant(&a, d, DEFAULT_DET_CAP))
        .collect::<Result<Vec<_>, _>>()?;
    let product = hermitian_eig(&a, false)?.product();
    Ok(json!({ "n": n, "seed": seed, "results": rows, "eigenvalue_product": product }))
}

pub fn spectrum_json(n: usize, seed: u64) -> Result<Value, Error> {
    check(n)?;
    let a = random_hermitian(n, seed, 1.0);
    Ok(json!(hermitian_eig(&a, false)?))
}

/// Samples `p(x)` and `|p(x)|²` at real `x` in `[lo, hi]`.
pub fn charpoly_curve_json(
    n: usize,
    seed: u64,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<Value, Error> {
    check(n)?;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || !(2..=10_000).contains(&samples) {
        return Err(Error::Domain("need lo < hi and 2..=10000 samples".into()));
    }
    let a = random_hermitian(n, seed, 1.0);
    let spectrum = hermitian_eig(&a, false)?;
    let p = char_poly(&a)?;
    let step = (hi - lo) / (samples - 1) as f64;
    let xs: Vec<f64> = (0..samples).map(|i| lo + step * i as f64).collect();
    let values: Vec<DualNumber> = xs.iter().map(|&x| p.eval(DualNumber::real(x))).collect();
    let quasi: Vec<DualNumber> = xs
        .iter()
        .map(|&x| quasi_char_poly_eval(&p, DualNumber::real(x)))
        .collect();
    Ok(json!({
        "x": xs,
        "p": values,
        "quasi": quasi,
        "coefficients": p.coefficients,
        "eigenvalues": spectrum.eigenvalues,
    }))
}

fn to_js(r: Result<Value, Error>) -> Result<String, JsValue> {
    r.map(|v| v.to_string())
        .map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn determinants(n: usize, seed: u32) -> Result<String, JsValue> {
    to_js(determinants_json(n, seed as u64))
}

#[wasm_bindgen]
pub fn spectrum(n: usize, seed: u32) -> Result<String, JsValue> {
    to_js(spectrum_json(n, seed as u64))
}

#[wasm_bindgen]
pub fn charpoly_curve(
    n: usize,
    seed: u32,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<String, JsValue> {
    to_js(charpoly_curve_json(n, seed as u64, lo, hi, samples))
}
