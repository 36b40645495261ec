//! Browser bindings: reduce an expression, tabulate ψ(e_r, f_s), and
//! evaluate P^(l,j)_k. Results come back as JSON strings (the same document
//! shape the CLI writes), errors as JS exceptions carrying the message.

use wasm_bindgen::prelude::*;

use superell_core::cocycle::{psi_basis, DerivationBasisElement as B};
use superell_core::current::snf_general;
use superell_core::expr::{parse_element, parse_param_poly};
use superell_core::output::OutputDocument;
use superell_core::{Center, Curve};

const MAX_GRID: i64 = 400;

fn center_for(curve: &str) -> Result<Center, String> {
    let curve = match curve.trim() {
        "quadratic" => Curve::quadratic(),
        "quartic" => Curve::quartic(),
        list => {
            let coeffs = list
                .split(',')
                .map(|c| parse_param_poly(c.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            Curve::new(coeffs).map_err(|e| e.to_string())?
        }
    };
    Center::new(curve).map_err(|e| e.to_string())
}

/// `curve` is "quadratic", "quartic" or a coefficient list "p0, p1, ..., pn".
pub fn reduce_json(curve: &str, expr: &str) -> Result<String, String> {
    let center = center_for(curve)?;
    let el = parse_element(expr, center.curve()).map_err(|e| e.to_string())?;
    let mut doc = OutputDocument::new(format!("[{expr}] on {}", center.curve().describe()), center.dimension());
    doc.push(expr, center.reduce(&el));
    Ok(doc.to_json())
}

/// Rows `psi(e_r, f_s)` for r in 1..=rmax, s in -smax..=smax.
pub fn psi_table_json(curve: &str, rmax: i64, smax: i64) -> Result<String, String> {
    if rmax < 1 || smax < 0 || rmax * (2 * smax + 1) > MAX_GRID {
        return Err(format!("grid must be non-empty with at most {MAX_GRID} cells"));
    }
    let center = center_for(curve)?;
    let mut doc = OutputDocument::new(
        format!("psi(e_r, f_s) on {}", center.curve().describe()),
        center.dimension(),
    );
    // no threads on wasm32, so this stays sequential
    for r in 1..=rmax {
        for s in -smax..=smax {
            doc.push(format!("psi(e{r}, f{s})"), psi_basis(&center, B::e(r), B::f(s)));
        }
    }
    Ok(doc.to_json())
}

pub fn snf_text(l: i64, j: i64, k: i64, m: i64, r: i64) -> Result<String, String> {
    if r < 1 {
        return Err(format!("r must be positive, got {r}"));
    }
    let p = snf_general(l, j, k, m, r).map_err(|e| e.to_string())?;
    Ok(p.poly.display_with("c").to_string())
}

#[wasm_bindgen]
pub fn reduce(curve: &str, expr: &str) -> Result<String, JsError> {
    reduce_json(curve, expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = psiTable)]
pub fn psi_table(curve: &str, rmax: i32, smax: i32) -> Result<String, JsError> {
    psi_table_json(curve, rmax.into(), smax.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn snf(l: i32, j: i32, k: i32, m: i32, r: i32) -> Result<String, JsError> {
    snf_text(l.into(), j.into(), k.into(), m.into(), r.into()).map_err(|e| JsError::new(&e))
}
