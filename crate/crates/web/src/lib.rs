//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export wraps a plain function returning `Result<_, String>` so the
//! logic is testable on the host.

use num_bigint::BigUint;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use hofstadter::discrepancy::{fractal_points, AlphaRenderer};
use hofstadter::{FContext, MorphicWord, Numeration, Rank, SeedImages};

/// Upper bound on point counts and curve lengths requested by the page.
pub const MAX_POINTS: u32 = 2_000_000;

fn check_size(n: u32) -> Result<(), String> {
    if n > MAX_POINTS {
        Err(format!("at most {MAX_POINTS} points"))
    } else {
        Ok(())
    }
}

/// Interleaved `x0, y0, x1, y1, ...` of the `delta_3` cloud for `n < n_max`.
pub fn cloud(n_max: u32, shear: bool) -> Result<Vec<f64>, String> {
    check_size(n_max)?;
    let pts = fractal_points(n_max as u64, shear).map_err(|e| e.to_string())?;
    Ok(pts.iter().flat_map(|p| [p.x, p.y]).collect())
}

/// `F_k(0..=n_max)`.
pub fn curve(k: u32, n_max: u32) -> Result<Vec<u32>, String> {
    check_size(n_max)?;
    let ctx = FContext::warmed(k as usize, n_max as u64).map_err(|e| e.to_string())?;
    Ok(ctx.table().iter().map(|&v| v as u32).collect())
}

/// `F_k(n) - alpha_k n` for `n <= n_max`.
pub fn discrepancy(k: u32, n_max: u32) -> Result<Vec<f64>, String> {
    let f = curve(k, n_max)?;
    let mut render = AlphaRenderer::new(k as usize).map_err(|e| e.to_string())?;
    Ok(f.iter()
        .enumerate()
        .map(|(n, &v)| render.render_u64(v as u64, n as u64, 1))
        .collect())
}

#[derive(Debug, Serialize)]
pub struct Explained {
    pub k: usize,
    pub n: String,
    pub positions: Vec<usize>,
    /// `A_{k,p}` for every position, as decimal strings.
    pub terms: Vec<String>,
    pub digits: Option<String>,
    pub rank: Option<usize>,
    pub f: String,
    /// Letter `x_k[n]`, when `n` is small enough to materialize the word.
    pub letter: Option<u8>,
    /// `x_k[0..n)` rebuilt from the decomposition, for small `n`.
    pub prefix: Option<String>,
}

/// Largest `n` for which the word is shown alongside the decomposition.
const WORD_LIMIT: u64 = 200;

/// The canonical decomposition of `n` and everything read off it.
pub fn explain(k: u32, n: &str) -> Result<Explained, String> {
    let k = k as usize;
    let n: BigUint = n
        .trim()
        .parse()
        .map_err(|_| format!("not a natural number: {n:?}"))?;
    let mut num = Numeration::new(k).map_err(|e| e.to_string())?;
    let d = num.zeckendorf(&n);
    let terms = d
        .positions()
        .iter()
        .map(|&p| num.seq().a(p).to_string())
        .collect();
    let small = u64::try_from(&n).ok().filter(|&v| v <= WORD_LIMIT);
    let (letter, prefix) = match small {
        Some(v) => {
            let mut word = MorphicWord::new(k).map_err(|e| e.to_string())?;
            let mut images = SeedImages::new(k).map_err(|e| e.to_string())?;
            let w = images.word_of_decomp(&d).map_err(|e| e.to_string())?;
            (
                Some(word.letter(v as usize)),
                Some(hofstadter::words::render(&w)),
            )
        }
        None => (None, None),
    };
    Ok(Explained {
        k,
        n: n.to_string(),
        positions: d.positions().to_vec(),
        terms,
        digits: d.digits(),
        rank: match d.rank() {
            Rank::Finite(r) => Some(r),
            Rank::Infinity => None,
        },
        f: num.f_by_shift(&n).to_string(),
        letter,
        prefix,
    })
}

#[wasm_bindgen(js_name = fractalPoints)]
pub fn fractal_points_js(n_max: u32, shear: bool) -> Result<Vec<f64>, JsError> {
    cloud(n_max, shear).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = fCurve)]
pub fn f_curve_js(k: u32, n_max: u32) -> Result<Vec<u32>, JsError> {
    curve(k, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = discrepancyCurve)]
pub fn discrepancy_js(k: u32, n_max: u32) -> Result<Vec<f64>, JsError> {
    discrepancy(k, n_max).map_err(|e| JsError::new(&e))
}

/// JSON description of the decomposition of `n` (a decimal string).
#[wasm_bindgen(js_name = decompose)]
pub fn decompose_js(k: u32, n: &str) -> Result<String, JsError> {
    let e = explain(k, n).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&e).map_err(|e| JsError::new(&e.to_string()))
}
