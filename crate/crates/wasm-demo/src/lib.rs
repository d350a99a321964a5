//! WebAssembly bindings behind `www/index.html`. Every export returns JSON
//! text, or an error message.

use loewner_lab::constants::{big_k, small_k};
use loewner_lab::hypotheses::{hh_condition_exact, thm1_condition};
use loewner_lab::{Interval, ScalarFunction, Suite, SymMatrix};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn message(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("demo outputs serialize")
}

#[derive(Serialize)]
struct Curve {
    t: Vec<f64>,
    ratio: Vec<f64>,
    big_k: f64,
    big_k_at: f64,
    small_k: f64,
    small_k_at: f64,
}

/// Chord-over-function ratio of `f` (e.g. `power:2`, `inverse_shift:1`) on
/// `[m, M]`, sampled at `points` points, with `K` and `k`.
#[wasm_bindgen]
pub fn ratio_curve(f: &str, m: f64, big_m: f64, points: usize) -> Result<String, String> {
    let f: ScalarFunction = f.parse().map_err(message)?;
    let big = big_k(m, big_m, &f).map_err(message)?;
    let small = small_k(m, big_m, &f).map_err(message)?;
    let points = points.clamp(2, 10_000);
    let (fm, f_big_m) = (f.eval(m).map_err(message)?, f.eval(big_m).map_err(message)?);
    let mut curve = Curve {
        t: Vec::with_capacity(points),
        ratio: Vec::with_capacity(points),
        big_k: big.value,
        big_k_at: big.argument,
        small_k: small.value,
        small_k_at: small.argument,
    };
    for i in 0..points {
        let t = m + (big_m - m) * i as f64 / (points - 1) as f64;
        let chord = ((big_m - t) * fm + (t - m) * f_big_m) / (big_m - m);
        curve.t.push(t);
        curve.ratio.push(chord / f.eval(t).map_err(message)?);
    }
    Ok(json(&curve))
}

#[derive(Serialize)]
struct Window {
    v: Vec<f64>,
    margin: Vec<f64>,
    /// Whether the condition holds for every `v` in `(0, 1)` at once.
    all_weights: bool,
    all_weights_margin: f64,
}

/// Margin of the mean-interval condition for `[n, N]`, `[m, M]` across
/// `points` interior weights.
#[wasm_bindgen]
pub fn hypothesis_window(
    n: f64,
    big_n: f64,
    m: f64,
    big_m: f64,
    points: usize,
) -> Result<String, String> {
    let nn = Interval::new(n, big_n).map_err(message)?;
    let mm = Interval::new(m, big_m).map_err(message)?;
    let points = points.clamp(1, 10_000);
    let mut window = Window {
        v: Vec::with_capacity(points),
        margin: Vec::with_capacity(points),
        all_weights: false,
        all_weights_margin: 0.0,
    };
    for i in 1..=points {
        let v = i as f64 / (points + 1) as f64;
        window.v.push(v);
        window
            .margin
            .push(thm1_condition(nn, mm, v).map_err(message)?.margin);
    }
    let exact = hh_condition_exact(nn, mm);
    window.all_weights = exact.holds;
    window.all_weights_margin = exact.margin;
    Ok(json(&window))
}

#[derive(Serialize)]
struct PowerDifference {
    /// `rhs - lhs`, row-major.
    difference: Vec<Vec<f64>>,
    relation: String,
    min_eig: f64,
    max_eig: f64,
    hypothesis_holds: bool,
    holds: bool,
    note: String,
}

/// `A^r + B^r` against `2^(1-r)(A+B)^r` for row-major square matrices.
#[wasm_bindgen]
pub fn power_difference(a: &[f64], b: &[f64], r: f64) -> Result<String, String> {
    let dim = (a.len() as f64).sqrt().round() as usize;
    let a = SymMatrix::from_row_major(dim, a.to_vec()).map_err(message)?;
    let b = SymMatrix::from_row_major(dim, b.to_vec()).map_err(message)?;
    let report = Suite::default().check_power(r, &a, &b).map_err(message)?;
    Ok(json(&PowerDifference {
        difference: report.rhs.sub(&report.lhs).map_err(message)?.rows(),
        relation: format!("{:?}", report.verdict.relation),
        min_eig: report.verdict.min_eig_of_difference,
        max_eig: report.verdict.max_eig_of_difference,
        hypothesis_holds: report.hypothesis_holds().unwrap_or(true),
        holds: report.holds(),
        note: report.notes.join("; "),
    }))
}
