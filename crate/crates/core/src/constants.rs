//! Mond–Pečarić ratio constants
//!
//! ```text
//! K(m, M, f) = max_{t ∈ [m, M]} s(t) / f(t)
//! k(m, M, f) = min_{t ∈ [m, M]} s(t) / f(t)
//! ```
//!
//! where `s` is the chord of `f` through `(m, f(m))` and `(M, f(M))`, and the
//! reverse Jensen bounds built from them.
//!
//! The extremum is bracketed on a uniform grid and polished by golden-section
//! search inside the best grid cell.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::ScalarFunction;
use crate::matrix::SymMatrix;
use crate::report::{InequalityReport, InputDigest};
use crate::spectral::{apply_function, spectral_interval};

pub const GRID_POINTS: usize = 4096;
/// Final bracket width of the golden-section refinement, relative to `max(1, |t|)`.
pub const GOLDEN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extremum {
    Max,
    Min,
}

impl Extremum {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Extremum::Max => a > b,
            Extremum::Min => a < b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioConstant {
    /// `"K"` for the maximum, `"k"` for the minimum.
    pub name: String,
    pub value: f64,
    /// Where the extremum is attained.
    pub argument: f64,
    pub m: f64,
    pub big_m: f64,
    pub method: String,
    pub grid_points: usize,
}

/// Chord-to-function ratio of `f` on `[m, M]`.
struct Ratio<'a> {
    f: &'a ScalarFunction,
    m: f64,
    big_m: f64,
    fm: f64,
    f_big_m: f64,
}

impl<'a> Ratio<'a> {
    fn new(f: &'a ScalarFunction, m: f64, big_m: f64) -> Result<Self> {
        if !(m > 0.0) || !big_m.is_finite() || m > big_m {
            return Err(Error::InvalidBounds { m, big_m });
        }
        if m == big_m {
            return Err(Error::DegenerateInterval { lo: m, hi: big_m });
        }
        Ok(Self {
            f,
            m,
            big_m,
            fm: f.eval(m)?,
            f_big_m: f.eval(big_m)?,
        })
    }

    /// `(ratio, f(t))`.
    fn at(&self, t: f64) -> Result<(f64, f64)> {
        let ft = self.f.eval(t)?;
        let chord =
            ((self.big_m - t) * self.fm + (t - self.m) * self.f_big_m) / (self.big_m - self.m);
        Ok((chord / ft, ft))
    }

    fn grid_point(&self, i: usize, points: usize) -> f64 {
        if i + 1 == points {
            self.big_m
        } else {
            self.m + (self.big_m - self.m) * i as f64 / (points - 1) as f64
        }
    }
}

/// Uniform-grid search for the extremum of the chord ratio, returning
/// `(value, argument, index)`. Ties go to the smallest `t`.
fn grid_scan(ratio: &Ratio, points: usize, kind: Extremum) -> Result<(f64, f64, usize)> {
    let mut best = (f64::NAN, f64::NAN, 0);
    let mut min_f = f64::INFINITY;
    for i in 0..points {
        let t = ratio.grid_point(i, points);
        let (r, ft) = ratio.at(t)?;
        min_f = min_f.min(ft);
        if i == 0 || kind.better(r, best.0) {
            best = (r, t, i);
        }
    }
    if !(min_f > 0.0) {
        return Err(Error::NonPositiveFunction {
            function: ratio.f.name(),
            m: ratio.m,
            big_m: ratio.big_m,
            min_value: min_f,
        });
    }
    Ok(best)
}

/// Golden-section search for the maximum of a unimodal `g` on `[a, b]`.
pub fn golden_section_max(
    mut g: impl FnMut(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    while (b - a) > tol * a.abs().max(b.abs()).max(1.0) {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, g(x)?))
}

/// Dense uniform-grid value of the constant, without refinement.
pub fn grid_constant(
    f: &ScalarFunction,
    m: f64,
    big_m: f64,
    points: usize,
    kind: Extremum,
) -> Result<(f64, f64)> {
    if points < 2 {
        return Err(Error::InvalidArgument(
            "grid needs at least 2 points".into(),
        ));
    }
    let ratio = Ratio::new(f, m, big_m)?;
    let (v, t, _) = grid_scan(&ratio, points, kind)?;
    Ok((v, t))
}

fn ratio_constant(f: &ScalarFunction, m: f64, big_m: f64, kind: Extremum) -> Result<RatioConstant> {
    let ratio = Ratio::new(f, m, big_m)?;
    let (grid_value, grid_arg, i) = grid_scan(&ratio, GRID_POINTS, kind)?;
    let lo = ratio.grid_point(i.saturating_sub(1), GRID_POINTS);
    let hi = ratio.grid_point((i + 1).min(GRID_POINTS - 1), GRID_POINTS);
    let sign = match kind {
        Extremum::Max => 1.0,
        Extremum::Min => -1.0,
    };
    let (t, g) = golden_section_max(|t| Ok(sign * ratio.at(t)?.0), lo, hi, GOLDEN_TOL)?;
    let refined = sign * g;
    let (value, argument) = if kind.better(refined, grid_value) {
        (refined, t)
    } else {
        (grid_value, grid_arg)
    };
    Ok(RatioConstant {
        name: match kind {
            Extremum::Max => "K".into(),
            Extremum::Min => "k".into(),
        },
        value,
        argument,
        m,
        big_m,
        method: "grid+golden_section".into(),
        grid_points: GRID_POINTS,
    })
}

/// `K(m, M, f)`, the maximum of chord over function on `[m, M]`.
pub fn big_k(m: f64, big_m: f64, f: &ScalarFunction) -> Result<RatioConstant> {
    ratio_constant(f, m, big_m, Extremum::Max)
}

/// `k(m, M, f)`, the minimum of chord over function on `[m, M]`.
pub fn small_k(m: f64, big_m: f64, f: &ScalarFunction) -> Result<RatioConstant> {
    ratio_constant(f, m, big_m, Extremum::Min)
}

/// Absolute slack allowed when checking that spectra lie in `[m, M]`.
pub(crate) fn bounds_slack(big_m: f64) -> f64 {
    1e-12 * big_m.abs().max(1.0)
}

pub(crate) fn check_spectra_in(ops: &[SymMatrix], m: f64, big_m: f64) -> Result<()> {
    let slack = bounds_slack(big_m);
    for (index, a) in ops.iter().enumerate() {
        let tau = spectral_interval(a)?;
        if tau.lo < m - slack || tau.hi > big_m + slack {
            return Err(Error::SpectraOutOfBounds {
                index,
                lo: tau.lo,
                hi: tau.hi,
                m,
                big_m,
            });
        }
    }
    Ok(())
}

struct JensenTerms {
    weighted_values: SymMatrix,
    value_at_mean: SymMatrix,
}

fn jensen_terms(
    f: &ScalarFunction,
    weights: &[f64],
    operators: &[SymMatrix],
    m: f64,
    big_m: f64,
) -> Result<JensenTerms> {
    if weights.is_empty() || weights.len() != operators.len() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} operators",
            weights.len(),
            operators.len()
        )));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 || weights.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::WeightsNotNormalized { sum });
    }
    check_spectra_in(operators, m, big_m)?;
    let dim = operators[0].dim();
    let mut weighted_values = SymMatrix::zeros(dim);
    let mut mean = SymMatrix::zeros(dim);
    for (w, a) in weights.iter().zip(operators) {
        weighted_values = weighted_values.lin_comb(1.0, &apply_function(f, a)?, *w)?;
        mean = mean.lin_comb(1.0, a, *w)?;
    }
    Ok(JensenTerms {
        weighted_values,
        value_at_mean: apply_function(f, &mean)?,
    })
}

fn jensen_digest(
    tag: &str,
    f: &ScalarFunction,
    weights: &[f64],
    ops: &[SymMatrix],
    m: f64,
    big_m: f64,
) -> String {
    let mut d = InputDigest::new(tag)
        .text(&f.spec_json())
        .number(m)
        .number(big_m);
    for w in weights {
        d = d.number(*w);
    }
    for a in ops {
        d = d.matrix(a);
    }
    d.finish()
}

/// `Σ wᵢ f(Aᵢ) ≤ K(m, M, f) · f(Σ wᵢ Aᵢ)` for positive operator convex `f`.
pub fn jensen_upper(
    f: &ScalarFunction,
    weights: &[f64],
    operators: &[SymMatrix],
    m: f64,
    big_m: f64,
    rel_tol: f64,
) -> Result<InequalityReport> {
    if !f.flags().operator_convex {
        return Err(Error::FlagMissing {
            function: f.name(),
            flag: "operator_convex",
        });
    }
    let terms = jensen_terms(f, weights, operators, m, big_m)?;
    let k = big_k(m, big_m, f)?;
    let rhs = terms.value_at_mean.scale(k.value);
    let digest = jensen_digest("jensen_upper", f, weights, operators, m, big_m);
    let mut report =
        InequalityReport::compare("jensen_upper", terms.weighted_values, rhs, rel_tol, digest)?;
    report.constants.push(k);
    Ok(report)
}

/// `k(m, M, f) · f(Σ wᵢ Aᵢ) ≤ Σ wᵢ f(Aᵢ)` for positive operator concave `f`.
pub fn jensen_lower(
    f: &ScalarFunction,
    weights: &[f64],
    operators: &[SymMatrix],
    m: f64,
    big_m: f64,
    rel_tol: f64,
) -> Result<InequalityReport> {
    if !f.flags().operator_concave {
        return Err(Error::FlagMissing {
            function: f.name(),
            flag: "operator_concave",
        });
    }
    let terms = jensen_terms(f, weights, operators, m, big_m)?;
    let k = small_k(m, big_m, f)?;
    let lhs = terms.value_at_mean.scale(k.value);
    let digest = jensen_digest("jensen_lower", f, weights, operators, m, big_m);
    let mut report =
        InequalityReport::compare("jensen_lower", lhs, terms.weighted_values, rel_tol, digest)?;
    report.constants.push(k);
    Ok(report)
}
