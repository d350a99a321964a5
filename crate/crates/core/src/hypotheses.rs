//! Spectral-interval preconditions, reported with the intervals and the
//! margin by which each one holds or fails.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matrix::SymMatrix;
use crate::spectral::spectral_interval;

/// Intervals closer than this are treated as touching, which counts as
/// intersecting.
pub const TOUCH_SLACK: f64 = 1e-12;

/// Grid used by the integral-mean hypothesis unless the caller picks one.
pub const DEFAULT_HH_GRID: usize = 99;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubCondition {
    pub name: String,
    pub holds: bool,
    pub margin: f64,
}

/// Values of `v` on a grid for which a `v`-dependent condition held.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightWindow {
    pub first: f64,
    pub last: f64,
    pub holding: usize,
    pub grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub condition_name: String,
    pub holds: bool,
    pub intervals: Vec<(String, Interval)>,
    /// Smallest gap achieving the condition, or minus the amount by which it
    /// is violated. `holds == (margin >= 0)`.
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sub_conditions: Vec<SubCondition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_window: Option<WeightWindow>,
}

impl HypothesisReport {
    fn new(name: &str, holds: bool, margin: f64, intervals: Vec<(String, Interval)>) -> Self {
        // a condition failing only at a touching boundary still reports a negative margin
        let margin = if holds {
            margin.max(0.0)
        } else if margin >= 0.0 {
            -f64::MIN_POSITIVE
        } else {
            margin
        };
        Self {
            condition_name: name.to_string(),
            holds,
            intervals,
            margin,
            sub_conditions: Vec::new(),
            weight_window: None,
        }
    }
}

fn named(name: &str, iv: Interval) -> (String, Interval) {
    (name.to_string(), iv)
}

fn disjoint(a: &Interval, b: &Interval) -> SubCondition {
    let gap = a.gap(b) - TOUCH_SLACK;
    SubCondition {
        name: String::new(),
        holds: gap > 0.0,
        margin: gap,
    }
}

/// Tightest bounds `n ≤ A ≤ N`.
pub fn operator_bounds(a: &SymMatrix) -> Result<Interval> {
    spectral_interval(a)
}

/// `[n∇_v m, N∇_v M]` must miss both `[n, N]` and `[m, M]`, for `0 < v < 1`.
pub fn thm1_condition(nn: Interval, mm: Interval, v: f64) -> Result<HypothesisReport> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::WeightOutOfRange { v, range: "(0, 1)" });
    }
    let j = nn.mean_with(&mm, v);
    let mut left = disjoint(&j, &nn);
    left.name = "J ∩ [n,N] = ∅".into();
    let mut right = disjoint(&j, &mm);
    right.name = "J ∩ [m,M] = ∅".into();
    let holds = left.holds && right.holds;
    let margin = left.margin.min(right.margin);
    let mut report = HypothesisReport::new(
        "mean interval disjoint from both spectra",
        holds,
        margin,
        vec![named("[n,N]", nn), named("[m,M]", mm), named("J", j)],
    );
    report.sub_conditions = vec![left, right];
    Ok(report)
}

/// `τ(A) ∩ τ((A+B)/2) = ∅` and `τ(B) ∩ τ((A+B)/2) = ∅`.
pub fn midpoint_spectrum_condition(
    tau_a: Interval,
    tau_b: Interval,
    tau_mid: Interval,
) -> HypothesisReport {
    let mut left = disjoint(&tau_mid, &tau_a);
    left.name = "τ((A+B)/2) ∩ τ(A) = ∅".into();
    let mut right = disjoint(&tau_mid, &tau_b);
    right.name = "τ((A+B)/2) ∩ τ(B) = ∅".into();
    let mut report = HypothesisReport::new(
        "midpoint spectrum disjoint from both spectra",
        left.holds && right.holds,
        left.margin.min(right.margin),
        vec![
            named("τ(A)", tau_a),
            named("τ(B)", tau_b),
            named("τ((A+B)/2)", tau_mid),
        ],
    );
    report.sub_conditions = vec![left, right];
    report
}

/// For `v ≥ 1`: `[N∇_v m, n∇_v M]` misses `[m, M]` and contains `[n, N]`.
pub fn thm2_condition(nn: Interval, mm: Interval, v: f64) -> Result<HypothesisReport> {
    if !(v >= 1.0) || !v.is_finite() {
        return Err(Error::WeightOutOfRange {
            v,
            range: "[1, inf)",
        });
    }
    let c = (1.0 - v) * nn.hi + v * mm.lo;
    let d = (1.0 - v) * nn.lo + v * mm.hi;
    let cd = Interval {
        lo: c.min(d),
        hi: c.max(d),
    };
    let mut apart = disjoint(&cd, &mm);
    apart.name = "[c,d] ∩ [m,M] = ∅".into();
    let inside = (nn.lo - cd.lo).min(cd.hi - nn.hi) + TOUCH_SLACK;
    let contained = SubCondition {
        name: "[n,N] ⊆ [c,d]".into(),
        holds: inside >= 0.0,
        margin: inside,
    };
    let holds = apart.holds && contained.holds;
    let margin = apart.margin.min(contained.margin);
    let mut report = HypothesisReport::new(
        "extrapolated interval separated from [m,M] and covering [n,N]",
        holds,
        margin,
        vec![named("[n,N]", nn), named("[m,M]", mm), named("[c,d]", cd)],
    );
    report.sub_conditions = vec![apart, contained];
    Ok(report)
}

/// The mean-interval condition on the grid `v = i/(grid+1)`, `i = 1..=grid`.
pub fn hh_condition(nn: Interval, mm: Interval, grid: usize) -> Result<HypothesisReport> {
    if grid < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid must be at least 2, got {grid}"
        )));
    }
    let mut margin = f64::INFINITY;
    let mut window: Option<WeightWindow> = None;
    for i in 1..=grid {
        let v = i as f64 / (grid + 1) as f64;
        let r = thm1_condition(nn, mm, v)?;
        margin = margin.min(r.margin);
        if r.holds {
            let w = window.get_or_insert(WeightWindow {
                first: v,
                last: v,
                holding: 0,
                grid,
            });
            w.last = v;
            w.holding += 1;
        }
    }
    let holds = window.is_some_and(|w| w.holding == grid);
    let mut report = HypothesisReport::new(
        "mean interval disjoint from both spectra for every sampled v",
        holds,
        margin,
        vec![named("[n,N]", nn), named("[m,M]", mm)],
    );
    report.weight_window = window;
    Ok(report)
}

/// The mean-interval condition decided for every `v` in `(0, 1)` at once.
///
/// Both gaps are continuous and piecewise linear in `v`, with breakpoints
/// where an endpoint of `J(v)` crosses an endpoint of `[n, N]` or `[m, M]`,
/// so their infimum over `[0, 1]` is attained at `v ∈ {0, 1}` or at one of
/// those crossings.
pub fn hh_condition_exact(nn: Interval, mm: Interval) -> HypothesisReport {
    let lo_at = |v: f64| nn.lo + v * (mm.lo - nn.lo);
    let hi_at = |v: f64| nn.hi + v * (mm.hi - nn.hi);
    let margin_at = |v: f64| {
        let j = Interval {
            lo: lo_at(v).min(hi_at(v)),
            hi: lo_at(v).max(hi_at(v)),
        };
        j.gap(&nn).min(j.gap(&mm)) - TOUCH_SLACK
    };
    let mut candidates = vec![0.0, 1.0];
    for target in [nn.lo, nn.hi, mm.lo, mm.hi] {
        for (start, slope) in [(nn.lo, mm.lo - nn.lo), (nn.hi, mm.hi - nn.hi)] {
            if slope != 0.0 {
                let v = (target - start) / slope;
                if (0.0..=1.0).contains(&v) {
                    candidates.push(v);
                }
            }
        }
    }
    let (v_worst, margin) =
        candidates
            .into_iter()
            .map(|v| (v, margin_at(v)))
            .fold(
                (0.0, f64::INFINITY),
                |acc, x| if x.1 < acc.1 { x } else { acc },
            );
    let mut report = HypothesisReport::new(
        "mean interval disjoint from both spectra for all v in (0,1)",
        margin > 0.0,
        margin,
        vec![named("[n,N]", nn), named("[m,M]", mm)],
    );
    report.sub_conditions = vec![SubCondition {
        name: format!("worst v = {v_worst}"),
        holds: margin > 0.0,
        margin,
    }];
    report
}

/// `0 < m ≤ ℓ·n ≤ ℓ·N ≤ M`.
pub fn ell_sandwich_condition(
    m: f64,
    nn: Interval,
    big_m: f64,
    ell: usize,
) -> Result<HypothesisReport> {
    if ell == 0 {
        return Err(Error::InvalidArgument("ell must be at least 1".into()));
    }
    let l = ell as f64;
    let lower = l * nn.lo - m;
    let upper = big_m - l * nn.hi;
    let holds = m > 0.0 && lower >= 0.0 && upper >= 0.0;
    let margin = lower.min(upper).min(m);
    let mut report = HypothesisReport::new(
        &format!("0 < m <= {ell}n <= {ell}N <= M"),
        holds,
        margin,
        vec![
            named("[n,N]", nn),
            named(
                "[m,M]",
                Interval {
                    lo: m,
                    hi: big_m.max(m),
                },
            ),
        ],
    );
    report.sub_conditions = vec![
        SubCondition {
            name: "m > 0".into(),
            holds: m > 0.0,
            margin: m,
        },
        SubCondition {
            name: format!("m <= {ell}n"),
            holds: lower >= 0.0,
            margin: lower,
        },
        SubCondition {
            name: format!("{ell}N <= M"),
            holds: upper >= 0.0,
            margin: upper,
        },
    ];
    Ok(report)
}

/// `0 < m ≤ 2n ≤ 2N ≤ M`.
pub fn sandwich_condition(m: f64, nn: Interval, big_m: f64) -> HypothesisReport {
    ell_sandwich_condition(m, nn, big_m, 2).expect("ell = 2 is valid")
}
