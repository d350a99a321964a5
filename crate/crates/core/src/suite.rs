//! Checkers for the subadditivity-type operator inequalities.
//!
//! Every checker evaluates its conclusion even when the spectral hypothesis
//! fails, so failed-hypothesis/failed-conclusion pairs stay observable. The
//! constant-based checkers are the exception: their bounds are part of the
//! statement, and a failed sandwich condition is reported as an error.

use crate::constants::{big_k, check_spectra_in, small_k};
use crate::error::{Error, Result};
use crate::functions::{Family, ScalarFunction};
use crate::hypotheses::{
    ell_sandwich_condition, hh_condition, hh_condition_exact, midpoint_spectrum_condition,
    operator_bounds, sandwich_condition, thm1_condition, thm2_condition, HypothesisReport,
    DEFAULT_HH_GRID,
};
use crate::interval::Interval;
use crate::matrix::SymMatrix;
use crate::means::{arithmetic_mean, geometric_mean, hh_integral_mean, DEFAULT_PANELS};
use crate::report::{ChainLink, InequalityReport, InputDigest, ScalarInequality, ScalarReport};
use crate::spectral::{
    apply_function, loewner_compare, matrix_power, require_strictly_positive, spectral_interval,
    DEFAULT_REL_TOL,
};

/// Positivity required where an inverse or a fractional power is taken.
pub const STRICT_POSITIVITY_REL: f64 = 1e-10;
/// Allowed deviation of `‖x‖` from 1 in the inner-product checks.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Which inequality of the `ℓ`-term extension to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllMode {
    /// `f(ΣAᵢ) ≤ (1/k) Σ f(Aᵢ)` for operator concave `f`.
    ConcaveLower,
    /// `(1/(ℓ²K)) Σ f(Aᵢ) ≤ f(ΣAᵢ)` for operator monotone decreasing `f`.
    DecreasingUpper,
}

impl std::str::FromStr for EllMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concave_lower" => Ok(Self::ConcaveLower),
            "decreasing_upper" => Ok(Self::DecreasingUpper),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?}, expected concave_lower or decreasing_upper"
            ))),
        }
    }
}

/// `(n, N)` with `n ≤ A, B ≤ N` as tight as possible.
pub fn joint_bounds(a: &SymMatrix, b: &SymMatrix) -> Result<Interval> {
    Ok(spectral_interval(a)?.hull(&spectral_interval(b)?))
}

/// Tightest admissible `(m, M) = (2n, 2N)` for the sandwich-type theorems.
pub fn auto_sandwich_bounds(a: &SymMatrix, b: &SymMatrix) -> Result<(f64, f64)> {
    let nn = joint_bounds(a, b)?;
    Ok((2.0 * nn.lo, 2.0 * nn.hi))
}

fn digest(tag: &str, f: Option<&ScalarFunction>, mats: &[&SymMatrix], params: &[f64]) -> String {
    let mut d = InputDigest::new(tag);
    if let Some(f) = f {
        d = d.text(&f.spec_json());
    }
    for m in mats {
        d = d.matrix(m);
    }
    for p in params {
        d = d.number(*p);
    }
    d.finish()
}

/// `f(A)`, using exact repeated squaring for non-negative integer powers.
pub fn evaluate(f: &ScalarFunction, a: &SymMatrix) -> Result<SymMatrix> {
    match f.family() {
        Family::Power { r } if r >= 0.0 && r.fract() == 0.0 && r <= 1024.0 => matrix_power(a, r),
        _ => apply_function(f, a),
    }
}

fn require_flag(f: &ScalarFunction, ok: bool, flag: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::FlagMissing {
            function: f.name(),
            flag,
        })
    }
}

fn require_same_dim(a: &SymMatrix, b: &SymMatrix) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        })
    }
}

fn require_hypothesis(h: &HypothesisReport) -> Result<()> {
    if h.holds {
        Ok(())
    } else {
        Err(Error::HypothesisFailed {
            condition: h.condition_name.clone(),
            margin: h.margin,
        })
    }
}

/// Spectral intervals of the two operators, or the caller's bounds after
/// checking that they really enclose the spectra.
fn resolve_bounds(
    a: &SymMatrix,
    b: &SymMatrix,
    bounds_override: Option<(Interval, Interval)>,
) -> Result<(Interval, Interval)> {
    let (ta, tb) = (operator_bounds(a)?, operator_bounds(b)?);
    let Some((nn, mm)) = bounds_override else {
        return Ok((ta, tb));
    };
    for (index, (tau, bound)) in [(ta, nn), (tb, mm)].into_iter().enumerate() {
        let slack = 1e-12 * bound.hi.abs().max(1.0);
        if tau.lo < bound.lo - slack || tau.hi > bound.hi + slack {
            return Err(Error::SpectraOutOfBounds {
                index,
                lo: tau.lo,
                hi: tau.hi,
                m: bound.lo,
                big_m: bound.hi,
            });
        }
    }
    Ok((nn, mm))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Suite {
    /// Relative tolerance of every Loewner comparison.
    pub rel_tol: f64,
    /// Gauss–Legendre panels for the integral mean.
    pub panels: usize,
}

impl Default for Suite {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            panels: DEFAULT_PANELS,
        }
    }
}

impl Suite {
    pub fn with_tolerance(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    fn link(&self, label: &str, left: &SymMatrix, right: &SymMatrix) -> Result<ChainLink> {
        Ok(ChainLink {
            label: label.to_string(),
            verdict: loewner_compare(right, left, self.rel_tol)?,
        })
    }

    /// `f(A∇_v B) ≤ f(A)∇_v f(B)` for convex `f`, reversed for concave `f`.
    pub fn check_thm1(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
        v: f64,
        bounds_override: Option<(Interval, Interval)>,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        let (nn, mm) = resolve_bounds(a, b, bounds_override)?;
        let hypothesis = thm1_condition(nn, mm, v)?;
        self.mean_vs_means("thm1", f, a, b, v, hypothesis)
    }

    /// The `v ≥ 1` version of [`Suite::check_thm1`].
    pub fn check_thm2(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
        v: f64,
        bounds_override: Option<(Interval, Interval)>,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        let (nn, mm) = resolve_bounds(a, b, bounds_override)?;
        let hypothesis = thm2_condition(nn, mm, v)?;
        self.mean_vs_means("thm2", f, a, b, v, hypothesis)
    }

    fn mean_vs_means(
        &self,
        id: &str,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
        v: f64,
        hypothesis: HypothesisReport,
    ) -> Result<InequalityReport> {
        let flags = f.flags();
        require_flag(
            f,
            flags.convex_on_domain || flags.concave_on_domain,
            "convex_on_domain or concave_on_domain",
        )?;
        let at_mean = evaluate(f, &arithmetic_mean(a, b, v)?)?;
        let mean_of_values = arithmetic_mean(&evaluate(f, a)?, &evaluate(f, b)?, v)?;
        let concave = !flags.convex_on_domain;
        let (lhs, rhs) = if concave {
            (mean_of_values, at_mean)
        } else {
            (at_mean, mean_of_values)
        };
        let digest = digest(id, Some(f), &[a, b], &[v]);
        let mut report = InequalityReport::compare(id, lhs, rhs, self.rel_tol, digest)?;
        if concave {
            report.notes.push("f is concave: sides reversed".into());
        }
        report.hypothesis = Some(hypothesis);
        Ok(report)
    }

    /// `2f(A+B) ≤ f(2A) + f(2B)`, and `f(A+B) ≤ f(A) + f(B)` when `f(2t) ≤ 2f(t)`.
    pub fn check_subadditivity_double(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        require_flag(f, f.flags().convex_on_domain, "convex_on_domain")?;
        let hypothesis = thm1_condition(
            operator_bounds(a)?.scale(2.0),
            operator_bounds(b)?.scale(2.0),
            0.5,
        )?;
        let (a2, b2) = (a.scale(2.0), b.scale(2.0));
        let f_sum = evaluate(f, &a.add(b)?)?;
        let lhs = f_sum.scale(2.0);
        let rhs = evaluate(f, &a2)?.add(&evaluate(f, &b2)?)?;
        let mut links = vec![self.link("2f(A+B) ≤ f(2A)+f(2B)", &lhs, &rhs)?];
        if f.flags().doubling {
            let split = evaluate(f, a)?.add(&evaluate(f, b)?)?;
            links.push(self.link("f(A+B) ≤ f(A)+f(B)", &f_sum, &split)?);
        }
        let digest = digest("subadditivity_double", Some(f), &[a, b], &[]);
        let mut report =
            InequalityReport::compare("subadditivity_double", lhs, rhs, self.rel_tol, digest)?;
        report.hypothesis = Some(hypothesis);
        report.chain_links = links;
        Ok(report)
    }

    /// `2^{1-r}(A+B)^r ≤ A^r + B^r` for `r > 1` or `r < 0`, reversed for `r ∈ [0, 1]`.
    pub fn check_power(&self, r: f64, a: &SymMatrix, b: &SymMatrix) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        if !r.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "exponent {r} is not finite"
            )));
        }
        if r < 0.0 || r.fract() != 0.0 {
            require_strictly_positive(a, STRICT_POSITIVITY_REL)?;
            require_strictly_positive(b, STRICT_POSITIVITY_REL)?;
        }
        let sum = a.add(b)?;
        let hypothesis = midpoint_spectrum_condition(
            spectral_interval(a)?,
            spectral_interval(b)?,
            spectral_interval(&sum.scale(0.5))?,
        );
        let scaled = matrix_power(&sum, r)?.scale(2f64.powf(1.0 - r));
        let split = matrix_power(a, r)?.add(&matrix_power(b, r)?)?;
        let reversed = (0.0..=1.0).contains(&r);
        let (lhs, rhs) = if reversed {
            (split, scaled)
        } else {
            (scaled, split)
        };
        let digest = digest("power", None, &[a, b], &[r]);
        let mut report = InequalityReport::compare("power", lhs, rhs, self.rel_tol, digest)?;
        report.notes.push(if reversed {
            "r in [0,1]: A^r + B^r ≤ 2^(1-r)(A+B)^r".into()
        } else {
            "r > 1 or r < 0: 2^(1-r)(A+B)^r ≤ A^r + B^r".into()
        });
        report.hypothesis = Some(hypothesis);
        Ok(report)
    }

    /// `f((A+B)/2) ≤ ∫₀¹ f(A∇_v B) dv ≤ (f(A) + f(B))/2`.
    pub fn check_hh_chain(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        require_flag(f, f.flags().convex_on_domain, "convex_on_domain")?;
        let (ta, tb) = (operator_bounds(a)?, operator_bounds(b)?);
        let hypothesis = hh_condition(ta, tb, DEFAULT_HH_GRID)?;
        let exact = hh_condition_exact(ta, tb);
        let lhs = evaluate(f, &arithmetic_mean(a, b, 0.5)?)?;
        let integral = hh_integral_mean(f, a, b, self.panels)?;
        let rhs = evaluate(f, a)?.lin_comb(0.5, &evaluate(f, b)?, 0.5)?;
        let links = vec![
            self.link("f((A+B)/2) ≤ ∫f(A∇_vB)dv", &lhs, &integral.value)?,
            self.link("∫f(A∇_vB)dv ≤ (f(A)+f(B))/2", &integral.value, &rhs)?,
        ];
        let digest = digest("hh_chain", Some(f), &[a, b], &[self.panels as f64]);
        let mut report = InequalityReport::compare("hh_chain", lhs, rhs, self.rel_tol, digest)?;
        report.notes.push(format!(
            "quadrature: {} panels, refinement delta {:e}",
            integral.panels, integral.refinement_delta
        ));
        report.notes.push(format!(
            "condition for every v in (0,1): {} (margin {:e})",
            if exact.holds { "holds" } else { "fails" },
            exact.margin
        ));
        report.hypothesis = Some(hypothesis);
        report.chain_links = links;
        Ok(report)
    }

    /// `2f(A+B) ≤ 2f(A∇B) ≤ 2(f(A)♯f(B)) ≤ f(A) + f(B)` for operator monotone
    /// decreasing `f`; the end-to-end verdict is `2f(A+B) ≤ f(A) + f(B)`.
    pub fn check_decreasing_chain(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        require_flag(
            f,
            f.flags().operator_monotone_decreasing,
            "operator_monotone_decreasing",
        )?;
        require_strictly_positive(a, STRICT_POSITIVITY_REL)?;
        require_strictly_positive(b, STRICT_POSITIVITY_REL)?;
        let (fa, fb) = (evaluate(f, a)?, evaluate(f, b)?);
        let t1 = evaluate(f, &a.add(b)?)?.scale(2.0);
        let t2 = evaluate(f, &arithmetic_mean(a, b, 0.5)?)?.scale(2.0);
        let t3 = geometric_mean(&fa, &fb, 0.5)?.scale(2.0);
        let t4 = fa.add(&fb)?;
        let links = vec![
            self.link("2f(A+B) ≤ 2f(A∇B)", &t1, &t2)?,
            self.link("2f(A∇B) ≤ 2(f(A)♯f(B))", &t2, &t3)?,
            self.link("2(f(A)♯f(B)) ≤ f(A)+f(B)", &t3, &t4)?,
        ];
        let digest = digest("decreasing_chain", Some(f), &[a, b], &[]);
        let mut report =
            InequalityReport::compare("decreasing_chain", t1, t4, self.rel_tol, digest)?;
        report.chain_links = links;
        Ok(report)
    }

    /// `f(A) + f(B) ≤ 4K(m, M, f) f(A+B)` for operator monotone decreasing `f`
    /// under `0 < m ≤ 2n ≤ 2N ≤ M`.
    pub fn check_reverse_subadditivity(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
        m: f64,
        big_m: f64,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        require_flag(
            f,
            f.flags().operator_monotone_decreasing,
            "operator_monotone_decreasing",
        )?;
        let hypothesis = sandwich_condition(m, joint_bounds(a, b)?, big_m);
        require_hypothesis(&hypothesis)?;
        let k = big_k(m, big_m, f)?;
        let lhs = evaluate(f, a)?.add(&evaluate(f, b)?)?;
        let rhs = evaluate(f, &a.add(b)?)?.scale(4.0 * k.value);
        let digest = digest("reverse_subadditivity", Some(f), &[a, b], &[m, big_m]);
        let mut report =
            InequalityReport::compare("reverse_subadditivity", lhs, rhs, self.rel_tol, digest)?;
        report.hypothesis = Some(hypothesis);
        report.constants.push(k);
        Ok(report)
    }

    /// `k(m, M, f) f(A+B) ≤ f(A) + f(B)` for operator concave `f` under
    /// `0 < m ≤ 2n ≤ 2N ≤ M`.
    pub fn check_concave_lower(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
        m: f64,
        big_m: f64,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        require_flag(f, f.flags().operator_concave, "operator_concave")?;
        let hypothesis = sandwich_condition(m, joint_bounds(a, b)?, big_m);
        require_hypothesis(&hypothesis)?;
        let k = small_k(m, big_m, f)?;
        let lhs = evaluate(f, &a.add(b)?)?.scale(k.value);
        let rhs = evaluate(f, a)?.add(&evaluate(f, b)?)?;
        let digest = digest("concave_lower", Some(f), &[a, b], &[m, big_m]);
        let mut report =
            InequalityReport::compare("concave_lower", lhs, rhs, self.rel_tol, digest)?;
        report.hypothesis = Some(hypothesis);
        report.constants.push(k);
        Ok(report)
    }

    /// The `ℓ`-operator extensions of the two sandwich theorems, under
    /// `0 < m ≤ ℓn ≤ ℓN ≤ M`.
    pub fn check_ell_sum(
        &self,
        f: &ScalarFunction,
        operators: &[SymMatrix],
        m: f64,
        big_m: f64,
        mode: EllMode,
    ) -> Result<InequalityReport> {
        let Some(first) = operators.first() else {
            return Err(Error::InvalidArgument(
                "at least one operator is required".into(),
            ));
        };
        let mut nn = operator_bounds(first)?;
        for a in &operators[1..] {
            require_same_dim(first, a)?;
            nn = nn.hull(&operator_bounds(a)?);
        }
        let ell = operators.len();
        let hypothesis = ell_sandwich_condition(m, nn, big_m, ell)?;
        let values = operators
            .iter()
            .map(|a| evaluate(f, a))
            .collect::<Result<Vec<_>>>()?;
        let value_sum = SymMatrix::sum(&values)?;
        let at_sum = evaluate(f, &SymMatrix::sum(operators)?)?;
        let (lhs, rhs, constant) = match mode {
            EllMode::ConcaveLower => {
                require_flag(f, f.flags().operator_concave, "operator_concave")?;
                require_hypothesis(&hypothesis)?;
                let k = small_k(m, big_m, f)?;
                (at_sum, value_sum.scale(1.0 / k.value), k)
            }
            EllMode::DecreasingUpper => {
                require_flag(
                    f,
                    f.flags().operator_monotone_decreasing,
                    "operator_monotone_decreasing",
                )?;
                require_hypothesis(&hypothesis)?;
                let k = big_k(m, big_m, f)?;
                let l = ell as f64;
                (value_sum.scale(1.0 / (l * l * k.value)), at_sum, k)
            }
        };
        let refs: Vec<&SymMatrix> = operators.iter().collect();
        let tag = match mode {
            EllMode::ConcaveLower => "ell_sum/concave_lower",
            EllMode::DecreasingUpper => "ell_sum/decreasing_upper",
        };
        let digest = digest(tag, Some(f), &refs, &[m, big_m]);
        let mut report = InequalityReport::compare("ell_sum", lhs, rhs, self.rel_tol, digest)?;
        report.notes.push(format!("mode {tag}, ell = {ell}"));
        report.hypothesis = Some(hypothesis);
        report.constants.push(constant);
        Ok(report)
    }

    /// `f(A) + f(B) ≤ K(m, M, f) f(A+B)` for convex `f` with `f(0) = 0`, or
    /// `k(m, M, f) f(A+B) ≤ f(A) + f(B)` for concave `f`, with `m ≤ A, B ≤ M`.
    ///
    /// `f(A+B)` sees spectra up to `2M`, so `f` must be defined on `[0, 2M]`.
    pub fn check_k_k_subadditivity(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
        m: f64,
        big_m: f64,
    ) -> Result<InequalityReport> {
        require_same_dim(a, b)?;
        let flags = f.flags();
        require_flag(
            f,
            flags.convex_on_domain || flags.concave_on_domain,
            "convex_on_domain or concave_on_domain",
        )?;
        check_spectra_in(&[a.clone(), b.clone()], m, big_m)?;
        let needed = Interval {
            lo: 0.0,
            hi: 2.0 * big_m,
        };
        if !f.domain().contains_interval(&needed) {
            return Err(f.domain_error(if f.domain().contains(0.0) {
                2.0 * big_m
            } else {
                0.0
            }));
        }
        let f0 = f.value_at_zero();
        let split = evaluate(f, a)?.add(&evaluate(f, b)?)?;
        let at_sum = evaluate(f, &a.add(b)?)?;
        let digest = digest("K_k_subadditivity", Some(f), &[a, b], &[m, big_m]);
        let mut report = if flags.convex_on_domain {
            if f0 != Some(0.0) {
                return Err(Error::ZeroValueViolation {
                    function: f.name(),
                    requirement: "f(0) = 0",
                });
            }
            let k = big_k(m, big_m, f)?;
            let rhs = at_sum.scale(k.value);
            let mut r = InequalityReport::compare(
                "K_k_subadditivity",
                split.clone(),
                rhs,
                self.rel_tol,
                digest,
            )?;
            r.notes.push("convex branch: f(A)+f(B) ≤ K f(A+B)".into());
            if flags.concave_on_domain {
                let k_low = small_k(m, big_m, f)?;
                let lower = at_sum.scale(k_low.value);
                r.chain_links
                    .push(self.link("k f(A+B) ≤ f(A)+f(B)", &lower, &split)?);
                r.chain_links
                    .push(self.link("f(A)+f(B) ≤ K f(A+B)", &r.lhs, &r.rhs)?);
                r.constants.push(k_low);
            }
            r.constants.insert(0, k);
            r
        } else {
            if !f0.is_some_and(|x| x >= 0.0) {
                return Err(Error::ZeroValueViolation {
                    function: f.name(),
                    requirement: "f(0) >= 0",
                });
            }
            let k = small_k(m, big_m, f)?;
            let lhs = at_sum.scale(k.value);
            let mut r =
                InequalityReport::compare("K_k_subadditivity", lhs, split, self.rel_tol, digest)?;
            r.notes.push("concave branch: k f(A+B) ≤ f(A)+f(B)".into());
            r.constants.push(k);
            r
        };
        report.notes.push(format!(
            "K and k are taken on [m, M] = [{m}, {big_m}] while f(A+B) needs f on [0, {}]",
            2.0 * big_m
        ));
        Ok(report)
    }

    /// Scalar Jensen inequalities at `⟨Ax, x⟩` and their Mond–Pečarić reverses.
    /// For concave `f` the reverse is reported in both orientations.
    pub fn check_inner_jensen(
        &self,
        f: &ScalarFunction,
        a: &SymMatrix,
        x: &[f64],
        m: f64,
        big_m: f64,
    ) -> Result<ScalarReport> {
        let norm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= UNIT_TOLERANCE) {
            return Err(Error::NotUnitVector { norm });
        }
        check_spectra_in(std::slice::from_ref(a), m, big_m)?;
        let flags = f.flags();
        require_flag(
            f,
            flags.convex_on_domain || flags.concave_on_domain,
            "convex_on_domain or concave_on_domain",
        )?;
        let at = a.quadratic_form(x)?;
        let f_at = f.eval(at)?;
        let form = evaluate(f, a)?.quadratic_form(x)?;
        let tol = self.rel_tol;
        let mut entries = Vec::new();
        let mut constants = Vec::new();
        let mut notes = Vec::new();
        if flags.convex_on_domain {
            let k = big_k(m, big_m, f)?;
            entries.push(ScalarInequality::new(
                "f(<Ax,x>) ≤ <f(A)x,x>",
                f_at,
                form,
                tol,
            ));
            entries.push(ScalarInequality::new(
                "<f(A)x,x> ≤ K f(<Ax,x>)",
                form,
                k.value * f_at,
                tol,
            ));
            constants.push(k);
        }
        if flags.concave_on_domain {
            let k = small_k(m, big_m, f)?;
            entries.push(ScalarInequality::new(
                "<f(A)x,x> ≤ f(<Ax,x>)",
                form,
                f_at,
                tol,
            ));
            entries.push(ScalarInequality::new(
                "k f(<Ax,x>) ≤ <f(A)x,x>",
                k.value * f_at,
                form,
                tol,
            ));
            entries.push(
                ScalarInequality::new("f(<Ax,x>) ≤ k <f(A)x,x>", f_at, k.value * form, tol)
                    .unasserted(),
            );
            notes.push(
                "the last two entries are the two orientations of the concave reverse; only the \
                 first is implied by k ≤ 1 and concavity"
                    .into(),
            );
            constants.push(k);
        }
        let mut d = InputDigest::new("inner_jensen")
            .text(&f.spec_json())
            .matrix(a);
        for t in x {
            d = d.number(*t);
        }
        Ok(ScalarReport {
            theorem_id: "inner_jensen".into(),
            entries,
            constants,
            notes,
            input_digest: d.number(m).number(big_m).finish(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Relation;
    use approx::assert_relative_eq;

    fn m(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ex27() -> (SymMatrix, SymMatrix) {
        (
            m(&[&[3.0, 1.0], &[1.0, 5.0]]),
            m(&[&[10.0, -1.0], &[-1.0, 9.0]]),
        )
    }

    fn ex28() -> (SymMatrix, SymMatrix) {
        (
            m(&[&[1.0, 1.0], &[1.0, 1.0]]),
            m(&[&[3.0, 1.0], &[1.0, 1.0]]),
        )
    }

    fn diff(r: &InequalityReport) -> SymMatrix {
        r.rhs.sub(&r.lhs).unwrap()
    }

    #[test]
    fn thm1_examples() {
        let s = Suite::default();
        let a = m(&[&[3.0, 1.0], &[1.0, 5.0]]);
        let r = s
            .check_thm1(&ScalarFunction::power(2.0), &a, &a, 0.5, None)
            .unwrap();
        assert_eq!(r.verdict.relation, Relation::Equal);

        let (a, b) = ex27();
        let r = s
            .check_thm1(&ScalarFunction::power(6.0), &a, &b, 0.5, None)
            .unwrap();
        assert!(r.hypothesis_holds().unwrap());
        assert!(r.holds());

        let (a, b) = ex28();
        let r = s
            .check_thm1(&ScalarFunction::power(3.0), &a, &b, 0.5, None)
            .unwrap();
        assert!(!r.hypothesis_holds().unwrap());
        assert!(!r.holds());
        // (A³+B³)/2 - ((A+B)/2)³ = [[6,1],[1,0]]
        assert_eq!(diff(&r).rows(), vec![vec![6.0, 1.0], vec![1.0, 0.0]]);
        assert_relative_eq!(
            r.verdict.min_eig_of_difference,
            3.0 - 10f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn thm1_reverses_for_concave_and_checks_the_weight() {
        let s = Suite::default();
        let (a, b) = ex27();
        let r = s
            .check_thm1(&ScalarFunction::power(1.0 / 3.0), &a, &b, 0.5, None)
            .unwrap();
        assert!(r.holds());
        assert!(r.notes.iter().any(|n| n.contains("reversed")));
        assert!(matches!(
            s.check_thm1(&ScalarFunction::power(2.0), &a, &b, 1.0, None),
            Err(Error::WeightOutOfRange { .. })
        ));
    }

    #[test]
    fn thm1_bounds_override_is_validated() {
        let s = Suite::default();
        let (a, b) = ex27();
        let ok = (
            Interval::new(2.5, 5.5).unwrap(),
            Interval::new(8.3, 10.7).unwrap(),
        );
        let r = s
            .check_thm1(&ScalarFunction::power(6.0), &a, &b, 0.5, Some(ok))
            .unwrap();
        assert_eq!(r.hypothesis.unwrap().intervals[0].1, ok.0);
        let tight = (Interval::new(3.0, 5.0).unwrap(), ok.1);
        assert!(matches!(
            s.check_thm1(&ScalarFunction::power(6.0), &a, &b, 0.5, Some(tight)),
            Err(Error::SpectraOutOfBounds { index: 0, .. })
        ));
    }

    #[test]
    fn thm2_examples() {
        let s = Suite::default();
        let (a, b) = ex27();
        let sq = ScalarFunction::power(2.0);
        let r = s.check_thm2(&sq, &a, &b, 1.0, None).unwrap();
        assert_eq!(r.verdict.relation, Relation::Equal);

        let r = s
            .check_thm2(
                &sq,
                &SymMatrix::scalar(2, 2.0),
                &SymMatrix::scalar(2, 3.0),
                2.0,
                None,
            )
            .unwrap();
        assert!(r.lhs.sub(&SymMatrix::scalar(2, 16.0)).unwrap().max_abs() < 1e-13);
        assert!(r.rhs.sub(&SymMatrix::scalar(2, 14.0)).unwrap().max_abs() < 1e-13);
        assert!(!r.holds());
        assert!(!r.hypothesis_holds().unwrap());

        let t = SymMatrix::scalar(2, 3.0);
        assert_eq!(
            s.check_thm2(&sq, &t, &t, 1.5, None)
                .unwrap()
                .verdict
                .relation,
            Relation::Equal
        );

        assert!(matches!(
            s.check_thm2(&ScalarFunction::log(), &b, &a, 3.0, None),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn subadditivity_double_examples() {
        let s = Suite::default();
        let (a, b) = ex27();
        let r = s
            .check_subadditivity_double(&ScalarFunction::affine(1.0, 0.0), &a, &b)
            .unwrap();
        assert_eq!(r.chain_links.len(), 2);
        assert!(r
            .chain_links
            .iter()
            .all(|l| l.verdict.relation == Relation::Equal));

        let r = s
            .check_subadditivity_double(&ScalarFunction::power(-2.0), &a, &b)
            .unwrap();
        assert!(r.chain_links[0].holds());
        // f(2A)+f(2B)-2f(A+B) = 2^r (A^r + B^r - 2^{1-r}(A+B)^r)
        let d = diff(&r).scale(4.0);
        let printed = [[0.0956, -0.0384], [-0.0384, 0.0229]];
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(d.get(i, j), printed[i][j], max_relative = 5e-3);
            }
        }

        let inv = ScalarFunction::inverse_shift(0.0);
        let r = s
            .check_subadditivity_double(&inv, &SymMatrix::identity(1), &SymMatrix::scalar(1, 2.0))
            .unwrap();
        let link = &r.chain_links[1];
        assert!(link.holds());
        assert_relative_eq!(
            link.verdict.min_eig_of_difference,
            1.5 - 1.0 / 3.0,
            epsilon = 1e-14
        );

        assert!(matches!(
            s.check_subadditivity_double(&ScalarFunction::log(), &a, &b),
            Err(Error::FlagMissing { .. })
        ));
    }

    #[test]
    fn power_examples() {
        let s = Suite::default();
        let (a, b) = ex27();
        let r = s.check_power(6.0, &a, &b).unwrap();
        assert_eq!(r.verdict.relation, Relation::GreaterOrEqual);
        let d = diff(&r);
        let printed = [[985931.21, -476992.0], [-476992.0, 433279.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(d.get(i, j), printed[i][j], max_relative = 1e-6);
            }
        }

        let r = s.check_power(1.0 / 3.0, &a, &b).unwrap();
        assert!(r.holds());
        assert_relative_eq!(diff(&r).get(0, 0), 0.1519, max_relative = 5e-3);

        let (a, b) = ex28();
        let r = s.check_power(3.0, &a, &b).unwrap();
        assert!(!r.hypothesis_holds().unwrap());
        assert_eq!(diff(&r).rows(), vec![vec![12.0, 2.0], vec![2.0, 0.0]]);
        assert_eq!(r.verdict.relation, Relation::Incomparable);
        assert_relative_eq!(
            r.verdict.min_eig_of_difference,
            6.0 - 40f64.sqrt(),
            epsilon = 1e-12
        );
        assert!(r.is_violation(1e-8));

        assert_eq!(
            s.check_power(1.0, &a, &b).unwrap().verdict.relation,
            Relation::Equal
        );
        assert!(matches!(
            s.check_power(-1.0, &a, &b),
            Err(Error::NotStrictlyPositive { .. })
        ));
    }

    #[test]
    fn hh_chain_examples() {
        let s = Suite::default();
        let sq = ScalarFunction::power(2.0);
        let r = s
            .check_hh_chain(
                &sq,
                &SymMatrix::diagonal(&[1.0]),
                &SymMatrix::diagonal(&[2.0]),
            )
            .unwrap();
        assert_relative_eq!(r.lhs.get(0, 0), 2.25, epsilon = 1e-12);
        assert_relative_eq!(r.rhs.get(0, 0), 2.5, epsilon = 1e-12);
        let mid = r.chain_links[0].verdict.min_eig_of_difference + 2.25;
        assert_relative_eq!(mid, 7.0 / 3.0, epsilon = 1e-12);
        assert!(r.holds());

        let (a, b) = ex27();
        let r = s.check_hh_chain(&sq, &a, &a).unwrap();
        assert!(r
            .chain_links
            .iter()
            .all(|l| l.verdict.relation == Relation::Equal));
        let r = s
            .check_hh_chain(&ScalarFunction::affine(1.0, 0.0), &a, &b)
            .unwrap();
        assert!(r
            .chain_links
            .iter()
            .all(|l| l.verdict.relation == Relation::Equal));
        assert!(r.notes.iter().any(|n| n.contains("every v")));
    }

    #[test]
    fn decreasing_chain_examples() {
        let s = Suite::default();
        let inv = ScalarFunction::inverse_shift(0.0);
        let r = s
            .check_decreasing_chain(
                &inv,
                &SymMatrix::diagonal(&[1.0]),
                &SymMatrix::diagonal(&[2.0]),
            )
            .unwrap();
        assert_eq!(r.chain_links.len(), 3);
        assert!(r.holds());
        assert_relative_eq!(r.lhs.get(0, 0), 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(r.rhs.get(0, 0), 1.5, epsilon = 1e-15);
        let gm = 1.5 - r.chain_links[2].verdict.min_eig_of_difference;
        assert_relative_eq!(gm, 2.0 * 0.5f64.sqrt(), epsilon = 1e-13);

        let a = m(&[&[3.0, 1.0], &[1.0, 5.0]]);
        let r = s.check_decreasing_chain(&inv, &a, &a).unwrap();
        assert!(r.chain_links[0].verdict.is_ge());
        assert!(r.chain_links[1..]
            .iter()
            .all(|l| l.verdict.relation == Relation::Equal));

        let r = s
            .check_decreasing_chain(
                &ScalarFunction::inverse_shift(1.0),
                &SymMatrix::diagonal(&[1.0, 2.0]),
                &SymMatrix::diagonal(&[2.0, 1.0]),
            )
            .unwrap();
        assert!(r.holds());
        assert!(matches!(
            s.check_decreasing_chain(&ScalarFunction::power(2.0), &a, &a),
            Err(Error::FlagMissing { .. })
        ));
    }

    #[test]
    fn reverse_subadditivity_examples() {
        let s = Suite::default();
        let inv = ScalarFunction::inverse_shift(0.0);
        let id = SymMatrix::identity(2);
        let r = s
            .check_reverse_subadditivity(&inv, &id, &id, 2.0, 3.0)
            .unwrap();
        assert_relative_eq!(r.constants[0].value, 25.0 / 24.0, epsilon = 1e-10);
        assert_relative_eq!(r.rhs.get(0, 0), 4.0 * 25.0 / 24.0 * 0.5, epsilon = 1e-10);
        assert!(r.holds());

        let c = SymMatrix::scalar(2, 7.0);
        assert!(s
            .check_reverse_subadditivity(&inv, &c, &c, 14.0, 15.0)
            .unwrap()
            .holds());

        let r = s
            .check_reverse_subadditivity(
                &inv,
                &SymMatrix::diagonal(&[1.0, 1.2]),
                &SymMatrix::diagonal(&[1.1, 1.0]),
                2.0,
                4.8,
            )
            .unwrap();
        assert!(r.holds());

        assert!(matches!(
            s.check_reverse_subadditivity(&inv, &id, &id, 2.5, 3.0),
            Err(Error::HypothesisFailed { .. })
        ));
    }

    #[test]
    fn concave_lower_examples() {
        let s = Suite::default();
        let sqrt = ScalarFunction::power(0.5);
        let id = SymMatrix::identity(2);
        assert!(s
            .check_concave_lower(&sqrt, &id, &id, 2.0, 2.5)
            .unwrap()
            .holds());

        let r = s
            .check_concave_lower(
                &sqrt,
                &SymMatrix::diagonal(&[1.0]),
                &SymMatrix::diagonal(&[4.0]),
                2.0,
                8.0,
            )
            .unwrap();
        assert_relative_eq!(
            r.constants[0].value,
            4.0 / (3.0 * 2f64.sqrt()),
            epsilon = 1e-10
        );
        assert_relative_eq!(r.lhs.get(0, 0), 2.108185, epsilon = 1e-6);
        assert_relative_eq!(r.rhs.get(0, 0), 3.0, epsilon = 1e-14);
        assert!(r.holds());

        let (a, b) = ex27();
        let r = s
            .check_concave_lower(&ScalarFunction::affine(1.0, 0.0), &a, &b, 4.0, 24.0)
            .unwrap();
        assert_eq!(r.verdict.relation, Relation::Equal);
    }

    #[test]
    fn ell_sum_examples() {
        let s = Suite::default();
        let sqrt = ScalarFunction::power(0.5);
        let id = SymMatrix::identity(2);
        let three = vec![id.clone(), id.clone(), id.clone()];
        let r = s
            .check_ell_sum(&sqrt, &three, 3.0, 3.5, EllMode::ConcaveLower)
            .unwrap();
        assert!(r.holds());
        assert_relative_eq!(r.lhs.get(0, 0), 3f64.sqrt(), epsilon = 1e-14);

        let inv = ScalarFunction::inverse_shift(0.0);
        let r = s
            .check_ell_sum(&inv, &three, 3.0, 3.5, EllMode::DecreasingUpper)
            .unwrap();
        assert!(r.holds());
        assert_relative_eq!(r.rhs.get(0, 0), 1.0 / 3.0, epsilon = 1e-14);

        // ell = 2 in concave mode is the two-operator theorem
        let (a, b) = (SymMatrix::diagonal(&[1.0]), SymMatrix::diagonal(&[4.0]));
        let two = s
            .check_ell_sum(
                &sqrt,
                &[a.clone(), b.clone()],
                2.0,
                8.0,
                EllMode::ConcaveLower,
            )
            .unwrap();
        let direct = s.check_concave_lower(&sqrt, &a, &b, 2.0, 8.0).unwrap();
        let k = direct.constants[0].value;
        assert_relative_eq!(two.lhs.get(0, 0) * k, direct.lhs.get(0, 0), epsilon = 1e-14);
        assert_eq!(two.holds(), direct.holds());

        assert!(matches!(
            s.check_ell_sum(&sqrt, &three, 3.5, 4.0, EllMode::ConcaveLower),
            Err(Error::HypothesisFailed { .. })
        ));
        assert!(matches!(
            s.check_ell_sum(&inv, &three, 3.0, 3.5, EllMode::ConcaveLower),
            Err(Error::FlagMissing { .. })
        ));
    }

    #[test]
    fn k_k_subadditivity_examples() {
        let s = Suite::default();
        let one = SymMatrix::diagonal(&[1.0]);
        let r = s
            .check_k_k_subadditivity(&ScalarFunction::power(2.0), &one, &one, 0.9, 1.1)
            .unwrap();
        assert_relative_eq!(r.constants[0].value, 4.0 / (4.0 * 0.99), epsilon = 1e-10);
        assert_relative_eq!(r.rhs.get(0, 0), 4.0 / 0.99, epsilon = 1e-9);
        assert!(r.holds());
        assert!(r.notes.iter().any(|n| n.contains("[0, 2.2]")));

        let (a, b) = ex27();
        let r = s
            .check_k_k_subadditivity(&ScalarFunction::affine(1.0, 0.0), &a, &b, 2.0, 11.0)
            .unwrap();
        assert_eq!(r.verdict.relation, Relation::Equal);
        assert!(r
            .chain_links
            .iter()
            .all(|l| l.verdict.relation == Relation::Equal));

        let r = s
            .check_k_k_subadditivity(
                &ScalarFunction::power(0.5),
                &SymMatrix::diagonal(&[1.0]),
                &SymMatrix::diagonal(&[4.0]),
                1.0,
                4.0,
            )
            .unwrap();
        assert_relative_eq!(
            r.lhs.get(0, 0),
            2.0 * 2f64.sqrt() / 3.0 * 5f64.sqrt(),
            epsilon = 1e-9
        );
        assert!(r.holds());

        assert!(matches!(
            s.check_k_k_subadditivity(&ScalarFunction::inverse_shift(1.0), &a, &b, 2.0, 11.0),
            Err(Error::ZeroValueViolation { .. })
        ));
        assert!(matches!(
            s.check_k_k_subadditivity(&ScalarFunction::power(2.0), &a, &b, 3.0, 11.0),
            Err(Error::SpectraOutOfBounds { .. })
        ));
    }

    #[test]
    fn inner_jensen_examples() {
        let s = Suite::default();
        let h = 0.5f64.sqrt();
        let a = SymMatrix::diagonal(&[1.0, 3.0]);
        let r = s
            .check_inner_jensen(&ScalarFunction::power(2.0), &a, &[h, h], 1.0, 3.0)
            .unwrap();
        assert_relative_eq!(r.entries[0].lhs, 4.0, epsilon = 1e-14);
        assert_relative_eq!(r.entries[0].rhs, 5.0, epsilon = 1e-14);
        assert_relative_eq!(r.entries[1].rhs, 16.0 / 3.0, epsilon = 1e-10);
        assert!(r.entries.iter().all(|e| e.holds));

        let a = SymMatrix::diagonal(&[1.0, 9.0]);
        let r = s
            .check_inner_jensen(&ScalarFunction::power(0.5), &a, &[h, h], 1.0, 9.0)
            .unwrap();
        assert_eq!(r.entries.len(), 3);
        assert!(r.entries[0].holds && r.entries[1].holds);
        // printed orientation: √5 ≤ 0.866·2 fails
        assert!(!r.entries[2].holds && !r.entries[2].asserted);
        assert!(r.holds());
        assert_relative_eq!(r.constants[0].value, 3f64.sqrt() / 2.0, epsilon = 1e-10);

        let r = s
            .check_inner_jensen(&ScalarFunction::power(2.0), &a, &[1.0, 0.0], 1.0, 9.0)
            .unwrap();
        assert_relative_eq!(r.entries[0].margin, 0.0, epsilon = 1e-14);

        assert!(matches!(
            s.check_inner_jensen(&ScalarFunction::power(2.0), &a, &[1.0, 1.0], 1.0, 9.0),
            Err(Error::NotUnitVector { .. })
        ));
    }

    #[test]
    fn auto_bounds_double_the_joint_spectrum() {
        let (a, b) = ex27();
        let (m, big_m) = auto_sandwich_bounds(&a, &b).unwrap();
        assert_relative_eq!(m, 2.0 * (4.0 - 2f64.sqrt()), epsilon = 1e-12);
        assert_relative_eq!(big_m, 2.0 * (9.5 + 5f64.sqrt() / 2.0), epsilon = 1e-12);
        let inv = ScalarFunction::inverse_shift(0.0);
        assert!(Suite::default()
            .check_reverse_subadditivity(&inv, &a, &b, m, big_m)
            .unwrap()
            .holds());
    }
}
