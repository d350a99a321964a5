//! Seeded random instances, hypothesis-conforming pairs, counterexample
//! hunts and hypothesis-satisfiability probes.
//!
//! Trial `i` of a run with seed `s` draws from ChaCha8 stream `i` of key `s`,
//! so trials are independent of scheduling and every result replays exactly.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{Family, ScalarFunction};
use crate::hypotheses::{
    hh_condition, hh_condition_exact, sandwich_condition, thm1_condition, thm2_condition,
    DEFAULT_HH_GRID,
};
use crate::interval::Interval;
use crate::matrix::SymMatrix;
use crate::report::{InequalityReport, InputDigest, VIOLATION_REL};
use crate::suite::{auto_sandwich_bounds, joint_bounds, Suite};

/// Smallest width of a constructed spectral interval, relative to its lower end.
pub const WIDTH_FLOOR: f64 = 0.1;
/// Placement box used by [`conforming_pair`].
pub const DEFAULT_BOX: Interval = Interval { lo: 1.0, hi: 1e3 };
/// Separation asked of conforming pairs in hunts.
pub const HUNT_GAP: f64 = 1e-3;
/// Range of the log-uniform interval endpoints sampled by the probes.
pub const PROBE_RANGE: (f64, f64) = (1e-2, 1e2);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub dim: usize,
    pub spectrum_interval: Interval,
    pub seed: u64,
    pub count: usize,
}

impl GeneratorSpec {
    pub fn new(dim: usize, spectrum_interval: Interval, seed: u64, count: usize) -> Result<Self> {
        if dim == 0 || count == 0 {
            return Err(Error::InvalidArgument(format!(
                "dim and count must be positive, got dim = {dim}, count = {count}"
            )));
        }
        if !(spectrum_interval.lo > 0.0) || !(spectrum_interval.hi >= spectrum_interval.lo) {
            return Err(Error::InvalidInterval {
                lo: spectrum_interval.lo,
                hi: spectrum_interval.hi,
            });
        }
        Ok(Self {
            dim,
            spectrum_interval,
            seed,
            count,
        })
    }
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Orthonormalized columns of a standard Gaussian matrix, row-major.
fn random_orthogonal(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut c: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        for q in &cols {
            let dot: f64 = q.iter().zip(&c).map(|(a, b)| a * b).sum();
            for (x, y) in c.iter_mut().zip(q) {
                *x -= dot * y;
            }
        }
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(c.into_iter().map(|x| x / norm).collect());
        }
    }
    let mut q = vec![0.0; dim * dim];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            q[i * dim + j] = *x;
        }
    }
    q
}

/// `Q diag(λ) Qᵀ` for a random orthogonal `Q`.
fn with_eigenvalues(eigs: &[f64], rng: &mut ChaCha8Rng) -> SymMatrix {
    let dim = eigs.len();
    if eigs.iter().all(|x| *x == eigs[0]) {
        return SymMatrix::scalar(dim, eigs[0]);
    }
    let q = random_orthogonal(dim, rng);
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let x: f64 = (0..dim)
                .map(|k| q[i * dim + k] * eigs[k] * q[j * dim + k])
                .sum();
            data[i * dim + j] = x;
            data[j * dim + i] = x;
        }
    }
    SymMatrix::symmetrized(dim, data)
}

fn uniform_in(iv: Interval, rng: &mut ChaCha8Rng) -> f64 {
    if iv.is_degenerate() {
        iv.lo
    } else {
        rng.random_range(iv.lo..=iv.hi)
    }
}

fn sample_spectrum(dim: usize, iv: Interval, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..dim).map(|_| uniform_in(iv, rng)).collect()
}

/// Spectrum reaching both ends of `iv` when `dim ≥ 2`.
fn spanning_spectrum(dim: usize, iv: Interval, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut eigs = sample_spectrum(dim, iv, rng);
    if dim >= 2 {
        eigs[0] = iv.lo;
        eigs[1] = iv.hi;
    }
    eigs
}

/// Matrix `index` of the batch described by `spec`, with its planted
/// eigenvalues in ascending order.
pub fn planted_instance(spec: &GeneratorSpec, index: u64) -> (SymMatrix, Vec<f64>) {
    let mut rng = trial_rng(spec.seed, index);
    let mut eigs = sample_spectrum(spec.dim, spec.spectrum_interval, &mut rng);
    let a = with_eigenvalues(&eigs, &mut rng);
    eigs.sort_by(f64::total_cmp);
    (a, eigs)
}

pub fn random_symmetric_with_spectrum(spec: &GeneratorSpec) -> Vec<SymMatrix> {
    (0..spec.count as u64)
        .map(|i| planted_instance(spec, i).0)
        .collect()
}

/// A pair built so that the mean-interval condition holds at weight `v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformingPair {
    pub a: SymMatrix,
    pub b: SymMatrix,
    /// Bounds of `A`.
    pub nn: Interval,
    /// Bounds of `B`.
    pub mm: Interval,
    pub v: f64,
}

/// Intervals `lower = [n, N]` and `upper = [m, M]` inside `bounds` with
/// `[n∇_v m, N∇_v M]` at least `gap` away from both, for `v ≥ 1/2`.
///
/// With `s = m - N`, `w_A = N - n ≥ ρn` and `w_B = M - m = cρm`, `c ≥ 1`, the
/// two separations read `v·s - (1-v)·w_A > gap` and
/// `s·((1-v) - vcρ) - vcρN > gap`; the second needs `(1-v) - vρ > 0`.
fn place_upper(
    v: f64,
    gap: f64,
    bounds: Interval,
    rng: &mut ChaCha8Rng,
) -> Result<(Interval, Interval)> {
    let rho = WIDTH_FLOOR;
    let d1 = (1.0 - v) - v * rho;
    if !(d1 > 0.0) {
        return Err(Error::InfeasibleConstruction(format!(
            "weight {v}: (1-v) - v*rho = {d1:e} <= 0 with width floor rho = {rho}, so [n∇m, N∇M] cannot \
             clear [m, M]"
        )));
    }
    let n = bounds.lo * (1.0 + 2.0 * rng.random::<f64>());
    let w_a = rho * n * (1.0 + 9.0 * rng.random::<f64>());
    let big_n = n + w_a;
    let c = 1.0 + 0.5 * d1 / (v * rho) * rng.random::<f64>();
    let d = (1.0 - v) - v * c * rho;
    let s_min = ((gap + (1.0 - v) * w_a) / v).max((gap + v * c * rho * big_n) / d);
    let s = s_min * (1.05 + 0.45 * rng.random::<f64>());
    let m = big_n + s;
    let big_m = m + c * rho * m;
    if big_m > bounds.hi {
        return Err(Error::InfeasibleConstruction(format!(
            "weight {v}: separation s = m - N >= {s_min:e} puts M = {big_m:e} above the box bound {}",
            bounds.hi
        )));
    }
    Ok((Interval { lo: n, hi: big_n }, Interval { lo: m, hi: big_m }))
}

fn conforming_pair_in(
    v: f64,
    gap: f64,
    dim: usize,
    bounds: Interval,
    rng: &mut ChaCha8Rng,
) -> Result<ConformingPair> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::WeightOutOfRange { v, range: "(0, 1)" });
    }
    if !(gap > 0.0) || dim == 0 {
        return Err(Error::InvalidArgument(format!(
            "gap must be positive and dim at least 1, got gap = {gap}, dim = {dim}"
        )));
    }
    // J(v; A, B) = J(1 - v; B, A), so small weights mirror onto large ones
    let (nn, mm) = if v >= 0.5 {
        place_upper(v, gap, bounds, rng)?
    } else {
        let (lower, upper) = place_upper(1.0 - v, gap, bounds, rng)?;
        (upper, lower)
    };
    let a = with_eigenvalues(&spanning_spectrum(dim, nn, rng), rng);
    let b = with_eigenvalues(&spanning_spectrum(dim, mm, rng), rng);
    let check = thm1_condition(nn, mm, v)?;
    if !(check.margin >= gap) {
        return Err(Error::InfeasibleConstruction(format!(
            "placement {nn} / {mm} reached margin {:e} < gap {gap:e}",
            check.margin
        )));
    }
    Ok(ConformingPair { a, b, nn, mm, v })
}

/// Random `A`, `B` of size `dim` passing the mean-interval condition at `v`
/// with margin at least `gap`, placed inside [`DEFAULT_BOX`].
pub fn conforming_pair(v: f64, gap: f64, dim: usize, seed: u64) -> Result<ConformingPair> {
    conforming_pair_in(v, gap, dim, DEFAULT_BOX, &mut trial_rng(seed, 0))
}

/// Checkers the explorer can drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "checker", rename_all = "snake_case")]
pub enum Checker {
    Thm1 {
        v: f64,
    },
    Thm2 {
        v: f64,
    },
    SubadditivityDouble,
    /// Exponent taken from the power function passed to the hunt.
    Power,
    HhChain,
    DecreasingChain,
    ReverseSubadditivity,
    ConcaveLower,
    KkSubadditivity,
}

impl FromStr for Checker {
    type Err = Error;

    /// `thm1`, `thm1:0.3`, `thm2:2`, `power`, `K_k_subadditivity`, ...; a
    /// leading `check_` is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownChecker(s.to_string());
        let body = s.trim().strip_prefix("check_").unwrap_or(s.trim());
        let (name, arg) = match body.split_once(':') {
            Some((n, a)) => (n, Some(a.trim().parse::<f64>().map_err(|_| unknown())?)),
            None => (body, None),
        };
        let checker = match name.to_ascii_lowercase().as_str() {
            "thm1" => Checker::Thm1 {
                v: arg.unwrap_or(0.5),
            },
            "thm2" => Checker::Thm2 {
                v: arg.unwrap_or(2.0),
            },
            _ if arg.is_some() => return Err(unknown()),
            "subadditivity_double" => Checker::SubadditivityDouble,
            "power" => Checker::Power,
            "hh_chain" => Checker::HhChain,
            "decreasing_chain" => Checker::DecreasingChain,
            "reverse_subadditivity" => Checker::ReverseSubadditivity,
            "concave_lower" => Checker::ConcaveLower,
            "k_k_subadditivity" => Checker::KkSubadditivity,
            _ => return Err(unknown()),
        };
        Ok(checker)
    }
}

impl Checker {
    pub fn id(&self) -> String {
        match self {
            Checker::Thm1 { v } => format!("thm1:{v}"),
            Checker::Thm2 { v } => format!("thm2:{v}"),
            Checker::SubadditivityDouble => "subadditivity_double".into(),
            Checker::Power => "power".into(),
            Checker::HhChain => "hh_chain".into(),
            Checker::DecreasingChain => "decreasing_chain".into(),
            Checker::ReverseSubadditivity => "reverse_subadditivity".into(),
            Checker::ConcaveLower => "concave_lower".into(),
            Checker::KkSubadditivity => "K_k_subadditivity".into(),
        }
    }

    /// Whether `f` meets the flag requirements of the underlying statement.
    pub fn applicable(&self, f: &ScalarFunction) -> Result<()> {
        let flags = f.flags();
        let missing = |flag| {
            Err(Error::FlagMissing {
                function: f.name(),
                flag,
            })
        };
        match self {
            Checker::Thm1 { .. } | Checker::Thm2 { .. } => {
                if flags.convex_on_domain || flags.concave_on_domain {
                    Ok(())
                } else {
                    missing("convex_on_domain or concave_on_domain")
                }
            }
            Checker::SubadditivityDouble | Checker::HhChain => {
                if flags.convex_on_domain {
                    Ok(())
                } else {
                    missing("convex_on_domain")
                }
            }
            Checker::Power => match f.family() {
                Family::Power { .. } => Ok(()),
                _ => Err(Error::InvalidFunctionSpec(format!(
                    "power checker needs t^r, got {}",
                    f.name()
                ))),
            },
            Checker::DecreasingChain | Checker::ReverseSubadditivity => {
                if flags.operator_monotone_decreasing {
                    Ok(())
                } else {
                    missing("operator_monotone_decreasing")
                }
            }
            Checker::ConcaveLower => {
                if flags.operator_concave {
                    Ok(())
                } else {
                    missing("operator_concave")
                }
            }
            Checker::KkSubadditivity => {
                let f0 = f.value_at_zero();
                if flags.convex_on_domain && f0 != Some(0.0) {
                    Err(Error::ZeroValueViolation {
                        function: f.name(),
                        requirement: "f(0) = 0",
                    })
                } else if !flags.convex_on_domain && !f0.is_some_and(|x| x >= 0.0) {
                    Err(Error::ZeroValueViolation {
                        function: f.name(),
                        requirement: "f(0) >= 0",
                    })
                } else if !(flags.convex_on_domain || flags.concave_on_domain) {
                    missing("convex_on_domain or concave_on_domain")
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Weight at which conforming pairs are built, for checkers whose
    /// hypothesis is a mean-interval condition.
    fn conforming_weight(&self) -> Option<f64> {
        match self {
            Checker::Thm1 { v } => Some(*v),
            Checker::SubadditivityDouble | Checker::Power | Checker::HhChain => Some(0.5),
            _ => None,
        }
    }

    /// Runs the checker; constant-based checkers use the tightest admissible bounds.
    pub fn run(
        &self,
        suite: &Suite,
        f: &ScalarFunction,
        a: &SymMatrix,
        b: &SymMatrix,
    ) -> Result<InequalityReport> {
        match self {
            Checker::Thm1 { v } => suite.check_thm1(f, a, b, *v, None),
            Checker::Thm2 { v } => suite.check_thm2(f, a, b, *v, None),
            Checker::SubadditivityDouble => suite.check_subadditivity_double(f, a, b),
            Checker::Power => match f.family() {
                Family::Power { r } => suite.check_power(r, a, b),
                _ => Err(Error::InvalidFunctionSpec(format!(
                    "power checker needs t^r, got {}",
                    f.name()
                ))),
            },
            Checker::HhChain => suite.check_hh_chain(f, a, b),
            Checker::DecreasingChain => suite.check_decreasing_chain(f, a, b),
            Checker::ReverseSubadditivity => {
                let (m, big_m) = auto_sandwich_bounds(a, b)?;
                suite.check_reverse_subadditivity(f, a, b, m, big_m)
            }
            Checker::ConcaveLower => {
                let (m, big_m) = auto_sandwich_bounds(a, b)?;
                suite.check_concave_lower(f, a, b, m, big_m)
            }
            Checker::KkSubadditivity => {
                let nn = joint_bounds(a, b)?;
                suite.check_k_k_subadditivity(f, a, b, nn.lo, nn.hi)
            }
        }
    }
}

mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    /// SHA-256 of `replay`.
    pub digest: String,
    /// Most negative `λ_min(rhs - lhs)` over the report's comparisons.
    pub margin: f64,
    /// Checker id, function spec and both matrices at 17 significant digits.
    pub replay: String,
}

/// One sampled `(n, N, m, M, v)` tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeTuple {
    pub n: f64,
    #[serde(rename = "N")]
    pub big_n: f64,
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub v: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntResult {
    /// Checker id, or condition id for probes.
    pub target: String,
    pub function: Option<String>,
    pub seed: u64,
    pub trials: usize,
    pub violations: Vec<Violation>,
    /// Minimum margin over the violations, `null` in JSON when there are none.
    #[serde(with = "infinite_as_null")]
    pub worst_margin: f64,
    /// Trials whose spectral hypothesis held (or that have none).
    pub satisfying_hypothesis_count: usize,
    /// Trials left untested because the hypothesis failed in a hypothesis-only run.
    pub skipped: usize,
    /// Trials on which the checker reported an error, with the first message.
    pub errors: usize,
    pub first_error: Option<String>,
    pub witness: Option<ProbeTuple>,
    /// SHA-256 over every other field.
    pub digest: String,
}

impl HuntResult {
    fn seal(mut self) -> Self {
        self.digest = String::new();
        let body = serde_json::to_string(&self).expect("hunt result serializes");
        self.digest = InputDigest::new("hunt_result").text(&body).finish();
        self
    }
}

#[cfg(feature = "parallel")]
fn map_trials<T: Send>(count: usize, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..count as u64).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_trials<T>(count: usize, f: impl Fn(u64) -> T) -> Vec<T> {
    (0..count as u64).map(f).collect()
}

enum Outcome {
    Tested {
        hypothesis_holds: bool,
        violation: Option<Violation>,
    },
    Skipped,
    Failed(String),
}

fn hunt_trial(
    checker: &Checker,
    suite: &Suite,
    f: &ScalarFunction,
    spec: &GeneratorSpec,
    require_hypothesis: bool,
    index: u64,
) -> Outcome {
    let mut rng = trial_rng(spec.seed, index);
    let pair = match (require_hypothesis, checker.conforming_weight()) {
        (true, Some(v)) => {
            conforming_pair_in(v, HUNT_GAP, spec.dim, spec.spectrum_interval, &mut rng)
                .map(|p| (p.a, p.b))
        }
        _ => {
            let a = with_eigenvalues(
                &sample_spectrum(spec.dim, spec.spectrum_interval, &mut rng),
                &mut rng,
            );
            let b = with_eigenvalues(
                &sample_spectrum(spec.dim, spec.spectrum_interval, &mut rng),
                &mut rng,
            );
            Ok((a, b))
        }
    };
    let (a, b) = match pair {
        Ok(p) => p,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let report = match checker.run(suite, f, &a, &b) {
        Ok(r) => r,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let hypothesis_holds = report.hypothesis_holds().unwrap_or(true);
    if require_hypothesis && !hypothesis_holds {
        return Outcome::Skipped;
    }
    let violation = report.is_violation(VIOLATION_REL).then(|| {
        let replay = format!(
            "{}|{}|A={}|B={}",
            checker.id(),
            f.spec_json(),
            a.exact_text(),
            b.exact_text()
        );
        Violation {
            trial: index,
            digest: InputDigest::new("replay").text(&replay).finish(),
            margin: report.worst_margin(),
            replay,
        }
    });
    Outcome::Tested {
        hypothesis_holds,
        violation,
    }
}

/// Runs `spec.count` seeded trials of `checker` with function `f`.
///
/// With `require_hypothesis`, mean-interval checkers get conforming pairs
/// placed inside `spec.spectrum_interval` and any trial whose hypothesis still
/// fails is skipped; otherwise both operators are drawn with spectra uniform
/// in `spec.spectrum_interval` and every trial is tested.
pub fn hunt_violations(
    checker: Checker,
    f: &ScalarFunction,
    spec: &GeneratorSpec,
    require_hypothesis: bool,
    suite: &Suite,
) -> Result<HuntResult> {
    checker.applicable(f)?;
    let outcomes = map_trials(spec.count, |i| {
        hunt_trial(&checker, suite, f, spec, require_hypothesis, i)
    });
    let mut result = HuntResult {
        target: checker.id(),
        function: Some(f.spec_json()),
        seed: spec.seed,
        trials: spec.count,
        violations: Vec::new(),
        worst_margin: f64::INFINITY,
        satisfying_hypothesis_count: 0,
        skipped: 0,
        errors: 0,
        first_error: None,
        witness: None,
        digest: String::new(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Tested {
                hypothesis_holds,
                violation,
            } => {
                result.satisfying_hypothesis_count += usize::from(hypothesis_holds);
                if let Some(v) = violation {
                    result.worst_margin = result.worst_margin.min(v.margin);
                    result.violations.push(v);
                }
            }
            Outcome::Skipped => result.skipped += 1,
            Outcome::Failed(msg) => {
                result.errors += 1;
                result.first_error.get_or_insert(msg);
            }
        }
    }
    Ok(result.seal())
}

/// Conditions understood by [`probe_hypothesis_satisfiability`].
pub const PROBE_CONDITIONS: [&str; 5] = ["thm1", "thm2", "hh", "hh_grid", "sandwich"];

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    let (lo, hi) = PROBE_RANGE;
    (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp()
}

fn ordered_pair(rng: &mut ChaCha8Rng) -> Interval {
    loop {
        let (x, y) = (log_uniform(rng), log_uniform(rng));
        if x != y {
            return Interval {
                lo: x.min(y),
                hi: x.max(y),
            };
        }
    }
}

/// Counts random `(n, N, m, M, v)` tuples satisfying a hypothesis.
///
/// `hh` decides the mean-interval condition for every `v` in `(0, 1)`
/// exactly; `hh_grid` only samples `v = i/100`.
pub fn probe_hypothesis_satisfiability(
    condition: &str,
    samples: usize,
    seed: u64,
) -> Result<HuntResult> {
    if !PROBE_CONDITIONS.contains(&condition) {
        return Err(Error::UnknownCondition(condition.to_string()));
    }
    let trial = |i: u64| -> Result<Option<ProbeTuple>> {
        let mut rng = trial_rng(seed, i);
        let nn = ordered_pair(&mut rng);
        let mm = ordered_pair(&mut rng);
        let (holds, v) = match condition {
            "thm1" => {
                let v = loop {
                    let v: f64 = rng.random();
                    if v > 0.0 {
                        break v;
                    }
                };
                (thm1_condition(nn, mm, v)?.holds, Some(v))
            }
            "thm2" => {
                let v = 10.0 - 9.0 * rng.random::<f64>();
                (thm2_condition(nn, mm, v)?.holds, Some(v))
            }
            "hh" => (hh_condition_exact(nn, mm).holds, None),
            "hh_grid" => (hh_condition(nn, mm, DEFAULT_HH_GRID)?.holds, None),
            _ => (sandwich_condition(mm.lo, nn, mm.hi).holds, None),
        };
        Ok(holds.then_some(ProbeTuple {
            n: nn.lo,
            big_n: nn.hi,
            m: mm.lo,
            big_m: mm.hi,
            v,
        }))
    };
    let outcomes = map_trials(samples, trial);
    let mut result = HuntResult {
        target: condition.to_string(),
        function: None,
        seed,
        trials: samples,
        violations: Vec::new(),
        worst_margin: f64::INFINITY,
        satisfying_hypothesis_count: 0,
        skipped: 0,
        errors: 0,
        first_error: None,
        witness: None,
        digest: String::new(),
    };
    for outcome in outcomes {
        if let Some(t) = outcome? {
            result.satisfying_hypothesis_count += 1;
            result.witness.get_or_insert(t);
        }
    }
    Ok(result.seal())
}
