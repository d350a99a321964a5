//! Built-in scalar functions with declared analytic flags.
//!
//! Scalar convexity and monotonicity flags can be audited by sampling.
//! Operator-level flags (operator convex, operator monotone, ...) are taken
//! from the closed-form family tables and trusted as metadata.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `t ↦ t^r`; `r = 0` is the constant 1.
    Power {
        r: f64,
    },
    Log,
    Exp,
    /// `t ↦ 1/(t + s)`, `s ≥ 0`.
    InverseShift {
        s: f64,
    },
    /// `t ↦ p·t + q`.
    Affine {
        p: f64,
        q: f64,
    },
}

impl FromStr for Family {
    type Err = Error;

    /// Parses the command-line form `name[:p1[,p2]]`, e.g. `power:6`,
    /// `inverse_shift:1`, `affine:1,0`, `log`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (s.trim(), None),
        };
        let params: Vec<f64> = match args {
            Some(a) => a
                .split(',')
                .map(|x| {
                    x.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidFunctionSpec(format!("`{x}` is not a number in `{s}`"))
                    })
                })
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let arity = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidFunctionSpec(format!(
                    "`{name}` takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match name {
            "power" => {
                arity(1)?;
                Ok(Family::Power { r: params[0] })
            }
            "log" => {
                arity(0)?;
                Ok(Family::Log)
            }
            "exp" => {
                arity(0)?;
                Ok(Family::Exp)
            }
            "inverse_shift" => {
                arity(1)?;
                Ok(Family::InverseShift { s: params[0] })
            }
            "affine" => {
                arity(2)?;
                Ok(Family::Affine {
                    p: params[0],
                    q: params[1],
                })
            }
            other => Err(Error::InvalidFunctionSpec(format!(
                "unknown family `{other}`"
            ))),
        }
    }
}

/// One endpoint of a function domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Bound {
    Unbounded,
    Open(f64),
    Closed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: Bound,
    pub hi: Bound,
}

impl Domain {
    pub const REAL: Domain = Domain {
        lo: Bound::Unbounded,
        hi: Bound::Unbounded,
    };
    pub const POSITIVE: Domain = Domain {
        lo: Bound::Open(0.0),
        hi: Bound::Unbounded,
    };
    pub const NONNEGATIVE: Domain = Domain {
        lo: Bound::Closed(0.0),
        hi: Bound::Unbounded,
    };

    pub fn contains(&self, t: f64) -> bool {
        self.admit(t, 0.0) == Some(t)
    }

    pub fn contains_interval(&self, iv: &Interval) -> bool {
        self.contains(iv.lo) && self.contains(iv.hi)
    }

    /// Accepts `t` if it lies in the domain, or within `slack` outside a
    /// closed endpoint (returning the clamped value). Open endpoints must be
    /// cleared by more than `slack`.
    pub fn admit(&self, t: f64, slack: f64) -> Option<f64> {
        if !t.is_finite() {
            return None;
        }
        let t = match self.lo {
            Bound::Unbounded => t,
            Bound::Open(lo) if t > lo + slack => t,
            Bound::Closed(lo) if t >= lo => t,
            Bound::Closed(lo) if t >= lo - slack => lo,
            _ => return None,
        };
        match self.hi {
            Bound::Unbounded => Some(t),
            Bound::Open(hi) if t < hi - slack => Some(t),
            Bound::Closed(hi) if t <= hi => Some(t),
            Bound::Closed(hi) if t <= hi + slack => Some(hi),
            _ => None,
        }
    }

    /// Finite window used for random sampling.
    pub fn sampling_window(&self) -> Interval {
        let lo = match self.lo {
            Bound::Unbounded => -10.0,
            Bound::Open(x) => x + 1e-3,
            Bound::Closed(x) => x,
        };
        let hi = match self.hi {
            Bound::Unbounded => lo.max(0.0) + 100.0,
            Bound::Open(x) => x - 1e-3,
            Bound::Closed(x) => x,
        };
        Interval { lo, hi }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Bound::Unbounded => write!(f, "(-inf, ")?,
            Bound::Open(x) => write!(f, "({x}, ")?,
            Bound::Closed(x) => write!(f, "[{x}, ")?,
        }
        match self.hi {
            Bound::Unbounded => write!(f, "inf)"),
            Bound::Open(x) => write!(f, "{x})"),
            Bound::Closed(x) => write!(f, "{x}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    pub convex_on_domain: bool,
    pub concave_on_domain: bool,
    pub operator_monotone_increasing: bool,
    pub operator_monotone_decreasing: bool,
    pub operator_convex: bool,
    pub operator_concave: bool,
    /// `f(2t) ≤ 2 f(t)` on the domain.
    pub doubling: bool,
}

/// An evaluable scalar function with its domain and declared flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Family", into = "Family")]
pub struct ScalarFunction {
    family: Family,
    domain: Domain,
    flags: Flags,
    value_at_zero: Option<f64>,
}

impl TryFrom<Family> for ScalarFunction {
    type Error = Error;

    fn try_from(family: Family) -> Result<Self> {
        Self::new(family)
    }
}

impl From<ScalarFunction> for Family {
    fn from(f: ScalarFunction) -> Self {
        f.family
    }
}

impl FromStr for ScalarFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

impl ScalarFunction {
    pub fn new(family: Family) -> Result<Self> {
        let (domain, flags, value_at_zero) = match family {
            Family::Power { r } => {
                if !r.is_finite() {
                    return Err(Error::InvalidFunctionSpec(format!(
                        "exponent {r} is not finite"
                    )));
                }
                let even = r > 0.0 && r.fract() == 0.0 && (r / 2.0).fract() == 0.0;
                let domain = if r < 0.0 {
                    Domain::POSITIVE
                } else if even {
                    Domain::REAL
                } else {
                    Domain::NONNEGATIVE
                };
                let unit = (0.0..=1.0).contains(&r);
                let flags = Flags {
                    convex_on_domain: r >= 1.0 || r <= 0.0,
                    concave_on_domain: unit,
                    operator_monotone_increasing: unit,
                    operator_monotone_decreasing: (-1.0..=0.0).contains(&r),
                    operator_convex: (-1.0..=0.0).contains(&r) || (1.0..=2.0).contains(&r),
                    operator_concave: unit,
                    doubling: r <= 1.0,
                };
                let value_at_zero = if r < 0.0 {
                    None
                } else if r == 0.0 {
                    Some(1.0)
                } else {
                    Some(0.0)
                };
                (domain, flags, value_at_zero)
            }
            Family::Log => (
                Domain::POSITIVE,
                Flags {
                    concave_on_domain: true,
                    operator_monotone_increasing: true,
                    operator_concave: true,
                    ..Flags::default()
                },
                None,
            ),
            Family::Exp => (
                Domain::REAL,
                Flags {
                    convex_on_domain: true,
                    ..Flags::default()
                },
                Some(1.0),
            ),
            Family::InverseShift { s } => {
                if !(s >= 0.0) || !s.is_finite() {
                    return Err(Error::InvalidFunctionSpec(format!(
                        "inverse_shift needs a finite shift s >= 0, got {s}"
                    )));
                }
                let (domain, value_at_zero) = if s > 0.0 {
                    (Domain::NONNEGATIVE, Some(1.0 / s))
                } else {
                    (Domain::POSITIVE, None)
                };
                let flags = Flags {
                    convex_on_domain: true,
                    operator_monotone_decreasing: true,
                    operator_convex: true,
                    doubling: true,
                    ..Flags::default()
                };
                (domain, flags, value_at_zero)
            }
            Family::Affine { p, q } => {
                if !p.is_finite() || !q.is_finite() {
                    return Err(Error::InvalidFunctionSpec(format!(
                        "affine coefficients must be finite, got ({p}, {q})"
                    )));
                }
                let flags = Flags {
                    convex_on_domain: true,
                    concave_on_domain: true,
                    operator_monotone_increasing: p >= 0.0,
                    operator_monotone_decreasing: p <= 0.0,
                    operator_convex: true,
                    operator_concave: true,
                    doubling: q >= 0.0,
                };
                (Domain::REAL, flags, Some(q))
            }
        };
        Ok(Self {
            family,
            domain,
            flags,
            value_at_zero,
        })
    }

    /// # Panics
    /// If `r` is not finite.
    pub fn power(r: f64) -> Self {
        Self::new(Family::Power { r }).expect("finite exponent")
    }

    pub fn log() -> Self {
        Self::new(Family::Log).expect("log is always valid")
    }

    pub fn exp() -> Self {
        Self::new(Family::Exp).expect("exp is always valid")
    }

    /// # Panics
    /// If `s` is negative or not finite.
    pub fn inverse_shift(s: f64) -> Self {
        Self::new(Family::InverseShift { s }).expect("finite non-negative shift")
    }

    /// # Panics
    /// If a coefficient is not finite.
    pub fn affine(p: f64, q: f64) -> Self {
        Self::new(Family::Affine { p, q }).expect("finite coefficients")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn value_at_zero(&self) -> Option<f64> {
        self.value_at_zero
    }

    /// Compact name such as `t^6` or `1/(t+1)`.
    pub fn name(&self) -> String {
        match self.family {
            Family::Power { r } => format!("t^{r}"),
            Family::Log => "log t".into(),
            Family::Exp => "exp t".into(),
            Family::InverseShift { s } if s == 0.0 => "1/t".into(),
            Family::InverseShift { s } => format!("1/(t+{s})"),
            Family::Affine { p, q } => format!("{p}*t+{q}"),
        }
    }

    /// JSON form of the function spec.
    pub fn spec_json(&self) -> String {
        serde_json::to_string(&self.family).expect("family serializes")
    }

    pub(crate) fn domain_error(&self, value: f64) -> Error {
        Error::DomainViolation {
            function: self.name(),
            domain: self.domain.to_string(),
            value,
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !self.domain.contains(t) {
            return Err(self.domain_error(t));
        }
        let y = match self.family {
            Family::Power { r } if r == 0.0 => 1.0,
            Family::Power { r } if r.fract() == 0.0 && r.abs() <= 64.0 => t.powi(r as i32),
            Family::Power { r } => t.powf(r),
            Family::Log => t.ln(),
            Family::Exp => t.exp(),
            Family::InverseShift { s } => 1.0 / (t + s),
            Family::Affine { p, q } => p * t + q,
        };
        if y.is_finite() {
            Ok(y)
        } else {
            Err(self.domain_error(t))
        }
    }

    /// Chord of `f` through `(a, f(a))` and `(b, f(b))`, evaluated at `t`.
    pub fn secant(&self, a: f64, b: f64, t: f64) -> Result<f64> {
        if a == b {
            return Err(Error::DegenerateInterval { lo: a, hi: b });
        }
        if a > b {
            return Err(Error::InvalidInterval { lo: a, hi: b });
        }
        let (fa, fb) = (self.eval(a)?, self.eval(b)?);
        if t == a {
            return Ok(fa);
        }
        if t == b {
            return Ok(fb);
        }
        Ok(((b - t) * fa + (t - a) * fb) / (b - a))
    }

    /// Samples midpoint convexity/concavity, monotonicity and the doubling
    /// property and reports every contradiction with the declared flags.
    pub fn audit_flags(&self, samples: usize, seed: u64) -> Result<FlagAudit> {
        if samples < 3 {
            return Err(Error::InvalidArgument(format!(
                "audit needs at least 3 samples, got {samples}"
            )));
        }
        let window = self.domain.sampling_window();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut contradictions = Vec::new();
        let close = |lhs: f64, rhs: f64| lhs <= rhs + 1e-12 * (1.0 + lhs.abs().max(rhs.abs()));
        for _ in 0..samples {
            let x = rng.random_range(window.lo..=window.hi);
            let y = rng.random_range(window.lo..=window.hi);
            let (x, y) = (x.min(y), x.max(y));
            let mid = 0.5 * (x + y);
            let (fx, fy, fm) = (self.eval(x)?, self.eval(y)?, self.eval(mid)?);
            let chord = 0.5 * (fx + fy);
            if self.flags.convex_on_domain && !close(fm, chord) {
                contradictions.push(format!(
                    "convexity fails at ({x}, {y}): f(mid)={fm} > {chord}"
                ));
            }
            if self.flags.concave_on_domain && !close(chord, fm) {
                contradictions.push(format!(
                    "concavity fails at ({x}, {y}): f(mid)={fm} < {chord}"
                ));
            }
            if self.flags.operator_monotone_increasing && !close(fx, fy) {
                contradictions.push(format!("not increasing on ({x}, {y})"));
            }
            if self.flags.operator_monotone_decreasing && !close(fy, fx) {
                contradictions.push(format!("not decreasing on ({x}, {y})"));
            }
            if self.flags.doubling && self.domain.contains(2.0 * x) {
                let f2 = self.eval(2.0 * x)?;
                if !close(f2, 2.0 * fx) {
                    contradictions
                        .push(format!("doubling fails at {x}: f(2t)={f2} > {}", 2.0 * fx));
                }
            }
        }
        Ok(FlagAudit {
            function: self.name(),
            samples,
            contradictions,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagAudit {
    pub function: String,
    pub samples: usize,
    pub contradictions: Vec<String>,
}

impl FlagAudit {
    pub fn is_clean(&self) -> bool {
        self.contradictions.is_empty()
    }
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
