use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Signed separation between two intervals: the distance between them when
    /// they are disjoint, minus the overlap length when they intersect.
    pub fn gap(&self, other: &Interval) -> f64 {
        if self.hi < other.lo {
            other.lo - self.hi
        } else if other.hi < self.lo {
            self.lo - other.hi
        } else {
            -(self.hi.min(other.hi) - self.lo.max(other.lo))
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn scale(&self, c: f64) -> Interval {
        let (a, b) = (self.lo * c, self.hi * c);
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    /// Weighted arithmetic mean of the endpoints, `(1-v)·self + v·other`.
    pub fn mean_with(&self, other: &Interval, v: f64) -> Interval {
        let lo = (1.0 - v) * self.lo + v * other.lo;
        let hi = (1.0 - v) * self.hi + v * other.hi;
        Interval {
            lo: lo.min(hi),
            hi: lo.max(hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
