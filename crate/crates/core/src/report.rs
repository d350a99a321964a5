//! Structured verdicts produced by the inequality checkers.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constants::RatioConstant;
use crate::error::Result;
use crate::hypotheses::HypothesisReport;
use crate::matrix::SymMatrix;
use crate::spectral::{loewner_compare, LoewnerVerdict};

/// A failure is only counted as a violation when the smallest eigenvalue of
/// `rhs - lhs` drops below `-VIOLATION_REL · ‖rhs - lhs‖_F`.
pub const VIOLATION_REL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainLink {
    pub label: String,
    /// Verdict for `right - left` of this link.
    pub verdict: LoewnerVerdict,
}

impl ChainLink {
    pub fn holds(&self) -> bool {
        self.verdict.is_ge()
    }
}

/// Verdict for one instance of a claimed inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem_id: String,
    /// `None` when the statement has no spectral hypothesis.
    pub hypothesis: Option<HypothesisReport>,
    pub lhs: SymMatrix,
    pub rhs: SymMatrix,
    /// Verdict for `rhs - lhs`; for chains this is the end-to-end comparison.
    pub verdict: LoewnerVerdict,
    #[serde(default)]
    pub chain_links: Vec<ChainLink>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<RatioConstant>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub input_digest: String,
}

impl InequalityReport {
    pub fn compare(
        theorem_id: &str,
        lhs: SymMatrix,
        rhs: SymMatrix,
        rel_tol: f64,
        input_digest: String,
    ) -> Result<Self> {
        let verdict = loewner_compare(&rhs, &lhs, rel_tol)?;
        Ok(Self {
            theorem_id: theorem_id.to_string(),
            hypothesis: None,
            lhs,
            rhs,
            verdict,
            chain_links: Vec::new(),
            constants: Vec::new(),
            notes: Vec::new(),
            input_digest,
        })
    }

    /// `lhs ≤ rhs` and every chain link hold at the configured tolerance.
    pub fn holds(&self) -> bool {
        self.verdict.is_ge() && self.chain_links.iter().all(ChainLink::holds)
    }

    pub fn hypothesis_holds(&self) -> Option<bool> {
        self.hypothesis.as_ref().map(|h| h.holds)
    }

    fn all_verdicts(&self) -> impl Iterator<Item = &LoewnerVerdict> {
        std::iter::once(&self.verdict).chain(self.chain_links.iter().map(|l| &l.verdict))
    }

    /// Most negative `λ_min(rhs - lhs)` over the verdict and all links.
    pub fn worst_margin(&self) -> f64 {
        self.all_verdicts()
            .map(|v| v.min_eig_of_difference)
            .fold(f64::INFINITY, f64::min)
    }

    /// Some comparison fails by more than `rel · ‖rhs - lhs‖_F`.
    pub fn is_violation(&self, rel: f64) -> bool {
        self.all_verdicts()
            .any(|v| v.min_eig_of_difference < -rel * v.difference_norm)
    }
}

/// One scalar inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarInequality {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
    pub holds: bool,
    /// `false` for entries reported for comparison only.
    #[serde(default = "yes")]
    pub asserted: bool,
}

fn yes() -> bool {
    true
}

impl ScalarInequality {
    pub fn new(label: &str, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let margin = rhs - lhs;
        let tol = rel_tol * lhs.abs().max(rhs.abs()).max(1.0);
        Self {
            label: label.to_string(),
            lhs,
            rhs,
            margin,
            holds: margin >= -tol,
            asserted: true,
        }
    }

    pub fn unasserted(mut self) -> Self {
        self.asserted = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarReport {
    pub theorem_id: String,
    pub entries: Vec<ScalarInequality>,
    pub constants: Vec<RatioConstant>,
    pub notes: Vec<String>,
    pub input_digest: String,
}

impl ScalarReport {
    /// Every asserted entry holds.
    pub fn holds(&self) -> bool {
        self.entries.iter().filter(|e| e.asserted).all(|e| e.holds)
    }
}

/// SHA-256 over the exact bit patterns of a checker's inputs.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new(tag: &str) -> Self {
        let mut d = Self(Sha256::new());
        d.0.update(tag.as_bytes());
        d
    }

    pub fn text(mut self, s: &str) -> Self {
        self.0.update((s.len() as u64).to_le_bytes());
        self.0.update(s.as_bytes());
        self
    }

    pub fn number(mut self, x: f64) -> Self {
        self.0.update(x.to_bits().to_le_bytes());
        self
    }

    pub fn matrix(mut self, m: &SymMatrix) -> Self {
        self.0.update((m.dim() as u64).to_le_bytes());
        for x in m.as_slice() {
            self.0.update(x.to_bits().to_le_bytes());
        }
        self
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}
