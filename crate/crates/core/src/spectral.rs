//! Eigendecomposition, functional calculus and the Loewner order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{Bound, ScalarFunction};
use crate::interval::Interval;
use crate::matrix::SymMatrix;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the input norm.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Default relative tolerance for Loewner comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Eigenvalues may sit this far (relative to `‖A‖_F`) outside a closed domain
/// endpoint and are clamped onto it; open endpoints must be cleared by the
/// same margin.
pub const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Row-major; column `j` is the unit eigenvector for `eigenvalues[j]`.
    pub eigenvectors: Vec<f64>,
    pub source_norm: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        let n = self.dim();
        (0..n).map(|i| self.eigenvectors[i * n + j]).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.min_eigenvalue(),
            hi: self.max_eigenvalue(),
        }
    }

    /// `V · diag(values) · Vᵀ`.
    pub fn compose(&self, values: &[f64]) -> SymMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n)
                    .map(|k| v[i * n + k] * values[k] * v[j * n + k])
                    .sum();
                out[i * n + j] = s;
                out[j * n + i] = s;
            }
        }
        SymMatrix::symmetrized(n, out)
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.compose(&self.eigenvalues)
    }

    /// `max |VᵀV - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n).map(|i| v[i * n + a] * v[i * n + b]).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Cyclic Jacobi diagonalization.
pub fn eigen_decompose(a: &SymMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let norm = a.frobenius_norm();
    let mut m = a.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweep = 0;
    loop {
        let off = off_norm(&m);
        if off <= JACOBI_TOLERANCE * norm {
            break;
        }
        if sweep == JACOBI_MAX_SWEEPS {
            return Err(Error::NonConvergence {
                sweeps: sweep,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (kp, kq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * kp - s * kq;
                    m[k * n + q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * pk - s * qk;
                    m[q * n + k] = s * pk + c * qk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let (kp, kq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * kp - s * kq;
                    v[k * n + q] = s * kp + c * kq;
                }
            }
        }
        sweep += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[r * n + new_col] = v[r * n + old_col];
        }
    }
    reorthonormalize_clusters(&eigenvalues, &mut eigenvectors, n);

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        source_norm: norm,
    })
}

/// Modified Gram-Schmidt inside each run of numerically equal eigenvalues.
fn reorthonormalize_clusters(eigenvalues: &[f64], vecs: &mut [f64], n: usize) {
    let scale = eigenvalues.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let tie = 1e-12 * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] <= tie {
            end += 1;
        }
        if end - start > 1 {
            for j in start..end {
                for k in start..j {
                    let dot: f64 = (0..n).map(|r| vecs[r * n + j] * vecs[r * n + k]).sum();
                    for r in 0..n {
                        vecs[r * n + j] -= dot * vecs[r * n + k];
                    }
                }
                let norm: f64 = (0..n).map(|r| vecs[r * n + j].powi(2)).sum::<f64>().sqrt();
                for r in 0..n {
                    vecs[r * n + j] /= norm;
                }
            }
        }
        start = end;
    }
}

/// `τ(A)`: the smallest closed interval containing the spectrum.
pub fn spectral_interval(a: &SymMatrix) -> Result<Interval> {
    Ok(eigen_decompose(a)?.interval())
}

/// Applies an arbitrary map to the eigenvalues: `V · g(Λ) · Vᵀ`.
pub fn map_spectrum(a: &SymMatrix, g: impl Fn(f64) -> f64) -> Result<SymMatrix> {
    let dec = eigen_decompose(a)?;
    let values: Vec<f64> = dec.eigenvalues.iter().map(|&x| g(x)).collect();
    Ok(dec.compose(&values))
}

/// `f(A)` through the spectral decomposition, after checking every eigenvalue
/// against the domain of `f`.
pub fn apply_function(f: &ScalarFunction, a: &SymMatrix) -> Result<SymMatrix> {
    let dec = eigen_decompose(a)?;
    apply_to_decomposition(f, &dec)
}

pub fn apply_to_decomposition(
    f: &ScalarFunction,
    dec: &SpectralDecomposition,
) -> Result<SymMatrix> {
    let slack = DOMAIN_SLACK * dec.source_norm;
    let values = dec
        .eigenvalues
        .iter()
        .map(|&x| {
            let t = f
                .domain()
                .admit(x, slack)
                .ok_or_else(|| f.domain_error(x))?;
            f.eval(t)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(dec.compose(&values))
}

fn is_nonnegative_integer(r: f64) -> bool {
    r >= 0.0 && r.fract() == 0.0 && r <= 1024.0
}

/// `A^r`. Non-negative integer exponents use repeated squaring, so integer
/// inputs give exact integer results; other exponents go through the
/// functional calculus.
pub fn matrix_power(a: &SymMatrix, r: f64) -> Result<SymMatrix> {
    if !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "exponent {r} is not finite"
        )));
    }
    if !is_nonnegative_integer(r) {
        return apply_function(&ScalarFunction::power(r), a);
    }
    let f = ScalarFunction::power(r);
    if f.domain().lo != Bound::Unbounded {
        let tau = spectral_interval(a)?;
        if tau.lo < -DOMAIN_SLACK * a.frobenius_norm() {
            return Err(f.domain_error(tau.lo));
        }
    }
    let mut exp = r as u32;
    let mut result = SymMatrix::identity(a.dim());
    let mut base = a.clone();
    let mut first = true;
    while exp > 0 {
        if exp & 1 == 1 {
            result = if first {
                base.clone()
            } else {
                result.commuting_product(&base)?
            };
            first = false;
        }
        exp >>= 1;
        if exp > 0 {
            base = base.commuting_product(&base)?;
        }
    }
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    LessOrEqual,
    GreaterOrEqual,
    Equal,
    Incomparable,
}

/// Outcome of comparing `A` with `B` in the Loewner order, witnessed by the
/// extreme eigenvalues of `A - B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub relation: Relation,
    pub min_eig_of_difference: f64,
    pub max_eig_of_difference: f64,
    pub tolerance_used: f64,
    /// `‖A - B‖_F`.
    pub difference_norm: f64,
}

impl LoewnerVerdict {
    /// `A ≥ B` at the configured tolerance.
    pub fn is_ge(&self) -> bool {
        matches!(self.relation, Relation::GreaterOrEqual | Relation::Equal)
    }

    /// `A ≥ B` and `A ≠ B` at the configured tolerance.
    pub fn is_strictly_ge(&self) -> bool {
        self.relation == Relation::GreaterOrEqual
    }
}

pub fn loewner_compare(a: &SymMatrix, b: &SymMatrix, rel_tol: f64) -> Result<LoewnerVerdict> {
    if !(rel_tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be non-negative, got {rel_tol}"
        )));
    }
    let d = a.sub(b)?;
    let norm = d.frobenius_norm();
    let tau = spectral_interval(&d)?;
    let tol = rel_tol * norm.max(1.0);
    let ge = tau.lo >= -tol;
    let le = tau.hi <= tol;
    let relation = match (ge, le) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::GreaterOrEqual,
        (false, true) => Relation::LessOrEqual,
        (false, false) => Relation::Incomparable,
    };
    Ok(LoewnerVerdict {
        relation,
        min_eig_of_difference: tau.lo,
        max_eig_of_difference: tau.hi,
        tolerance_used: tol,
        difference_norm: norm,
    })
}

/// Positivity test `λ_min(A) > rel · ‖A‖_F`, returning `λ_min` on success.
pub fn require_strictly_positive(a: &SymMatrix, rel: f64) -> Result<f64> {
    let lo = spectral_interval(a)?.lo;
    let threshold = rel * a.frobenius_norm();
    if lo > threshold {
        Ok(lo)
    } else {
        Err(Error::NotStrictlyPositive {
            min_eig: lo,
            threshold,
        })
    }
}
