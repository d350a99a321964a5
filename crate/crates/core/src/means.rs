//! Weighted arithmetic and geometric means of two operators, and the
//! integral mean of `f` along the segment joining them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::ScalarFunction;
use crate::matrix::SymMatrix;
use crate::spectral::{apply_function, eigen_decompose};

/// `A∇_v B = (1-v)A + vB`, for any real `v`.
pub fn arithmetic_mean(a: &SymMatrix, b: &SymMatrix, v: f64) -> Result<SymMatrix> {
    a.lin_comb(1.0 - v, b, v)
}

/// `λ_min > dim · STRICT_POSITIVITY · ‖·‖_F` is required of both inputs.
pub const STRICT_POSITIVITY: f64 = 1e-12;

/// `A♯_v B = A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}` for `v ∈ [0, 1]`.
pub fn geometric_mean(a: &SymMatrix, b: &SymMatrix, v: f64) -> Result<SymMatrix> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::WeightOutOfRange { v, range: "[0, 1]" });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let dec_a = eigen_decompose(a)?;
    for (m, dec) in [(a, &dec_a), (b, &eigen_decompose(b)?)] {
        let threshold = m.dim() as f64 * STRICT_POSITIVITY * m.frobenius_norm();
        if dec.min_eigenvalue() <= threshold {
            return Err(Error::NotStrictlyPositive {
                min_eig: dec.min_eigenvalue(),
                threshold,
            });
        }
    }
    let half: Vec<f64> = dec_a.eigenvalues.iter().map(|x| x.sqrt()).collect();
    let inv_half: Vec<f64> = half.iter().map(|x| 1.0 / x).collect();
    let a_half = dec_a.compose(&half);
    let a_inv_half = dec_a.compose(&inv_half);
    let inner = a_inv_half.congruence(b)?;
    let inner_v = apply_function(&ScalarFunction::power(v), &inner)?;
    a_half.congruence(&inner_v)
}

/// Nodes per Gauss–Legendre panel.
pub const GL_NODES: usize = 16;
pub const DEFAULT_PANELS: usize = 8;
/// Largest accepted relative change between `panels` and `2·panels`.
pub const REFINEMENT_LIMIT: f64 = 1e-8;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre polynomial. `n` must be positive.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Approximation of `∫₀¹ f((1-v)A + vB) dv` together with its self-check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralMean {
    pub value: SymMatrix,
    pub panels: usize,
    /// `‖I(2·panels) - I(panels)‖_F / ‖I(2·panels)‖_F`.
    pub refinement_delta: f64,
}

fn composite_gl(
    f: &ScalarFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    panels: usize,
) -> Result<SymMatrix> {
    let (nodes, weights) = gauss_legendre(GL_NODES);
    let h = 1.0 / panels as f64;
    let panel_sum = |p: usize| -> Result<SymMatrix> {
        let mid = (p as f64 + 0.5) * h;
        let mut acc = SymMatrix::zeros(a.dim());
        for (x, w) in nodes.iter().zip(&weights) {
            let v = mid + 0.5 * h * x;
            let fv = apply_function(f, &arithmetic_mean(a, b, v)?)?;
            acc = acc.lin_comb(1.0, &fv, 0.5 * h * w)?;
        }
        Ok(acc)
    };
    #[cfg(feature = "parallel")]
    let sums: Vec<Result<SymMatrix>> = {
        use rayon::prelude::*;
        (0..panels).into_par_iter().map(panel_sum).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let sums: Vec<Result<SymMatrix>> = (0..panels).map(panel_sum).collect();
    // fixed panel order keeps the reduction independent of scheduling
    let mut total = SymMatrix::zeros(a.dim());
    for s in sums {
        total = total.add(&s?)?;
    }
    Ok(total)
}

/// Composite Gauss–Legendre rule for `∫₀¹ f(A∇_v B) dv` with `panels`
/// panels, checked against the rule with twice as many panels.
pub fn hh_integral_mean(
    f: &ScalarFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    panels: usize,
) -> Result<IntegralMean> {
    if panels == 0 {
        return Err(Error::InvalidArgument(
            "panel count must be positive".into(),
        ));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let coarse = composite_gl(f, a, b, panels)?;
    let fine = composite_gl(f, a, b, 2 * panels)?;
    let diff = fine.sub(&coarse)?.frobenius_norm();
    let scale = fine.frobenius_norm();
    let delta = if scale > 0.0 { diff / scale } else { diff };
    if delta > REFINEMENT_LIMIT {
        return Err(Error::QuadratureNotConverged {
            delta,
            limit: REFINEMENT_LIMIT,
        });
    }
    Ok(IntegralMean {
        value: fine,
        panels,
        refinement_delta: delta,
    })
}
