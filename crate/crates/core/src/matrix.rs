//! Dense real symmetric matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative asymmetry accepted at construction before the input is rejected.
pub const ASYMMETRY_LIMIT: f64 = 1e-12;

/// Real symmetric `dim × dim` matrix stored row-major.
///
/// Construction symmetrizes its input as `(M + Mᵀ)/2`, so the stored entries
/// are exactly symmetric. The largest `|m_ij - m_ji|` seen on input is kept
/// as [`SymMatrix::asymmetry_residual`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
    asymmetry_residual: f64,
}

impl PartialEq for SymMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.data == other.data
    }
}

impl SymMatrix {
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                pos / dim,
                pos % dim
            )));
        }
        let max_abs = data.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let mut residual = 0.0_f64;
        let mut sym = data;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let (a, b) = (sym[i * dim + j], sym[j * dim + i]);
                residual = residual.max((a - b).abs());
                let avg = 0.5 * (a + b);
                sym[i * dim + j] = avg;
                sym[j * dim + i] = avg;
            }
        }
        if residual > ASYMMETRY_LIMIT * max_abs {
            return Err(Error::InvalidMatrix(format!(
                "asymmetry {residual:e} exceeds {ASYMMETRY_LIMIT:e} x max|entry|"
            )));
        }
        Ok(Self {
            dim,
            data: sym,
            asymmetry_residual: residual,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix(format!(
                "matrix is not square: {dim} rows but a row of length {}",
                bad.len()
            )));
        }
        Self::from_row_major(dim, rows.concat())
    }

    /// Builds from entries already known to be symmetric up to rounding,
    /// skipping the asymmetry limit. Used for products such as `X·Y·X`.
    pub(crate) fn symmetrized(dim: usize, mut data: Vec<f64>) -> Self {
        for i in 0..dim {
            for j in (i + 1)..dim {
                let avg = 0.5 * (data[i * dim + j] + data[j * dim + i]);
                data[i * dim + j] = avg;
                data[j * dim + i] = avg;
            }
        }
        Self {
            dim,
            data,
            asymmetry_residual: 0.0,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
            asymmetry_residual: 0.0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    pub fn scalar(dim: usize, c: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c;
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * dim + i] = *d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn asymmetry_residual(&self) -> f64 {
        self.asymmetry_residual
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == 0.0))
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    fn check_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// `alpha·self + beta·other`.
    pub fn lin_comb(&self, alpha: f64, other: &SymMatrix, beta: f64) -> Result<SymMatrix> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
            asymmetry_residual: 0.0,
        })
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.lin_comb(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.lin_comb(1.0, other, -1.0)
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| c * x).collect(),
            asymmetry_residual: 0.0,
        }
    }

    /// Sum of a non-empty list of matrices of equal dimension.
    pub fn sum(mats: &[SymMatrix]) -> Result<SymMatrix> {
        let first = mats
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty operator list".into()))?;
        mats[1..]
            .iter()
            .try_fold(first.clone(), |acc, m| acc.add(m))
    }

    /// Plain row-major product `self · other` (not symmetric in general).
    pub fn matmul(&self, other: &SymMatrix) -> Result<Vec<f64>> {
        self.check_dim(other)?;
        Ok(matmul_dense(self.dim, &self.data, &other.data))
    }

    /// Product of two factors whose product is symmetric, such as powers of
    /// one matrix. The rounding asymmetry is averaged away.
    pub fn commuting_product(&self, other: &SymMatrix) -> Result<SymMatrix> {
        let p = self.matmul(other)?;
        Ok(Self::symmetrized(self.dim, p))
    }

    /// Congruence `self · inner · self`, symmetric whenever both factors are.
    pub fn congruence(&self, inner: &SymMatrix) -> Result<SymMatrix> {
        self.check_dim(inner)?;
        let left = matmul_dense(self.dim, &self.data, &inner.data);
        let full = matmul_dense(self.dim, &left, &self.data);
        Ok(Self::symmetrized(self.dim, full))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: x.len(),
            });
        }
        Ok(self
            .data
            .chunks(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `⟨Ax, x⟩`.
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64> {
        let ax = self.mul_vec(x)?;
        Ok(ax.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    /// Entries at 17 significant digits, enough to reproduce the matrix bit for bit.
    pub fn exact_text(&self) -> String {
        let rows: Vec<String> = self
            .data
            .chunks(self.dim)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| format!("{x:.16e}")).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

pub(crate) fn matmul_dense(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

impl TryFrom<Vec<Vec<f64>>> for SymMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<SymMatrix> for Vec<Vec<f64>> {
    fn from(m: SymMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.chunks(self.dim).enumerate() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>12.6}")).collect();
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizes_and_records_residual() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0 + 1e-15, 3.0]]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert!(m.asymmetry_residual() > 0.0);
    }

    #[test]
    fn rejects_asymmetric_and_nonfinite() {
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.1, 3.0]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![f64::NAN]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
        assert!(SymMatrix::from_rows(&[]).is_err());
    }

    #[test]
    fn integer_products_are_exact() {
        let b = SymMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let b2 = b.commuting_product(&b).unwrap();
        let b3 = b2.commuting_product(&b).unwrap();
        assert_eq!(b3.rows(), vec![vec![34.0, 14.0], vec![14.0, 6.0]]);
    }

    #[test]
    fn json_rows_round_trip() {
        let m = SymMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, 5.0]]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, "[[3.0,1.0],[1.0,5.0]]");
        let back: SymMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = SymMatrix::identity(2);
        let b = SymMatrix::identity(3);
        assert_eq!(
            a.add(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }
}
