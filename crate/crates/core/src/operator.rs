//! Dense complex matrices and the Hermitian operators built on them.
//!
//! Everything here is a small value type; operators are immutable once
//! constructed and all arithmetic returns new values.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-entry asymmetry tolerated (and symmetrized away) on ingestion.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Default absolute tolerance for boundary tests.
pub const DEFAULT_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is not `dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "matrix data has wrong length");
        Self { dim, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let dim = columns.len();
        let mut m = Self::zeros(dim);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * dim + j] = v;
            }
        }
        m
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let dim = u.len();
        assert_eq!(dim, v.len());
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = u[i] * v[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.dim;
        assert_eq!(n, other.dim, "matmul dimension mismatch");
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        (0..n).map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum()).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    /// Frobenius (Hilbert–Schmidt) norm.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    /// Largest per-entry deviation from Hermiticity, with its position.
    fn max_asymmetry(&self) -> (f64, usize, usize) {
        let n = self.dim;
        let mut worst = (0.0, 0, 0);
        for i in 0..n {
            for j in i..n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A complex Hermitian n×n matrix.
///
/// Construction symmetrizes `(A + A*)/2` when the per-entry asymmetry is at
/// most [`HERMITICITY_TOL`] and rejects the input otherwise.
#[derive(Clone, PartialEq)]
pub struct HermitianOperator {
    inner: Matrix,
}

impl HermitianOperator {
    /// Checked construction from an arbitrary square matrix.
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if m.dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let n = m.dim;
        for (k, z) in m.data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: k / n, col: k % n });
            }
        }
        let (asym, row, col) = m.max_asymmetry();
        if asym > HERMITICITY_TOL {
            return Err(Error::NotHermitian { row, col, asymmetry: asym });
        }
        Ok(Self::symmetrized(m))
    }

    /// `(M + M*)/2`, without any tolerance check.
    pub fn symmetrized(m: Matrix) -> Self {
        let n = m.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            out.set(i, i, Complex64::new(m.get(i, i).re, 0.0));
            for j in (i + 1)..n {
                let v = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
        }
        Self { inner: out }
    }

    /// Builds an operator from row-major real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let n = re.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if im.len() != n {
            return Err(Error::ShapeMismatch);
        }
        let mut data = Vec::with_capacity(n * n);
        for (row, (r, i)) in re.iter().zip(im).enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, row, cols: r.len() });
            }
            if i.len() != n {
                return Err(Error::ShapeMismatch);
            }
            data.extend(r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)));
        }
        Self::from_matrix(Matrix::from_vec(n, data))
    }

    /// Real symmetric operator from real rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let im: Vec<Vec<f64>> = rows.iter().map(|r| vec![0.0; r.len()]).collect();
        Self::from_parts(rows, &im)
    }

    pub fn zeros(dim: usize) -> Self {
        Self { inner: Matrix::zeros(dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { inner: Matrix::identity(dim) }
    }

    pub fn scaled_identity(dim: usize, c: f64) -> Self {
        Self::identity(dim).scale(c)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n);
        for (k, &v) in values.iter().enumerate() {
            m.set(k, k, Complex64::new(v, 0.0));
        }
        Self { inner: m }
    }

    /// Rank-one projector |v⟩⟨v| / ⟨v|v⟩.
    pub fn projector(v: &[Complex64]) -> Self {
        let norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!(norm_sqr > 0.0, "projector onto the zero vector");
        let m = Matrix::outer(v, v);
        Self::symmetrized(m).scale(1.0 / norm_sqr)
    }

    /// `U diag(values) U*` for a matrix `U` whose columns are the basis.
    pub fn from_spectral(values: &[f64], basis: &Matrix) -> Self {
        let n = basis.dim();
        assert_eq!(values.len(), n);
        let mut m = Matrix::zeros(n);
        for (k, &lambda) in values.iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            for i in 0..n {
                let uik = basis.get(i, k) * lambda;
                for j in 0..n {
                    m.data[i * n + j] += uik * basis.get(j, k).conj();
                }
            }
        }
        Self::symmetrized(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner.get(row, col)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix {
        self.inner
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace().re
    }

    pub fn hs_norm(&self) -> f64 {
        self.inner.hs_norm()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.inner.data.iter().zip(&other.inner.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: f64, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        let data = self.inner.data.iter().zip(&other.inner.data).map(|(a, b)| a + b * alpha).collect();
        Self { inner: Matrix { dim: self.dim(), data } }
    }

    pub fn scale(&self, alpha: f64) -> Self {
        let data = self.inner.data.iter().map(|a| a * alpha).collect();
        Self { inner: Matrix { dim: self.dim(), data } }
    }

    /// `Σ_i w_i A_i` over equal-dimension operators.
    pub fn linear_combination(weights: &[f64], ops: &[HermitianOperator]) -> Self {
        assert_eq!(weights.len(), ops.len());
        assert!(!ops.is_empty(), "empty linear combination");
        let mut acc = Self::zeros(ops[0].dim());
        for (w, op) in weights.iter().zip(ops) {
            if *w != 0.0 {
                acc = acc.axpy(*w, op);
            }
        }
        acc
    }

    /// `X A X*` for an arbitrary matrix `X`.
    pub fn congruence(&self, x: &Matrix) -> Self {
        Self::symmetrized(x.matmul(&self.inner).matmul(&x.adjoint()))
    }

    /// Ordinary matrix product; generally not Hermitian.
    pub fn matmul(&self, other: &Self) -> Matrix {
        self.inner.matmul(&other.inner)
    }

    /// Hilbert–Schmidt norm of the commutator `AB − BA`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        self.matmul(other).sub(&other.matmul(self)).hs_norm()
    }

    /// ⟨v|A|v⟩ (real for Hermitian A).
    pub fn expectation(&self, v: &[Complex64]) -> f64 {
        let av = self.inner.mul_vec(v);
        v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    }

    /// Real-linear coordinates in an orthonormal basis of the real space of
    /// Hermitian matrices: diagonal entries, then √2·Re and √2·Im of the
    /// strict upper triangle. The map is an isometry for the HS inner product.
    pub fn real_coordinates(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for k in 0..n {
            out.push(self.get(k, k).re);
        }
        let s = std::f64::consts::SQRT_2;
        for i in 0..n {
            for j in (i + 1)..n {
                let z = self.get(i, j);
                out.push(s * z.re);
                out.push(s * z.im);
            }
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        let n = self.dim();
        // Adding 0.0 turns -0.0 into 0.0 so output bytes do not depend on it.
        let re = (0..n).map(|i| (0..n).map(|j| self.get(i, j).re + 0.0).collect()).collect();
        let im = (0..n).map(|i| (0..n).map(|j| self.get(i, j).im + 0.0).collect()).collect();
        MatrixJson { dim: n, re, im }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let op = Self::from_parts(&json.re, &json.im)?;
        if op.dim() != json.dim {
            return Err(Error::DeclaredDim { declared: json.dim, actual: op.dim() });
        }
        Ok(op)
    }
}

impl fmt::Debug for HermitianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.inner)
    }
}

/// Row-major matrix wire format: `{"dim": n, "re": [[...]], "im": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl TryFrom<MatrixJson> for HermitianOperator {
    type Error = Error;

    fn try_from(value: MatrixJson) -> Result<Self> {
        HermitianOperator::from_json(&value)
    }
}

impl From<&HermitianOperator> for MatrixJson {
    fn from(op: &HermitianOperator) -> Self {
        op.to_json()
    }
}

/// A density operator: positive semidefinite with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    op: HermitianOperator,
}

impl State {
    pub fn new(op: HermitianOperator, tol: f64) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::NotAState(format!("trace {tr} differs from 1")));
        }
        let min = crate::spectral::min_eigenvalue(&op)?;
        if min < -tol {
            return Err(Error::NotAState(format!("min eigenvalue {min:e} is negative")));
        }
        Ok(Self { op })
    }

    /// Pure state |v⟩⟨v| for a nonzero vector.
    pub fn pure(v: &[Complex64]) -> Self {
        Self { op: HermitianOperator::projector(v) }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { op: HermitianOperator::scaled_identity(dim, 1.0 / dim as f64) }
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn into_op(self) -> HermitianOperator {
        self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

impl AsRef<HermitianOperator> for State {
    fn as_ref(&self) -> &HermitianOperator {
        &self.op
    }
}

/// An effect: an operator in the interval `[0, I]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    op: HermitianOperator,
}

impl Effect {
    pub fn new(op: HermitianOperator, tol: f64) -> Result<Self> {
        let spec = crate::spectral::eig(&op)?;
        let (min, max) = (spec.min(), spec.max());
        if min < -tol || max > 1.0 + tol {
            return Err(Error::NotAnEffect { min, max });
        }
        Ok(Self { op })
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn into_op(self) -> HermitianOperator {
        self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

impl AsRef<HermitianOperator> for Effect {
    fn as_ref(&self) -> &HermitianOperator {
        &self.op
    }
}

/// Standard basis vector e_k of C^n.
pub fn basis_vector(dim: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; dim];
    v[k] = ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_input() {
        let err = HermitianOperator::from_real_rows(&[vec![1.0, 0.5], vec![0.4, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn symmetrizes_tiny_asymmetry() {
        let op = HermitianOperator::from_real_rows(&[vec![1.0, 0.5 + 4e-13], vec![0.5, 1.0]]).unwrap();
        assert_eq!(op.get(0, 1), op.get(1, 0).conj());
        assert!((op.get(0, 1).re - (0.5 + 2e-13)).abs() < 1e-15);
    }

    #[test]
    fn rejects_ragged_and_mismatched_arrays() {
        let ragged = MatrixJson { dim: 2, re: vec![vec![1.0, 0.0], vec![0.0]], im: vec![vec![0.0; 2]; 2] };
        assert!(matches!(HermitianOperator::from_json(&ragged), Err(Error::NotSquare { .. })));

        let mismatched = MatrixJson { dim: 2, re: vec![vec![1.0, 0.0], vec![0.0, 1.0]], im: vec![vec![0.0; 2]] };
        assert!(matches!(HermitianOperator::from_json(&mismatched), Err(Error::ShapeMismatch)));

        let wrong_dim = MatrixJson { dim: 3, re: vec![vec![1.0, 0.0], vec![0.0, 1.0]], im: vec![vec![0.0; 2]; 2] };
        assert!(matches!(HermitianOperator::from_json(&wrong_dim), Err(Error::DeclaredDim { .. })));

        let empty = MatrixJson { dim: 0, re: vec![], im: vec![] };
        assert!(matches!(HermitianOperator::from_json(&empty), Err(Error::EmptyDimension)));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let v = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.7)];
        let p = HermitianOperator::projector(&v);
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(HermitianOperator::from_json(&back).unwrap(), p);
    }

    #[test]
    fn real_coordinates_are_an_isometry() {
        let a = HermitianOperator::projector(&[Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.5)]);
        let b = HermitianOperator::projector(&[Complex64::new(0.2, 0.3), Complex64::new(1.0, 0.0)]);
        let dot: f64 = a.real_coordinates().iter().zip(b.real_coordinates()).map(|(x, y)| x * y).sum();
        assert!((dot - crate::spectral::hs_inner(&a, &b).unwrap()).abs() < 1e-14);
    }
}
