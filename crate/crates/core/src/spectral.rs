//! Cyclic complex Jacobi eigensolver and the spectral tests built on it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{HermitianOperator, Matrix};

/// Default cap on Jacobi sweeps.
pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Eigendecomposition `A = U diag(λ) U*` with eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
    sweeps: usize,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose k-th column is the eigenvector of `eigenvalues()[k]`.
    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// Applies `f` to the spectrum: `U diag(f(λ)) U*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        HermitianOperator::from_spectral(&values, &self.eigenvectors)
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        self.map(|l| l)
    }
}

/// Eigendecomposition with the default sweep cap.
pub fn eig(a: &HermitianOperator) -> Result<Spectrum> {
    eig_with_cap(a, DEFAULT_MAX_SWEEPS)
}

/// Cyclic Jacobi with a fixed row-by-row sweep order, so results are
/// deterministic for a given input.
pub fn eig_with_cap(a: &HermitianOperator, max_sweeps: usize) -> Result<Spectrum> {
    let n = a.dim();
    let mut m: Vec<Complex64> = a.as_matrix().as_slice().to_vec();
    let mut v = Matrix::identity(n);
    // Converged once the off-diagonal mass is at the rounding floor.
    let stop = 4.0 * n as f64 * f64::EPSILON * a.hs_norm();
    let mut sweeps = 0;

    loop {
        let off = off_diagonal_norm(&m, n);
        if off <= stop || off == 0.0 {
            break;
        }
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].re.total_cmp(&m[i * n + i].re).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&k| m[k * n + k].re).collect();
    let columns: Vec<Vec<Complex64>> = order.iter().map(|&k| v.column(k)).collect();
    Ok(Spectrum { eigenvalues, eigenvectors: Matrix::from_columns(&columns), sweeps })
}

fn off_diagonal_norm(m: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating entry (p, q): `A ← J* A J`, `V ← V J`
/// with `J = diag(1, e^{-iφ}) · R(θ)` on the (p, q) plane.
fn rotate(m: &mut [Complex64], v: &mut Matrix, n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let phase = apq / abs;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for i in 0..n {
        let aip = m[i * n + p];
        let aiq = m[i * n + q];
        m[i * n + p] = aip * jpp + aiq * jqp;
        m[i * n + q] = aip * jpq + aiq * jqq;
    }
    for j in 0..n {
        let apj = m[p * n + j];
        let aqj = m[q * n + j];
        m[p * n + j] = jpp.conj() * apj + jqp.conj() * aqj;
        m[q * n + j] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    m[p * n + q] = Complex64::new(0.0, 0.0);
    m[q * n + p] = Complex64::new(0.0, 0.0);
    m[p * n + p].im = 0.0;
    m[q * n + q].im = 0.0;

    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * jpp + viq * jqp);
        v.set(i, q, vip * jpq + viq * jqq);
    }
}

/// Hilbert–Schmidt inner product `tr(AB)`.
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    // tr(AB) = Σ_ij A_ij B_ji = Σ_ij A_ij conj(B_ij) for Hermitian B.
    let s: f64 =
        a.as_matrix().as_slice().iter().zip(b.as_matrix().as_slice()).map(|(x, y)| x.re * y.re + x.im * y.im).sum();
    Ok(s)
}

pub fn min_eigenvalue(a: &HermitianOperator) -> Result<f64> {
    Ok(eig(a)?.min())
}

pub fn max_eigenvalue(a: &HermitianOperator) -> Result<f64> {
    Ok(eig(a)?.max())
}

/// `A ≥ 0` up to `tol`: the smallest eigenvalue is at least `-tol`.
pub fn is_psd(a: &HermitianOperator, tol: f64) -> bool {
    match eig(a) {
        Ok(s) => s.min() >= -tol,
        Err(_) => false,
    }
}

/// `-tol·I ≤ A ≤ (1+tol)·I`.
pub fn in_effect_interval(a: &HermitianOperator, tol: f64) -> bool {
    match eig(a) {
        Ok(s) => s.min() >= -tol && s.max() <= 1.0 + tol,
        Err(_) => false,
    }
}

/// Tolerance scaled by the operator's size, `tol · max(1, ‖A‖_HS)`.
pub fn scaled_tol(tol: f64, a: &HermitianOperator) -> f64 {
    tol * a.hs_norm().max(1.0)
}

/// Positive part `A₊` (negative eigenvalues set to zero).
pub fn positive_part(a: &HermitianOperator) -> Result<HermitianOperator> {
    Ok(eig(a)?.map(|l| l.max(0.0)))
}

/// Spectrum clipped into `[lo, hi]`.
pub fn clamp_spectrum(a: &HermitianOperator, lo: f64, hi: f64) -> Result<HermitianOperator> {
    Ok(eig(a)?.map(|l| l.clamp(lo, hi)))
}

/// `A^{-1/2}` for a positive definite operator.
pub fn inverse_sqrt(a: &HermitianOperator) -> Result<HermitianOperator> {
    let spec = eig(a)?;
    if spec.min() <= 0.0 {
        return Err(Error::NotPositive { index: 0, min_eigenvalue: spec.min() });
    }
    Ok(spec.map(|l| 1.0 / l.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::basis_vector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let s = eig(&HermitianOperator::identity(2)).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0]);
        assert_eq!(s.sweeps(), 0);
    }

    #[test]
    fn mixture_of_two_pure_states_matches_closed_form() {
        let psi1 = basis_vector(2, 0);
        let psi2 = vec![c(3f64.sqrt() / 2.0, 0.0), c(0.5, 0.0)];
        let a = HermitianOperator::projector(&psi1).add(&HermitianOperator::projector(&psi2)).scale(0.5);
        let s = eig(&a).unwrap();
        let r = 3f64.sqrt() / 4.0;
        assert!((s.eigenvalues()[0] - (0.5 + r)).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - (0.5 - r)).abs() < 1e-14);
    }

    #[test]
    fn complex_off_diagonal_is_diagonalized() {
        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        let a = HermitianOperator::from_parts(&[vec![1.0, 0.0], vec![0.0, 1.0]], &[vec![0.0, 1.0], vec![-1.0, 0.0]])
            .unwrap();
        let s = eig(&a).unwrap();
        assert!((s.max() - 2.0).abs() < 1e-14 && s.min().abs() < 1e-14);
        assert!(s.reconstruct().max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn sweep_cap_is_reported() {
        let a = HermitianOperator::from_real_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, -1.0, 0.5], vec![3.0, 0.5, 4.0]])
            .unwrap();
        assert!(matches!(eig_with_cap(&a, 0), Err(Error::NoConvergence { sweeps: 0, .. })));
        assert!(eig_with_cap(&a, DEFAULT_MAX_SWEEPS).is_ok());
    }

    #[test]
    fn hs_inner_examples() {
        let i2 = HermitianOperator::identity(2);
        assert_eq!(hs_inner(&i2, &i2).unwrap(), 2.0);
        let phi = basis_vector(2, 0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let chi = vec![c(s, 0.0), c(s, 0.0)];
        let v = hs_inner(&HermitianOperator::projector(&phi), &HermitianOperator::projector(&chi)).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        assert!(matches!(hs_inner(&i2, &HermitianOperator::identity(3)), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn interval_tests() {
        assert!(is_psd(&HermitianOperator::zeros(3), 0.0));
        assert!(in_effect_interval(&HermitianOperator::scaled_identity(2, 0.5), 1e-10));
        assert!(!in_effect_interval(&HermitianOperator::scaled_identity(2, 2.0), 1e-10));
        let g1 = HermitianOperator::projector(&basis_vector(2, 0)).scale(0.5);
        assert!(in_effect_interval(&g1, 1e-10));
    }

    #[test]
    fn inverse_sqrt_of_diagonal() {
        let a = HermitianOperator::diagonal(&[4.0, 0.25]);
        let r = inverse_sqrt(&a).unwrap();
        assert!(r.max_abs_diff(&HermitianOperator::diagonal(&[0.5, 2.0])) < 1e-15);
        assert!(inverse_sqrt(&HermitianOperator::diagonal(&[1.0, 0.0])).is_err());
    }
}
