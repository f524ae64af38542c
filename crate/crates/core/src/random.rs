//! Seeded generators for test corpora: states, effects, vectors, unitaries.
//!
//! Every generator is a pure function of its seed; the stream is ChaCha8.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::operator::{Effect, HermitianOperator, Matrix, State};
use crate::spectral::eig;

/// Seeded RNG used throughout the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Gaussian with independent standard normal real and imaginary parts.
pub fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Haar-random unit vector in C^dim.
pub fn unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Hermitian matrix from the Gaussian unitary ensemble, `(G + G*)/2`.
pub fn gue(dim: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
    let data = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    HermitianOperator::symmetrized(Matrix::from_vec(dim, data))
}

/// Haar-random unitary via Gram–Schmidt on a complex Gaussian matrix.
pub fn unitary(dim: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        for u in &columns {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    Matrix::from_columns(&columns)
}

/// Random density operator `G G* / tr(G G*)` with `G` a `dim × rank` Gaussian
/// matrix. Full-rank requests are resampled until the smallest eigenvalue
/// exceeds 1e-12.
pub fn random_state(dim: usize, rank: usize, seed: u64) -> Result<State> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    if rank == 0 || rank > dim {
        return Err(Error::InvalidRank { dim, rank });
    }
    let mut rng = rng(seed);
    loop {
        let cols: Vec<Vec<Complex64>> =
            (0..rank).map(|_| (0..dim).map(|_| complex_gaussian(&mut rng)).collect()).collect();
        let mut acc = HermitianOperator::zeros(dim);
        for c in &cols {
            let w: f64 = c.iter().map(|z| z.norm_sqr()).sum();
            acc = acc.axpy(w, &HermitianOperator::projector(c));
        }
        let rho = acc.scale(1.0 / acc.trace());
        if rank == dim && eig(&rho)?.min() < 1e-12 {
            continue;
        }
        return State::new(rho, 1e-10);
    }
}

/// Random effect: a GUE sample shifted around ½I, spectrum clamped into [0, 1].
pub fn random_effect(dim: usize, seed: u64) -> Result<Effect> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    let mut rng = rng(seed);
    let x = gue(dim, &mut rng).scale(0.5 / (dim as f64).sqrt()).add(&HermitianOperator::scaled_identity(dim, 0.5));
    let clamped = eig(&x)?.map(|l| l.clamp(0.0, 1.0));
    Effect::new(clamped, 1e-10)
}
