//! Three half-projectors that are pairwise coexistent but not jointly
//! coexistent.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{coexist_feasibility, DykstraConfig};
use crate::error::{Error, Result};
use crate::frame::check_orthonormal;
use crate::operator::{Effect, HermitianOperator};
use crate::spectral::eig;

/// Largest squared overlap still treated as "not parallel".
const PARALLEL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleReport {
    /// Dykstra status per pair (1,2), (1,3), (2,3).
    pub pair_status: [String; 3],
    pub pair_iterations: [usize; 3],
    /// Number of pairs decided feasible.
    pub pairwise_coexistent: usize,
    pub joint_sum_max_eigenvalue: f64,
    /// `G_1 + G_2 + G_3 ≤ I` fails.
    pub joint_sum_exceeds_identity: bool,
    /// `|⟨ψ_i|ψ_j⟩|²` per pair.
    pub overlaps: [f64; 3],
    /// Every `A` with `0 ≤ A ≤ G_i` and `A ≤ G_j` (i ≠ j) is zero.
    pub common_lower_bounds_zero: bool,
}

/// The vectors `ψ_1 = φ_1`, `ψ_2 = (√3/2)φ_1 + ½φ_2`, `ψ_3 = ½φ_1 + (√3/2)φ_2`.
pub fn triple_vectors(phi1: &[Complex64], phi2: &[Complex64]) -> [Vec<Complex64>; 3] {
    let r = 3f64.sqrt() / 2.0;
    let mix = |a: f64, b: f64| -> Vec<Complex64> { phi1.iter().zip(phi2).map(|(x, y)| x * a + y * b).collect() };
    [phi1.to_vec(), mix(r, 0.5), mix(0.5, r)]
}

/// `G_i = ½|ψ_i⟩⟨ψ_i|`.
pub fn triple_effects(phi1: &[Complex64], phi2: &[Complex64]) -> [HermitianOperator; 3] {
    triple_vectors(phi1, phi2).map(|v| HermitianOperator::projector(&v).scale(0.5))
}

/// Builds the triple from two orthonormal vectors and checks its three
/// properties.
pub fn triple_witness(phi1: &[Complex64], phi2: &[Complex64], config: &DykstraConfig) -> Result<TripleReport> {
    check_orthonormal(&[phi1.to_vec(), phi2.to_vec()])?;
    witness_for_vectors(&triple_vectors(phi1, phi2), config)
}

/// Same checks for arbitrary unit vectors `ψ_1, ψ_2, ψ_3`.
pub fn witness_for_vectors(psi: &[Vec<Complex64>; 3], config: &DykstraConfig) -> Result<TripleReport> {
    let dim = psi[0].len();
    if dim < 2 {
        return Err(Error::InvalidParameter("triple needs dimension at least 2".into()));
    }
    let g: Vec<HermitianOperator> = psi.iter().map(|v| HermitianOperator::projector(v).scale(0.5)).collect();
    let effects: Vec<Effect> = g.iter().map(|op| Effect::new(op.clone(), 1e-12)).collect::<Result<_>>()?;

    const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
    let mut pair_status: [String; 3] = Default::default();
    let mut pair_iterations = [0; 3];
    let mut overlaps = [0.0; 3];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let outcome = coexist_feasibility(&effects[i], &effects[j], config)?;
        pair_status[k] = outcome.status.name().to_owned();
        pair_iterations[k] = outcome.iterations;
        let ip: Complex64 = psi[i].iter().zip(&psi[j]).map(|(a, b)| a.conj() * b).sum();
        let norms = norm_sqr(&psi[i]) * norm_sqr(&psi[j]);
        overlaps[k] = ip.norm_sqr() / norms;
    }
    let pairwise_coexistent = pair_status.iter().filter(|s| *s == "feasible").count();

    let joint = g[0].add(&g[1]).add(&g[2]);
    let joint_sum_max_eigenvalue = eig(&joint)?.max();

    // A ≤ ½P_ψ with A ≥ 0 confines A to multiples of P_ψ; t·P_ψi ≤ ½P_ψj then
    // forces t = 0 unless ψ_i and ψ_j are parallel.
    let mut rank_one = true;
    for op in &g {
        let s = eig(op)?;
        rank_one &= s.eigenvalues()[1..].iter().all(|l| l.abs() <= 1e-12);
    }
    let common_lower_bounds_zero = rank_one && overlaps.iter().all(|&o| o < 1.0 - PARALLEL_TOL);

    Ok(TripleReport {
        pair_status,
        pair_iterations,
        pairwise_coexistent,
        joint_sum_max_eigenvalue,
        joint_sum_exceeds_identity: joint_sum_max_eigenvalue > 1.0 + 1e-10,
        overlaps,
        common_lower_bounds_zero,
    })
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}
