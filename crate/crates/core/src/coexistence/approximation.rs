//! How well can effects `T′f = Σ f_j F_j`, `f ∈ [0,1]^N`, of a POVM approach
//! the non-coexistent pair `P_φ`, `P_χ`?
//!
//! For each target the distance is measured in the weak neighborhood
//! defined by the probe states `W = (P_φ, P_ψ, P_χ)`:
//! `δ = min_f max_i |tr(W_i T′f) − tr(W_i P_target)|`,
//! solved exactly as a linear program. Since all `T′f` are pairwise
//! coexistent, `δ_φ` and `δ_χ` cannot both be below `1/64`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{check_orthonormal, Frame};
use crate::lp::LinearProgram;
use crate::operator::HermitianOperator;
use crate::spectral::hs_inner;

/// Radius of the neighborhoods.
pub const EPSILON: f64 = 1.0 / 64.0;
/// Slack allowed on the bound check.
pub const BOUND_SLACK: f64 = 1e-6;
/// Largest frame accepted by the dense LP.
pub const MAX_OUTCOMES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxFit {
    pub delta: f64,
    /// Optimal coefficients `f ∈ [0,1]^N`.
    pub coefficients: Vec<f64>,
    pub lp_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub delta_phi: f64,
    pub delta_chi: f64,
    pub lp_iterations: usize,
    /// `max(δ_φ, δ_χ) ≥ 1/64 − 1e-6`.
    pub bound_check: bool,
    pub epsilon: f64,
    pub fit_phi: MinimaxFit,
    pub fit_chi: MinimaxFit,
}

/// Probe states `(P_φ, P_ψ, P_χ)` with `χ = (φ + ψ)/√2`.
pub fn neighborhood_probes(phi: &[Complex64], psi: &[Complex64]) -> [HermitianOperator; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let chi: Vec<Complex64> = phi.iter().zip(psi).map(|(a, b)| (a + b) * s).collect();
    [HermitianOperator::projector(phi), HermitianOperator::projector(psi), HermitianOperator::projector(&chi)]
}

/// `min_{f∈[0,1]^N} max_i |tr(W_i Σ_j f_j F_j) − tr(W_i target)|` as the LP
/// `min t` s.t. `±(c_i·f − b_i) ≤ t`, `0 ≤ f ≤ 1`.
pub fn minimax_distance(
    elements: &[HermitianOperator],
    probes: &[HermitianOperator],
    target: &HermitianOperator,
) -> Result<MinimaxFit> {
    let n = elements.len();
    let mut objective = vec![0.0; n + 1];
    objective[n] = 1.0;
    let mut lp = LinearProgram::new(objective);
    for w in probes {
        let mut row: Vec<f64> = elements.iter().map(|f| hs_inner(w, f)).collect::<Result<_>>()?;
        let b = hs_inner(w, target)?;
        row.push(-1.0);
        lp.le(row.clone(), b);
        let negated: Vec<f64> = row[..n].iter().map(|c| -c).chain(std::iter::once(-1.0)).collect();
        lp.le(negated, -b);
    }
    for j in 0..n {
        lp.upper_bound(j, 1.0);
    }
    let sol = lp.solve()?;
    Ok(MinimaxFit { delta: sol.objective, coefficients: sol.x[..n].to_vec(), lp_iterations: sol.iterations })
}

/// Runs both minimax programs for a positive frame and the basis pair
/// `(φ, ψ)`.
pub fn theorem5_experiment(frame: &Frame, phi: &[Complex64], psi: &[Complex64]) -> Result<ApproximationReport> {
    if !frame.is_positive() {
        return Err(Error::FrameNotPositive);
    }
    if frame.len() > MAX_OUTCOMES {
        return Err(Error::InvalidParameter(format!("frame has {} outcomes, limit is {MAX_OUTCOMES}", frame.len())));
    }
    if phi.len() != frame.dim() {
        return Err(Error::DimensionMismatch(frame.dim(), phi.len()));
    }
    check_orthonormal(&[phi.to_vec(), psi.to_vec()])?;

    let probes = neighborhood_probes(phi, psi);
    let fit_phi = minimax_distance(frame.elements(), &probes, &probes[0])?;
    let fit_chi = minimax_distance(frame.elements(), &probes, &probes[2])?;
    let worst = fit_phi.delta.max(fit_chi.delta);
    Ok(ApproximationReport {
        delta_phi: fit_phi.delta,
        delta_chi: fit_chi.delta,
        lp_iterations: fit_phi.lp_iterations + fit_chi.lp_iterations,
        bound_check: worst >= EPSILON - BOUND_SLACK,
        epsilon: EPSILON,
        fit_phi,
        fit_chi,
    })
}
