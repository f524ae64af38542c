//! Coexistence certificates for convex combinations of pairwise coexistent
//! effects.

use serde::{Deserialize, Serialize};

use super::{CoexistenceCertificate, CERTIFICATE_TOL};
use crate::error::{Error, Result};
use crate::operator::HermitianOperator;

const WEIGHT_TOL: f64 = 1e-12;

/// One interval `(γ_{l−1}, γ_l]` of the merged breakpoint sequence and the
/// pair `(F_i, G_j)` it is assigned to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub delta: f64,
    pub f_index: usize,
    pub g_index: usize,
}

/// Merges the partial sums of `alpha` and `beta` into the ordered sequence
/// `0 = γ_0 ≤ γ_1 ≤ … ≤ γ_{m+n−1} = 1` and returns, for `l = 1..m+n−1`, the
/// length `δ_l = γ_l − γ_{l−1}` together with the indices `i`, `j` whose
/// intervals `I_i`, `J_j` contain `l`.
pub fn breakpoints(alpha: &[f64], beta: &[f64]) -> Result<Vec<Segment>> {
    check_weights("alpha", alpha)?;
    check_weights("beta", beta)?;
    let a_cum = partial_sums(alpha);
    let b_cum = partial_sums(beta);

    let mut gamma: Vec<f64> = Vec::with_capacity(alpha.len() + beta.len());
    gamma.push(0.0);
    gamma.extend_from_slice(&a_cum[..alpha.len() - 1]);
    gamma.push(1.0);
    gamma.extend_from_slice(&b_cum[..beta.len() - 1]);
    gamma.sort_by(f64::total_cmp);

    Ok(gamma
        .windows(2)
        .map(|w| Segment { delta: w[1] - w[0], f_index: interval_of(&a_cum, w[1]), g_index: interval_of(&b_cum, w[1]) })
        .collect())
}

/// Combines per-pair certificates into a certificate for
/// `(Σ α_i F_i, Σ β_j G_j)`:
/// `F′ = Σ δ_l A_{l1}`, `G′ = Σ δ_l A_{l2}`, `H = Σ δ_l A_{l0}`.
///
/// `pair_certs[i][j]` must certify `(F_i, G_j)`; it may be `None` only for
/// pairs that receive zero weight.
pub fn combine_coexistent(
    f_list: &[HermitianOperator],
    alpha: &[f64],
    g_list: &[HermitianOperator],
    beta: &[f64],
    pair_certs: &[Vec<Option<CoexistenceCertificate>>],
) -> Result<(CoexistenceCertificate, Vec<Segment>)> {
    if f_list.len() != alpha.len() {
        return Err(Error::LengthMismatch { expected: f_list.len(), actual: alpha.len() });
    }
    if g_list.len() != beta.len() {
        return Err(Error::LengthMismatch { expected: g_list.len(), actual: beta.len() });
    }
    let segments = breakpoints(alpha, beta)?;
    let dim = f_list[0].dim();

    let mut f_prime = HermitianOperator::zeros(dim);
    let mut g_prime = HermitianOperator::zeros(dim);
    let mut h = HermitianOperator::zeros(dim);
    for seg in &segments {
        if seg.delta == 0.0 {
            continue;
        }
        let (i, j) = (seg.f_index, seg.g_index);
        let cert = pair_certs
            .get(i)
            .and_then(|row| row.get(j))
            .and_then(Option::as_ref)
            .ok_or(Error::MissingCertificate(i, j))?;
        if cert.dim() != dim {
            return Err(Error::DimensionMismatch(dim, cert.dim()));
        }
        if cert.f().max_abs_diff(&f_list[i]) > CERTIFICATE_TOL || cert.g().max_abs_diff(&g_list[j]) > CERTIFICATE_TOL {
            return Err(Error::InvalidCertificate(format!("certificate ({i}, {j}) does not decompose (F_{i}, G_{j})")));
        }
        f_prime = f_prime.axpy(seg.delta, &cert.f_prime);
        g_prime = g_prime.axpy(seg.delta, &cert.g_prime);
        h = h.axpy(seg.delta, &cert.h);
    }
    Ok((CoexistenceCertificate { f_prime, g_prime, h }, segments))
}

fn check_weights(name: &str, w: &[f64]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::InvalidWeights(format!("{name} is empty")));
    }
    if let Some(bad) = w.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidWeights(format!("{name} has negative or non-finite entry {bad}")));
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::InvalidWeights(format!("{name} sums to {total}, not 1")));
    }
    Ok(())
}

fn partial_sums(w: &[f64]) -> Vec<f64> {
    w.iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Index `i` with `cum[i−1] < γ ≤ cum[i]`; rounding at the right end falls
/// into the last interval.
fn interval_of(cum: &[f64], gamma: f64) -> usize {
    cum.iter().position(|&c| gamma <= c).unwrap_or(cum.len() - 1)
}
